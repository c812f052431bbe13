#include "helixspan/numeric.hpp"

#include <cmath>

namespace helixspan {

namespace {

// Requested precision in bits; Real's backend is configured in decimal
// digits, so over-provision slightly and remember what was asked for.
thread_local unsigned g_precision_bits = kDefaultPrecisionBits;

unsigned digits10_for_bits(unsigned bits) {
  // ceil(bits * log10(2)) plus slack; the backend's own digits10 -> bits
  // conversion rounds up again, so the mantissa never ends up short.
  return static_cast<unsigned>((static_cast<unsigned long long>(bits) * 301 + 999) / 1000) + 2;
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnbalancedBrackets: return "UnbalancedBrackets";
    case ErrorCode::OneArc: return "OneArc";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidCharacter: return "InvalidCharacter";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::LengthOutOfRange: return "LengthOutOfRange";
    case ErrorCode::ProbeOutOfRange: return "ProbeOutOfRange";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
  }
  return "UnknownError";
}

unsigned real_precision_bits() { return g_precision_bits; }

void set_real_precision_bits(unsigned bits) {
  if (bits < 53) bits = 53;
  g_precision_bits = bits;
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_bits_(g_precision_bits) {
  set_real_precision_bits(bits);
}

PrecisionGuard::~PrecisionGuard() { set_real_precision_bits(saved_bits_); }

Real to_real(const Rat& x) {
  return Real(numerator(x)) / Real(denominator(x));
}

Real to_real(const Int& x) { return Real(x); }

namespace {
// Apply the default precision once at startup so Real values constructed
// before any explicit set_real_precision_bits call carry >= 100 bits.
struct PrecisionInit {
  PrecisionInit() { set_real_precision_bits(kDefaultPrecisionBits); }
} g_precision_init;
}  // namespace

}  // namespace helixspan
