#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace helixspan {

// Exact integers and rationals (GMP-backed), high-precision reals
// (MPFR-backed, runtime-configurable mantissa width).
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

enum class ErrorCode {
  UnbalancedBrackets,
  OneArc,
  EmptyInput,
  InvalidCharacter,
  NotIrreducible,
  LengthOutOfRange,
  ProbeOutOfRange,
  SizeLimitExceeded,
  SchemaMismatch,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Default mantissa width for Real, in bits. All asserted tolerances assume
// at least 100 bits. Setting affects newly constructed Real values in the
// current thread.
inline constexpr unsigned kDefaultPrecisionBits = 100;

unsigned real_precision_bits();
void set_real_precision_bits(unsigned bits);

// Temporarily switch the working precision (RAII).
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_bits_;
};

Real to_real(const Rat& x);
Real to_real(const Int& x);

}  // namespace helixspan
