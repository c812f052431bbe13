#include "helixspan/limitlaw.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "helixspan/series.hpp"

namespace helixspan {

int QSqrt5::sign() const {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: |a| vs |b|sqrt5 decides, i.e. a^2 vs 5 b^2.
  const Rat a2 = a * a;
  const Rat b2 = 5 * b * b;
  if (a2 == b2) return 0;  // unreachable for rational a, b not both zero
  return (a2 > b2) ? sa : sb;
}

QSqrt5 operator+(const QSqrt5& x, const QSqrt5& y) { return {x.a + y.a, x.b + y.b}; }
QSqrt5 operator-(const QSqrt5& x, const QSqrt5& y) { return {x.a - y.a, x.b - y.b}; }

QSqrt5 operator*(const QSqrt5& x, const QSqrt5& y) {
  return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a};
}

QSqrt5 operator*(const Rat& c, const QSqrt5& x) { return {c * x.a, c * x.b}; }

QSqrt5 QSqrt5::inverse() const {
  // 1/(a + b sqrt5) = (a - b sqrt5)/(a^2 - 5 b^2); the norm vanishes only
  // for a = b = 0 since sqrt5 is irrational.
  const Rat norm = a * a - 5 * b * b;
  if (norm == 0) throw std::domain_error("inverse of zero in Q(sqrt5)");
  return {a / norm, -b / norm};
}

QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y) { return x * y.inverse(); }

Real QSqrt5::value(unsigned bits) const {
  if (is_zero()) return Real(0);
  // a and b*sqrt5 may cancel almost completely (their sizes say nothing
  // about the result's), so evaluate at growing working precision until the
  // rounding-error bound 2^-P * (|a| + |b|sqrt5) is small relative to the
  // result.
  for (unsigned P = std::max(bits + 32, 64u); P <= (1u << 22); P *= 2) {
    PrecisionGuard guard(P);
    const Real av = to_real(a);
    const Real bv = to_real(b);
    const Real s5 = sqrt(Real(5));
    const Real result = av + bv * s5;
    if (result == 0) continue;
    const Real magnitude = abs(av) + abs(bv) * s5;
    if (magnitude / abs(result) < ldexp(Real(1), static_cast<int>(P - bits) - 8))
      return result;
  }
  throw std::logic_error("Q(sqrt5) evaluation failed to converge");
}

namespace {

std::string rat_string(const Rat& x) {
  std::string out = numerator(x).str();
  if (denominator(x) != 1) out += "/" + denominator(x).str();
  return out;
}

}  // namespace

std::string QSqrt5::to_string() const {
  if (b == 0) return rat_string(a);
  const Rat babs = (b < 0) ? Rat(-b) : b;
  if (a == 0) return ((b < 0) ? "-" : "") + rat_string(babs) + "*sqrt5";
  return rat_string(a) + ((b < 0) ? "-" : "+") + rat_string(babs) + "*sqrt5";
}

QSqrt5 rho() { return {Rat(3, 2), Rat(-1, 2)}; }

Real delta(unsigned bits) {
  PrecisionGuard guard(bits + 16);
  const Real s5 = sqrt(Real(5));
  return (-1 - s5 + sqrt(38 + 18 * s5)) / 4;
}

LimitLaw q_series(int D) {
  if (D < 1) throw std::invalid_argument("need D >= 1");
  // Q(u) = m1/m2 with m1 = (-7 + 3 sqrt5) u and the quartic m2 below;
  // long division in Q(sqrt5)[[u]].
  const QSqrt5 m1_1{-7, 3};
  const QSqrt5 m2[5] = {
      {-2, 0},          // -2
      {6, -2},          // -2(-3 + sqrt5) u
      {-15, 7},         // (-15 + 7 sqrt5) u^2
      {22, -10},        // (22 - 10 sqrt5) u^3
      {-18, 8},         // 2(-9 + 4 sqrt5) u^4
  };
  const QSqrt5 inv_m2_0 = m2[0].inverse();

  LimitLaw law;
  law.D = D;
  law.q.resize(static_cast<size_t>(D) + 1);
  for (int n = 1; n <= D; ++n) {
    QSqrt5 acc = (n == 1) ? m1_1 : QSqrt5{};
    for (int k = 1; k <= 4 && k <= n; ++k) acc = acc - m2[k] * law.q[n - k];
    law.q[n] = acc * inv_m2_0;
  }
  return law;
}

SingularConstants singular_constants(const Rat& u, unsigned bits) {
  if (u <= 0 || u >= 1)
    throw Error(ErrorCode::ProbeOutOfRange, "probe u must lie in (0, 1)");
  const QSqrt5 uq{u, 0};
  const QSqrt5 one{1, 0};
  // Shared denominator 2 - (3 - sqrt5) u of t(rho,u) and alpha.
  const QSqrt5 den{2 - 3 * u, u};
  const QSqrt5 t = QSqrt5{7 * u, -3 * u} / den;
  const QSqrt5 alpha = QSqrt5{-4 * u, 2 * u} / den;
  if (alpha.sign() <= 0 || (one - alpha).sign() <= 0)
    throw std::logic_error("subcriticality violated: alpha outside (0, 1)");

  const QSqrt5 h_inv = one - rho() * uq;            // 1 - rho u
  const QSqrt5 f_den = one - uq * alpha;            // 1 - u alpha
  const QSqrt5 c0 = alpha / (h_inv * f_den);
  // r(rho,u) = -t sqrt(8(3 sqrt5 - 5)) / ((1-rho u)(1-u alpha)^2 (-3+sqrt5)^2);
  // the last factor is exact: (-3 + sqrt5)^2 = 14 - 6 sqrt5.
  const QSqrt5 r_exact = t / (h_inv * f_den * f_den * QSqrt5{14, -6});

  SingularConstants out;
  out.u = u;
  {
    PrecisionGuard guard(bits + 16);
    const Real s5 = sqrt(Real(5));
    out.alpha = alpha.value(bits);
    out.t_rho = t.value(bits);
    out.C0 = c0.value(bits);
    out.r_rho = -r_exact.value(bits) * sqrt(8 * (3 * s5 - 5));
  }
  return out;
}

Real gamma_density(const Real& lambda, const Real& r, const Real& x) {
  if (lambda <= 0 || r <= 0)
    throw std::invalid_argument("gamma density needs lambda > 0 and r > 0");
  if (x <= 0) return Real(0);
  return pow(lambda, r) * pow(x, r - 1) * exp(-lambda * x) / tgamma(r);
}

CheckReport tail_ratio_check(int D, unsigned bits) {
  if (D < 10) throw std::invalid_argument("need D >= 10");
  PrecisionGuard guard(bits);
  const LimitLaw law = q_series(D + 1);
  const Real inv_delta = 1 / delta(bits);

  CheckReport report;
  report.check = "tail_ratio";
  report.tolerance = 1e-2;
  report.note = "q(d+1)/q(d) vs ((d+2)/(d+1))/delta, window d in [D/2, D]";
  for (int d = D / 2; d <= D; ++d) {
    const Real observed = (law.q[d + 1] / law.q[d]).value(bits);
    const Real predicted = Real(d + 2) / Real(d + 1) * inv_delta;
    const double deviation = std::abs(static_cast<double>(observed - predicted));
    report.rows.push_back({d, static_cast<double>(observed),
                           static_cast<double>(predicted), deviation});
    report.max_deviation = std::max(report.max_deviation, deviation);
  }
  report.passed = report.max_deviation < report.tolerance;
  return report;
}

namespace {

// Evaluate p_r(x) = A_r(x)^2 - 4 x^{2r} B_r(x) exactly at rational x.
Rat p_r_at(int r, const Rat& x) {
  Rat x2r = 1;
  for (int i = 0; i < 2 * r; ++i) x2r *= x;
  const Rat B = x2r - x * x + 1;
  const Rat A = x2r + (1 - x) * B;
  return A * A - 4 * x2r * B;
}

// Smallest root of p_r in (0, 1) by bisection on exact signs; p_r(0) = 1 > 0
// and p_r(1) = -3 < 0 for every r.
Rat dominant_root(int r, unsigned bits) {
  Rat lo = 0, hi = 1;
  const int steps = static_cast<int>(bits) + 8;
  for (int i = 0; i < steps; ++i) {
    const Rat mid = (lo + hi) / 2;
    if (p_r_at(r, mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

CheckReport growth_rate_check(int N, int r, unsigned bits, double rel_tol) {
  if (N < 100) throw std::invalid_argument("need N >= 100");
  PrecisionGuard guard(bits);

  std::vector<Int> s;
  Real growth;     // predicted limit of s_{n+1}/s_n
  Real sing;       // the singularity itself (1/growth)
  if (r == 1) {
    s = integer_coeffs(secondary_series(N + 1));
    growth = rho().inverse().value(bits);  // (3 + sqrt5)/2
    sing = rho().value(bits);
  } else {
    s = integer_coeffs(canonical_series_via_recurrence(r, N + 1));
    const Rat root = dominant_root(r, bits);
    sing = to_real(root);
    growth = 1 / sing;
  }

  const Real observed = to_real(Rat(s[N + 1]) / Rat(s[N]));
  const double abs_dev = static_cast<double>(abs(observed - growth));
  const double rel_dev = static_cast<double>(abs(observed - growth) / growth);

  // Subexponential part: K_n = s_n rho^n n^{3/2} must stabilize.
  const auto K_at = [&](int n) {
    return to_real(Rat(s[n])) * pow(sing, n) * pow(Real(n), Real(3) / 2);
  };
  const Real K_half = K_at(N / 2);
  const Real K_full = K_at(N);
  const double k_change = static_cast<double>(abs(K_full - K_half) / K_full);

  CheckReport report;
  report.check = r == 1 ? "growth_rate" : "growth_rate_r" + std::to_string(r);
  report.tolerance = rel_tol;
  report.note =
      "rows: [N] relative deviation of s_{N+1}/s_N from the exact growth "
      "constant (asserted); [-N] the same ratio with its absolute deviation, "
      "which carries an unavoidable ~(3/2N)/rho term (informational); [N/2] "
      "s_n rho^n n^{3/2} stabilization between N/2 and N, tolerance 1%";
  report.rows.push_back({N, static_cast<double>(observed),
                         static_cast<double>(growth), rel_dev});
  report.rows.push_back({-N, static_cast<double>(observed),
                         static_cast<double>(growth), abs_dev});
  report.rows.push_back({N / 2, static_cast<double>(K_full),
                         static_cast<double>(K_half), k_change});
  report.max_deviation = rel_dev;
  report.passed = rel_dev < report.tolerance && k_change < 1e-2 && K_full > 0;
  return report;
}

CheckReport residual_slope_check(unsigned bits) {
  const unsigned work = std::max(bits, 128u);
  PrecisionGuard guard(work);

  CheckReport report;
  report.check = "residual_slope";
  report.tolerance = 0.9;  // minimum acceptable log-log slope
  report.note =
      "slope of log|W(z,u) - C0 - V(rho,u) - r_rho sqrt(rho-z)| vs "
      "log(rho-z) at z = rho(1 - 2^-k), k = 4..12; rows keyed by 4u";
  report.max_deviation = 0;

  const Real rho_real = rho().value(work);
  bool all_ok = true;
  for (int quarter : {1, 2, 3}) {
    const Rat u(quarter, 4);
    const SingularConstants sc = singular_constants(u, work);
    const Real u_real = to_real(u);
    const Real v_rho = (rho() / (QSqrt5{1, 0} - rho() * QSqrt5{u, 0})).value(work);

    double sum_x = 0, sum_y = 0, sum_xx = 0, sum_xy = 0;
    int count = 0;
    for (int k = 4; k <= 12; ++k) {
      const Real z = rho_real * (1 - ldexp(Real(1), -k));
      const Real S =
          (1 - z + z * z - sqrt((z * z + z + 1) * (z * z - 3 * z + 1))) /
          (2 * z * z);
      const Real Sm1 = S - 1;
      const Real zu = z * u_real;
      const Real W = u_real * z * z * Sm1 /
                         ((1 - zu) * (1 - zu) - (1 - zu) * zu * zu * Sm1) +
                     z / (1 - zu);
      const Real residual = W - sc.C0 - v_rho - sc.r_rho * sqrt(rho_real - z);
      const double x = static_cast<double>(log(rho_real - z));
      const double y = static_cast<double>(log(abs(residual)));
      sum_x += x;
      sum_y += y;
      sum_xx += x * x;
      sum_xy += x * y;
      ++count;
    }
    const double slope =
        (count * sum_xy - sum_x * sum_y) / (count * sum_xx - sum_x * sum_x);
    report.rows.push_back({quarter, slope, 1.0, std::abs(1.0 - slope)});
    report.max_deviation = std::max(report.max_deviation, std::abs(1.0 - slope));
    if (slope < report.tolerance) all_ok = false;
  }
  report.passed = all_ok;
  return report;
}

}  // namespace helixspan
