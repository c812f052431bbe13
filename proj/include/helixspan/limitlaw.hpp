#pragma once

#include <string>
#include <vector>

#include "helixspan/numeric.hpp"

namespace helixspan {

// Exact element a + b*sqrt(5) of the real quadratic field Q(sqrt 5).
struct QSqrt5 {
  Rat a;
  Rat b;

  QSqrt5() = default;
  QSqrt5(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}

  bool is_zero() const { return a == 0 && b == 0; }
  // Exact sign (-1, 0, +1) without floating point: compare a^2 with 5 b^2.
  int sign() const;

  QSqrt5 operator-() const { return {-a, -b}; }
  friend QSqrt5 operator+(const QSqrt5& x, const QSqrt5& y);
  friend QSqrt5 operator-(const QSqrt5& x, const QSqrt5& y);
  friend QSqrt5 operator*(const QSqrt5& x, const QSqrt5& y);
  friend QSqrt5 operator*(const Rat& c, const QSqrt5& x);
  QSqrt5 inverse() const;  // requires a^2 != 5 b^2 (i.e. nonzero)
  friend QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y);

  bool operator==(const QSqrt5& other) const = default;

  // Decimal value to ~bits relative precision. The naive evaluation can
  // cancel catastrophically (|a| and |b*sqrt5| huge, sum tiny), so the
  // working precision is doubled until the result clears the rounding-error
  // bound; exact zero is decided algebraically first.
  Real value(unsigned bits = kDefaultPrecisionBits) const;

  // "a+b*sqrt5" with rationals in lowest terms, e.g. "7/2-3/2*sqrt5".
  std::string to_string() const;
};

// rho = (3 - sqrt5)/2, the dominant singularity of S(z).
QSqrt5 rho();

// delta = (-1 - sqrt5 + sqrt(38 + 18 sqrt5))/4, the decay base of the limit
// law. The nested radical leaves Q(sqrt5), so this is numeric by necessity.
Real delta(unsigned bits = kDefaultPrecisionBits);

// Coefficients q(0..D) of Q(u) = m1(u)/m2(u), the limiting distance law:
// m1(u) = (-7 + 3 sqrt5) u,
// m2(u) = -2 - 2(-3 + sqrt5) u + (-15 + 7 sqrt5) u^2 + (22 - 10 sqrt5) u^3
//         + 2(-9 + 4 sqrt5) u^4.
struct LimitLaw {
  int D = 0;
  std::vector<QSqrt5> q;  // q[d] for 0 <= d <= D; q[0] = 0
};

LimitLaw q_series(int D);

// Constants of the square-root singular expansion of W(z,u) at z = rho:
// W(z,u) = C0 + V(rho,u) + r_rho * sqrt(rho - z) + O(rho - z), where
//   t_rho = (7 - 3 sqrt5) u / (2 - (3 - sqrt5) u),
//   alpha = 2(-2 + sqrt5) u / (2 + (-3 + sqrt5) u)   (subcritical: < 1),
//   C0    = alpha / ((1 - rho u)(1 - u alpha)),
//   r_rho = -t_rho * sqrt(8 (3 sqrt5 - 5)) /
//           ((1 - rho u)(1 - u alpha)^2 (-3 + sqrt5)^2).
struct SingularConstants {
  Rat u;
  Real alpha;
  Real t_rho;
  Real C0;
  Real r_rho;
};

// Throws ProbeOutOfRange unless 0 < u < 1.
SingularConstants singular_constants(const Rat& u,
                                     unsigned bits = kDefaultPrecisionBits);

// Standard Gamma(lambda, r) density: lambda^r x^{r-1} e^{-lambda x} / Gamma(r)
// for x > 0, else 0.
Real gamma_density(const Real& lambda, const Real& r, const Real& x);

// One line of a numeric check report.
struct CheckRow {
  long long n_or_d = 0;
  double observed = 0.0;
  double predicted = 0.0;
  double deviation = 0.0;
};

struct CheckReport {
  std::string check;
  bool passed = false;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  std::vector<CheckRow> rows;
  std::string note;
};

// q(d+1)/q(d) against the Gamma-tail prediction ((d+2)/(d+1)) / delta;
// max deviation taken over d in [D/2, D].
CheckReport tail_ratio_check(int D, unsigned bits = kDefaultPrecisionBits);

// s_{N+1}/s_N against the growth constant (r = 1: exactly (3 + sqrt5)/2;
// r = 3: reciprocal of the dominant root of p_3, located by exact-rational
// bisection), as a relative deviation; also reports the stabilization of the
// subexponential constant s_n rho^n n^{3/2} between n = N/2 and n = N.
CheckReport growth_rate_check(int N, int r = 1,
                              unsigned bits = kDefaultPrecisionBits,
                              double rel_tol = 1e-3);

// Residual W(z,u) - C0 - V(rho,u) - r_rho sqrt(rho - z) at
// z = rho (1 - 2^-k), k = 4..12, for u in {1/4, 1/2, 3/4}: fits the log-log
// slope, which must be ~1 if the expansion holds to order (rho - z).
CheckReport residual_slope_check(unsigned bits = kDefaultPrecisionBits);

}  // namespace helixspan
