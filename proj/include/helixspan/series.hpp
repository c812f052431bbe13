#pragma once

#include <vector>

#include "helixspan/numeric.hpp"

namespace helixspan {

// Truncated power series with exact rational coefficients c_0..c_N.
// Coefficients of index > N are undefined (exact arithmetic needs no guard
// terms); all operations truncate at the smaller operand order.
class RationalSeries {
 public:
  RationalSeries(int order, std::vector<Rat> coeffs);
  static RationalSeries zero(int order);
  static RationalSeries constant(int order, const Rat& c);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rat& operator[](int i) const { return coeffs_[i]; }
  Rat& at(int i) { return coeffs_[i]; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  RationalSeries truncated(int order) const;

  friend RationalSeries operator+(const RationalSeries& a, const RationalSeries& b);
  friend RationalSeries operator-(const RationalSeries& a, const RationalSeries& b);
  friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);

  // Requires the divisor's constant term to be nonzero.
  RationalSeries divided_by(const RationalSeries& divisor) const;

  // Newton iteration doubling the resolved order each step; requires the
  // constant term to be the square of a rational.
  RationalSeries sqrt() const;

  bool operator==(const RationalSeries& other) const = default;

 private:
  std::vector<Rat> coeffs_;
};

// S(z): counting series of secondary structures, s_0 = s_1 = 1, via the
// recurrence from z^2 S^2 - (1 - z + z^2) S + 1 = 0.
RationalSeries secondary_series(int N);

// Irr(z) = z^2 (S(z) - 1): counting series of irreducible structures.
RationalSeries irr_series(int N);

// S_r(z) = (A_r - sqrt(p_r)) / (2 z^{2r}) with
// A_r = z^{2r} - (z - 1)(z^{2r} - z^2 + 1) and
// p_r = A_r^2 - 4 z^{2r} (z^{2r} - z^2 + 1), via the series square root.
RationalSeries canonical_series(int r, int N);

// Same coefficients through the quadratic recurrence
// z^{2r} S_r^2 - A_r S_r + (z^{2r} - z^2 + 1) = 0; must agree with
// canonical_series coefficientwise.
RationalSeries canonical_series_via_recurrence(int r, int N);

// Asserts every coefficient is an integer and returns them.
std::vector<Int> integer_coeffs(const RationalSeries& series);

// Exact table of w_r(n, d): structures of length n at distance d, for
// 0 <= d < n <= N. When d_max >= 0 only columns d <= d_max are stored;
// probabilities stay correct because row totals come from S_r directly.
class DistanceTable {
 public:
  DistanceTable(int r, int N, int d_max, std::vector<std::vector<Int>> rows,
                std::vector<Int> row_totals);

  int r() const { return r_; }
  int N() const { return N_; }
  // Largest stored distance column (N - 1 when the table is full).
  int d_max() const { return d_max_; }

  const Int& w(int n, int d) const;
  // [z^n] S_r(z) — the full row sum, independent of d truncation.
  const Int& row_total(int n) const;

  bool operator==(const DistanceTable& other) const = default;

 private:
  int r_;
  int N_;
  int d_max_;
  std::vector<std::vector<Int>> rows_;      // rows_[n][d]
  std::vector<Int> row_totals_;             // row_totals_[n]
};

// Coefficient extraction from W_r(z,u) =
//   u z^{2r} (S_r - 1) / [(1-zu)^2 (1 - z^2 + z^{2r}) - (1-zu) u^2 z^{2r} (S_r - 1)]
//   + z / (1-zu),
// with exact integer polynomials in u truncated above degree d_max.
DistanceTable distance_table(int r, int N, int d_max = -1);

// Independent evaluation of the r = 1 generating function
//   W(z,u) = u z^2 (S - 1) / [(1-zu)^2 - (1-zu)(zu)^2 (S - 1)] + z/(1-zu);
// a separate code path kept for cross-validation, bit-identical to
// distance_table(1, N, d_max).
DistanceTable theorem1_table(int N, int d_max = -1);

// Third path (r = 1): arrangement counting. For d < n - 1,
//   w(n, d) = sum_i C(d - i, i + 1) * [z^{n-d+2i+1}] Irr(z)^{i+1},
// plus the single arcless structure at d = n - 1. Cheap when d is truncated;
// used for large-n tables.
DistanceTable claim2_table(int N, int d_max = -1);

// p(n, d) = w(n, d) / s_n for the stored columns; sums to exactly 1 on full
// tables. Throws LengthOutOfRange unless 1 <= n <= N.
std::vector<Rat> probability_row(const DistanceTable& t, int n);

}  // namespace helixspan
