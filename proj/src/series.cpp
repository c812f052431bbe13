#include "helixspan/series.hpp"

#include <gmp.h>

#include <stdexcept>
#include <string>
#include <utility>

namespace helixspan {

RationalSeries::RationalSeries(int order, std::vector<Rat> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (order < 0) throw std::invalid_argument("series order must be >= 0");
  if (coeffs_.size() != static_cast<size_t>(order) + 1)
    throw std::invalid_argument("series needs exactly order + 1 coefficients");
}

RationalSeries RationalSeries::zero(int order) {
  return RationalSeries(order, std::vector<Rat>(static_cast<size_t>(order) + 1));
}

RationalSeries RationalSeries::constant(int order, const Rat& c) {
  RationalSeries s = zero(order);
  s.coeffs_[0] = c;
  return s;
}

RationalSeries RationalSeries::truncated(int order) const {
  std::vector<Rat> c(static_cast<size_t>(order) + 1);
  for (int i = 0; i <= order && i <= this->order(); ++i) c[i] = coeffs_[i];
  return RationalSeries(order, std::move(c));
}

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
  const int order = std::min(a.order(), b.order());
  RationalSeries out = RationalSeries::zero(order);
  for (int i = 0; i <= order; ++i) out.coeffs_[i] = a[i] + b[i];
  return out;
}

RationalSeries operator-(const RationalSeries& a, const RationalSeries& b) {
  const int order = std::min(a.order(), b.order());
  RationalSeries out = RationalSeries::zero(order);
  for (int i = 0; i <= order; ++i) out.coeffs_[i] = a[i] - b[i];
  return out;
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
  const int order = std::min(a.order(), b.order());
  RationalSeries out = RationalSeries::zero(order);
  for (int i = 0; i <= order; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= order; ++j) {
      if (b[j] == 0) continue;
      out.coeffs_[i + j] += a[i] * b[j];
    }
  }
  return out;
}

RationalSeries RationalSeries::divided_by(const RationalSeries& divisor) const {
  if (divisor[0] == 0)
    throw std::invalid_argument("series division needs a unit constant term");
  const int order = std::min(this->order(), divisor.order());
  RationalSeries out = zero(order);
  for (int n = 0; n <= order; ++n) {
    Rat acc = coeffs_[n];
    for (int k = 1; k <= n; ++k) {
      if (divisor[k] == 0) continue;
      acc -= divisor[k] * out.coeffs_[n - k];
    }
    out.coeffs_[n] = acc / divisor[0];
  }
  return out;
}

namespace {

// Exact square root of a rational that must be a perfect square.
Rat exact_sqrt(const Rat& x) {
  if (x <= 0) throw std::invalid_argument("series sqrt needs a positive constant term");
  const Int num = numerator(x);
  const Int den = denominator(x);
  const Int rn = sqrt(num);
  const Int rd = sqrt(den);
  if (rn * rn != num || rd * rd != den)
    throw std::invalid_argument("series sqrt needs a perfect-square constant term");
  return Rat(rn) / Rat(rd);
}

}  // namespace

RationalSeries RationalSeries::sqrt() const {
  const int N = order();
  const Rat half(1, 2);
  // Newton iteration y <- (y + x/y)/2: correct to order m on entry means
  // correct to order 2m + 1 on exit.
  RationalSeries y = constant(0, exact_sqrt(coeffs_[0]));
  int resolved = 0;
  while (resolved < N) {
    const int next = std::min(2 * resolved + 1, N);
    const RationalSeries y_ext = y.truncated(next);
    RationalSeries avg = truncated(next).divided_by(y_ext) + y_ext;
    for (int i = 0; i <= next; ++i) avg.coeffs_[i] *= half;
    y = std::move(avg);
    resolved = next;
  }
  return y;
}

namespace {

// Integer coefficients of S(z) through the recurrence
// s_n = s_{n-1} - s_{n-2} + sum_{k=0}^{n-2} s_k s_{n-2-k}.
std::vector<Int> secondary_ints(int N) {
  std::vector<Int> s(static_cast<size_t>(N) + 1);
  if (N >= 0) s[0] = 1;
  if (N >= 1) s[1] = 1;
  for (int n = 2; n <= N; ++n) {
    Int acc = s[n - 1] - s[n - 2];
    for (int k = 0; k <= n - 2; ++k) acc += s[k] * s[n - 2 - k];
    s[n] = acc;
  }
  return s;
}

// Coefficients of the polynomial B_r = z^{2r} - z^2 + 1 up to order N.
std::vector<Rat> b_poly(int r, int N) {
  std::vector<Rat> b(static_cast<size_t>(N) + 1);
  b[0] += 1;
  if (N >= 2) b[2] -= 1;
  if (N >= 2 * r) b[2 * r] += 1;
  return b;
}

// Coefficients of A_r = z^{2r} + (1 - z) B_r up to order N.
std::vector<Rat> a_poly(int r, int N) {
  const std::vector<Rat> b = b_poly(r, N);
  std::vector<Rat> a(static_cast<size_t>(N) + 1);
  if (N >= 2 * r) a[2 * r] += 1;
  for (int k = 0; k <= N; ++k) {
    a[k] += b[k];
    if (k + 1 <= N) a[k + 1] -= b[k];
  }
  return a;
}

}  // namespace

RationalSeries secondary_series(int N) {
  const std::vector<Int> s = secondary_ints(N);
  std::vector<Rat> c(s.size());
  for (size_t i = 0; i < s.size(); ++i) c[i] = s[i];
  return RationalSeries(N, std::move(c));
}

RationalSeries irr_series(int N) {
  RationalSeries out = RationalSeries::zero(N);
  if (N >= 3) {
    const std::vector<Int> s = secondary_ints(N - 2);
    for (int m = 3; m <= N; ++m) out.at(m) = s[m - 2];
  }
  return out;
}

RationalSeries canonical_series(int r, int N) {
  if (r < 1) throw std::invalid_argument("minimum stack length must be >= 1");
  // S_r = (A_r - sqrt(p_r)) / (2 z^{2r}): work 2r orders higher, then shift.
  const int M = N + 2 * r;
  const RationalSeries A(M, a_poly(r, M));
  const RationalSeries B(M, b_poly(r, M));
  RationalSeries p = A * A;
  {  // p -= 4 z^{2r} B
    for (int m = 2 * r; m <= M; ++m) p.at(m) -= 4 * B[m - 2 * r];
  }
  const RationalSeries root = p.sqrt();
  std::vector<Rat> out(static_cast<size_t>(N) + 1);
  const Rat half(1, 2);
  for (int m = 0; m < 2 * r; ++m)
    if (A[m] != root[m])
      throw std::logic_error("S_r numerator must be divisible by z^{2r}");
  for (int n = 0; n <= N; ++n) out[n] = (A[n + 2 * r] - root[n + 2 * r]) * half;
  return RationalSeries(N, std::move(out));
}

RationalSeries canonical_series_via_recurrence(int r, int N) {
  if (r < 1) throw std::invalid_argument("minimum stack length must be >= 1");
  // z^{2r} S_r^2 - A_r S_r + B_r = 0 with A_r(0) = 1 solves coefficientwise:
  // s_n = (S_r^2)_{n-2r} + b_n - sum_{k>=1} a_k s_{n-k}.
  const int deg_a = 2 * r + 1;
  const std::vector<Rat> a = a_poly(r, deg_a);
  const std::vector<Rat> b = b_poly(r, std::max(2 * r, 2));
  std::vector<Rat> s(static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    Rat acc = (n < static_cast<int>(b.size())) ? b[n] : Rat(0);
    for (int k = 1; k <= std::min(n, deg_a); ++k) acc -= a[k] * s[n - k];
    if (n >= 2 * r)
      for (int i = 0; i <= n - 2 * r; ++i) acc += s[i] * s[n - 2 * r - i];
    s[n] = acc;
  }
  return RationalSeries(N, std::move(s));
}

std::vector<Int> integer_coeffs(const RationalSeries& series) {
  std::vector<Int> out(static_cast<size_t>(series.order()) + 1);
  for (int i = 0; i <= series.order(); ++i) {
    if (denominator(series[i]) != 1)
      throw std::logic_error("expected an integer series coefficient at index " +
                             std::to_string(i));
    out[i] = numerator(series[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bivariate machinery: series in z whose coefficients are dense integer
// polynomials in u, truncated above degree ucap. Truncation is sound (it is
// the quotient map Z[u] -> Z[u]/(u^{ucap+1})).

namespace {

struct PolyU {
  std::vector<Int> c;  // c[k] multiplies u^k; trailing zeros trimmed

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  const Int& coeff(int k) const {
    static const Int kZero{0};
    return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : kZero;
  }

  void add_term(int k, const Int& value) {
    if (value == 0) return;
    if (static_cast<int>(c.size()) <= k) c.resize(static_cast<size_t>(k) + 1);
    c[k] += value;
    trim();
  }
};

// dst += a * b, dropping powers of u above ucap.
void mac(PolyU& dst, const PolyU& a, const PolyU& b, int ucap) {
  if (a.is_zero() || b.is_zero()) return;
  const int deg = std::min(a.degree() + b.degree(), ucap);
  if (deg < 0) return;
  if (static_cast<int>(dst.c.size()) <= deg) dst.c.resize(static_cast<size_t>(deg) + 1);
  for (int i = 0; i <= a.degree() && i <= ucap; ++i) {
    if (a.c[i] == 0) continue;
    const int jmax = std::min(b.degree(), ucap - i);
    for (int j = 0; j <= jmax; ++j) {
      if (b.c[j] == 0) continue;
      dst.c[static_cast<size_t>(i) + j] += a.c[i] * b.c[j];
    }
  }
  dst.trim();
}

void sub_mac(PolyU& dst, const PolyU& a, const PolyU& b, int ucap) {
  if (a.is_zero() || b.is_zero()) return;
  const int deg = std::min(a.degree() + b.degree(), ucap);
  if (deg < 0) return;
  if (static_cast<int>(dst.c.size()) <= deg) dst.c.resize(static_cast<size_t>(deg) + 1);
  for (int i = 0; i <= a.degree() && i <= ucap; ++i) {
    if (a.c[i] == 0) continue;
    const int jmax = std::min(b.degree(), ucap - i);
    for (int j = 0; j <= jmax; ++j) {
      if (b.c[j] == 0) continue;
      dst.c[static_cast<size_t>(i) + j] -= a.c[i] * b.c[j];
    }
  }
  dst.trim();
}

using BivarSeries = std::vector<PolyU>;  // index = power of z

// Multiplicative inverse of D with D[0] == 1 (asserted): the standard
// e_n = -sum_{k=1}^{n} d_k e_{n-k} recurrence.
BivarSeries bivar_inverse(const BivarSeries& D, int ucap) {
  if (D.empty() || D[0].degree() != 0 || D[0].coeff(0) != 1)
    throw std::logic_error("bivariate divisor must have constant term 1");
  const int N = static_cast<int>(D.size()) - 1;
  BivarSeries E(static_cast<size_t>(N) + 1);
  E[0].add_term(0, 1);
  for (int n = 1; n <= N; ++n) {
    PolyU acc;
    for (int k = 1; k <= n; ++k) sub_mac(acc, D[k], E[n - k], ucap);
    E[n] = std::move(acc);
  }
  return E;
}

BivarSeries bivar_multiply(const BivarSeries& a, const BivarSeries& b, int ucap) {
  const int N = static_cast<int>(std::min(a.size(), b.size())) - 1;
  BivarSeries out(static_cast<size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= N; ++j) mac(out[i + j], a[i], b[j], ucap);
  }
  return out;
}

// Assemble a DistanceTable from [z^n] W = sum_d w(n,d) u^d, checking the
// support bound (degree < n) and nonnegativity, with row totals taken from
// the counting series.
DistanceTable table_from_bivar(int r, int N, int d_limit, const BivarSeries& W,
                               std::vector<Int> totals) {
  std::vector<std::vector<Int>> rows(static_cast<size_t>(N) + 1);
  for (int n = 1; n <= N; ++n) {
    const PolyU& row = W[n];
    if (row.degree() >= n)
      throw std::logic_error("w(n,d) must vanish for d >= n");
    const int width = std::min(n - 1, d_limit);
    rows[n].resize(static_cast<size_t>(width) + 1);
    for (int d = 0; d <= width; ++d) {
      const Int& v = row.coeff(d);
      if (v < 0) throw std::logic_error("w(n,d) must be nonnegative");
      rows[n][d] = v;
    }
  }
  return DistanceTable(r, N, d_limit, std::move(rows), std::move(totals));
}

int effective_d_limit(int N, int d_max) {
  return (d_max < 0) ? N - 1 : std::min(d_max, N - 1);
}

}  // namespace

DistanceTable::DistanceTable(int r, int N, int d_max,
                             std::vector<std::vector<Int>> rows,
                             std::vector<Int> row_totals)
    : r_(r), N_(N), d_max_(d_max), rows_(std::move(rows)),
      row_totals_(std::move(row_totals)) {}

const Int& DistanceTable::w(int n, int d) const {
  static const Int kZero{0};
  if (n < 1 || n > N_)
    throw Error(ErrorCode::LengthOutOfRange,
                "n = " + std::to_string(n) + " not in [1, " + std::to_string(N_) + "]");
  if (d < 0 || d > d_max_)
    throw std::out_of_range("distance column " + std::to_string(d) +
                            " beyond stored d_max " + std::to_string(d_max_));
  if (d >= static_cast<int>(rows_[n].size())) return kZero;
  return rows_[n][d];
}

const Int& DistanceTable::row_total(int n) const {
  if (n < 1 || n > N_)
    throw Error(ErrorCode::LengthOutOfRange,
                "n = " + std::to_string(n) + " not in [1, " + std::to_string(N_) + "]");
  return row_totals_[n];
}

DistanceTable distance_table(int r, int N, int d_max) {
  if (r < 1 || N < 1) throw std::invalid_argument("need r >= 1 and N >= 1");
  const int d_limit = effective_d_limit(N, d_max);
  const int ucap = d_limit;

  std::vector<Int> sr = integer_coeffs(canonical_series_via_recurrence(r, N));

  // G[m] = [z^m] z^{2r} (S_r - 1) = s_{m-2r} for m - 2r >= 1.
  std::vector<Int> G(static_cast<size_t>(N) + 1);
  for (int m = 2 * r + 1; m <= N; ++m) G[m] = sr[m - 2 * r];

  // Denominator (1-zu)^2 B_r - (1-zu) u^2 z^{2r}(S_r - 1): per power of z a
  // polynomial in u of degree <= 3.
  const std::vector<Rat> b = b_poly(r, N);
  BivarSeries D(static_cast<size_t>(N) + 1);
  for (int m = 0; m <= N; ++m) {
    // (1 - 2zu + z^2 u^2) B_r contributions.
    if (b[m] != 0) D[m].add_term(0, numerator(b[m]));
    if (m >= 1 && b[m - 1] != 0) D[m].add_term(1, -2 * numerator(b[m - 1]));
    if (m >= 2 && b[m - 2] != 0) D[m].add_term(2, numerator(b[m - 2]));
    // -(1 - zu) u^2 G contributions.
    if (G[m] != 0) D[m].add_term(2, -G[m]);
    if (m >= 1 && G[m - 1] != 0) D[m].add_term(3, G[m - 1]);
  }

  BivarSeries E = bivar_inverse(D, ucap);

  // Numerator u z^{2r} (S_r - 1) = u G.
  BivarSeries num(static_cast<size_t>(N) + 1);
  for (int m = 0; m <= N; ++m)
    if (G[m] != 0) num[m].add_term(1, G[m]);

  BivarSeries W = bivar_multiply(num, E, ucap);
  // V(z,u) = z/(1-zu): [z^n] = u^{n-1}.
  for (int n = 1; n <= N; ++n)
    if (n - 1 <= ucap) W[n].add_term(n - 1, 1);

  std::vector<Int> totals(sr.begin(), sr.end());
  return table_from_bivar(r, N, d_limit, W, std::move(totals));
}

DistanceTable theorem1_table(int N, int d_max) {
  if (N < 1) throw std::invalid_argument("need N >= 1");
  const int d_limit = effective_d_limit(N, d_max);
  const int ucap = d_limit;

  const std::vector<Int> irr = integer_coeffs(irr_series(N));

  // Denominator (1-zu)^2 - (1-zu)(zu)^2 (S-1) = (1-zu) H with
  // H = (1-zu) - u^2 Irr(z); invert H, then divide by (1-zu) via the
  // closed-form geometric series — a deliberately different arrangement
  // from distance_table for cross-validation.
  BivarSeries H(static_cast<size_t>(N) + 1);
  H[0].add_term(0, 1);
  if (N >= 1) H[1].add_term(1, -1);
  for (int m = 3; m <= N; ++m)
    if (irr[m] != 0) H[m].add_term(2, -irr[m]);

  const BivarSeries E1 = bivar_inverse(H, ucap);

  // E2 = E1 / (1-zu): [z^n] E2 = sum_k u^{n-k} [z^k] E1.
  BivarSeries E2(static_cast<size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    PolyU acc;
    for (int k = 0; k <= n; ++k) {
      if (E1[k].is_zero() || n - k > ucap) continue;
      PolyU shift;
      shift.add_term(n - k, 1);
      mac(acc, E1[k], shift, ucap);
    }
    E2[n] = std::move(acc);
  }

  BivarSeries num(static_cast<size_t>(N) + 1);
  for (int m = 3; m <= N; ++m)
    if (irr[m] != 0) num[m].add_term(1, irr[m]);

  BivarSeries W = bivar_multiply(num, E2, ucap);
  for (int n = 1; n <= N; ++n)
    if (n - 1 <= ucap) W[n].add_term(n - 1, 1);

  std::vector<Int> totals = secondary_ints(N);
  return table_from_bivar(1, N, d_limit, W, std::move(totals));
}

DistanceTable claim2_table(int N, int d_max) {
  if (N < 1) throw std::invalid_argument("need N >= 1");
  const int d_limit = effective_d_limit(N, d_max);

  const std::vector<Int> s = secondary_ints(N);
  // Irr(z)^j for j = 1..k_max; an i-fold product of irreducibles first
  // appears at z^{3i}, and the arrangement count C(d-i, i+1) vanishes for
  // i > (d-1)/2.
  const int k_max = std::max(1, std::min((d_limit + 1) / 2, N / 3));
  std::vector<Int> irr(static_cast<size_t>(N) + 1);
  for (int m = 3; m <= N; ++m) irr[m] = s[m - 2];
  std::vector<std::vector<Int>> pow(static_cast<size_t>(k_max) + 1);
  pow[1] = irr;
  for (int j = 2; j <= k_max; ++j) {
    pow[j].assign(static_cast<size_t>(N) + 1, Int(0));
    for (int a = 3; a <= N; ++a) {
      if (irr[a] == 0) continue;
      for (int m = 3 * (j - 1); a + m <= N; ++m) {
        if (pow[j - 1][m] == 0) continue;
        pow[j][a + m] += irr[a] * pow[j - 1][m];
      }
    }
  }

  std::vector<std::vector<Int>> rows(static_cast<size_t>(N) + 1);
  Int binom;
  for (int n = 1; n <= N; ++n) {
    const int width = std::min(n - 1, d_limit);
    rows[n].resize(static_cast<size_t>(width) + 1);
    for (int d = 1; d <= width; ++d) {
      Int acc = 0;
      for (int i = 0; 2 * i + 1 <= d && i + 1 <= k_max; ++i) {
        const int m = n - d + 2 * i + 1;  // [z^m] Irr^{i+1}
        if (m < 3 * (i + 1) || m > N) continue;
        if (pow[i + 1][m] == 0) continue;
        mpz_bin_uiui(binom.backend().data(),
                     static_cast<unsigned long>(d - i),
                     static_cast<unsigned long>(i + 1));
        acc += binom * pow[i + 1][m];
      }
      rows[n][d] = std::move(acc);
    }
    if (n - 1 <= width) rows[n][n - 1] += 1;  // the arcless structure
  }

  std::vector<Int> totals(s.begin(), s.end());
  return DistanceTable(1, N, d_limit, std::move(rows), std::move(totals));
}

std::vector<Rat> probability_row(const DistanceTable& t, int n) {
  if (n < 1 || n > t.N())
    throw Error(ErrorCode::LengthOutOfRange,
                "n = " + std::to_string(n) + " not in [1, " + std::to_string(t.N()) + "]");
  const Int& total = t.row_total(n);
  const int width = std::min(n - 1, t.d_max());
  std::vector<Rat> p(static_cast<size_t>(width) + 1);
  for (int d = 0; d <= width; ++d) p[d] = Rat(t.w(n, d)) / Rat(total);
  return p;
}

}  // namespace helixspan
