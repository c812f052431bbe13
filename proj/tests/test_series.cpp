#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "helixspan/series.hpp"

using namespace helixspan;

namespace {

RationalSeries make(std::vector<long> c) {
  std::vector<Rat> coeffs(c.begin(), c.end());
  return RationalSeries(static_cast<int>(c.size()) - 1, std::move(coeffs));
}

double as_double(const Rat& x) { return x.convert_to<double>(); }

}  // namespace

TEST_SUITE("series") {

TEST_CASE("rational series arithmetic") {
  const auto one_plus = make({1, 1, 0});
  const auto one_minus = make({1, -1, 0});
  CHECK(one_plus * one_minus == make({1, 0, -1}));
  CHECK(one_plus + one_minus == make({2, 0, 0}));
  CHECK(one_plus - one_minus == make({0, 2, 0}));

  // Operations truncate at the smaller operand order.
  CHECK((make({1, 1}) * make({1, 1, 1, 1})).order() == 1);
  CHECK(make({1, 2, 3, 4}).truncated(1) == make({1, 2}));
}

TEST_CASE("series division") {
  const auto a = make({1, 1, 0, 0, 0});
  const auto b = make({1, 2, 3, 4, 5});
  CHECK((a * b).divided_by(b) == a);
  CHECK(b.divided_by(b) == make({1, 0, 0, 0, 0}));
  CHECK_THROWS_AS(a.divided_by(make({0, 1, 0, 0, 0})), std::invalid_argument);
}

TEST_CASE("series square root") {
  const auto root = make({1, 1, 0, 0});
  CHECK((root * root).sqrt() == root);
  CHECK(make({4, 0, 0}).sqrt() == make({2, 0, 0}));
  CHECK(make({9, 6, 1}).sqrt() == make({3, 1, 0}));
  // Rational but non-square constant term.
  CHECK_THROWS_AS(make({2, 0, 0}).sqrt(), std::invalid_argument);
  CHECK_THROWS_AS(make({0, 1, 0}).sqrt(), std::invalid_argument);
  CHECK_THROWS_AS(make({-1, 0, 0}).sqrt(), std::invalid_argument);
}

TEST_CASE("secondary structure counting series") {
  const auto s = secondary_series(6);
  const std::vector<Rat> expected{1, 1, 1, 2, 4, 8, 17};
  CHECK(s.coeffs() == expected);
}

TEST_CASE("counting series satisfies its quadratic equation") {
  const int N = 40;
  const auto s = secondary_series(N);
  // z^2 S^2 - (1 - z + z^2) S + 1 = 0
  const auto z2 = [&] {
    auto v = RationalSeries::zero(N);
    v.at(2) = 1;
    return v;
  }();
  auto poly = RationalSeries::zero(N);
  poly.at(0) = 1;
  poly.at(1) = -1;
  poly.at(2) = 1;
  const auto lhs = z2 * s * s - poly * s + RationalSeries::constant(N, 1);
  CHECK(lhs == RationalSeries::zero(N));
}

TEST_CASE("irreducible counting series") {
  const auto irr = irr_series(10);
  CHECK(irr[0] == 0);
  CHECK(irr[1] == 0);
  CHECK(irr[2] == 0);  // the 1-arc is excluded
  CHECK(irr[3] == 1);
  CHECK(irr[4] == 1);
  CHECK(irr[5] == 2);
  // One enclosing arc around any shorter structure: i_n = s_{n-2} - [n = 2].
  const auto s = secondary_series(50);
  const auto irr50 = irr_series(50);
  for (int n = 3; n <= 50; ++n) CHECK(irr50[n] == s[n - 2]);
}

TEST_CASE("canonical series specializes to r = 1") {
  CHECK(canonical_series(1, 50) == secondary_series(50));
}

TEST_CASE("canonical series agrees with its recurrence form") {
  for (int r : {1, 2, 3, 5}) {
    CAPTURE(r);
    CHECK(canonical_series(r, 60) == canonical_series_via_recurrence(r, 60));
  }
}

TEST_CASE("canonical series has integer coefficients") {
  for (int r : {1, 2, 3, 5, 10}) {
    CAPTURE(r);
    CHECK_NOTHROW(integer_coeffs(canonical_series(r, 100)));
  }
  CHECK_THROWS_AS(integer_coeffs(make({1, 1}) .divided_by(make({2, 0}))),
                  std::logic_error);
}

TEST_CASE("small canonical counts") {
  const auto c2 = integer_coeffs(canonical_series(2, 8));
  // Length < 6 admits no stack of two arcs, so only the arcless structure.
  CHECK(c2[1] == 1);
  CHECK(c2[2] == 1);
  CHECK(c2[3] == 1);
  CHECK(c2[4] == 1);
  CHECK(c2[5] == 2);  // "((.))" and "....."
  CHECK(c2[6] == 4);
  CHECK(c2[7] == 8);
}

TEST_CASE("distance table basics") {
  const auto t = distance_table(1, 8);
  CHECK(t.r() == 1);
  CHECK(t.N() == 8);
  CHECK(t.d_max() == 7);
  CHECK(t.w(1, 0) == 1);
  CHECK(t.w(2, 1) == 1);
  CHECK(t.w(3, 1) == 1);
  CHECK(t.w(3, 2) == 1);
  // Support bounds: only the arcless structure reaches d = n - 1.
  for (int n = 1; n <= 8; ++n) {
    CHECK(t.w(n, n - 1) == 1);
    for (int d = n; d <= t.d_max(); ++d) CHECK(t.w(n, d) == 0);
  }
  CHECK_THROWS_AS(t.w(0, 0), Error);
  CHECK_THROWS_AS(t.w(9, 0), Error);
  CHECK_THROWS_AS(t.w(3, 100), std::out_of_range);
}

TEST_CASE("row sums match the counting series") {
  const int N = 60;
  for (int r : {1, 2, 3}) {
    const auto counts = integer_coeffs(canonical_series(r, N));
    const auto t = distance_table(r, N);
    for (int n = 1; n <= N; ++n) {
      Int sum = 0;
      for (int d = 0; d < n; ++d) sum += t.w(n, d);
      CAPTURE(r);
      CAPTURE(n);
      CHECK(sum == counts[n]);
      CHECK(t.row_total(n) == counts[n]);
    }
  }
}

TEST_CASE("three table constructions are identical") {
  const int N = 60;
  const auto generic = distance_table(1, N);
  CHECK(generic == theorem1_table(N));
  CHECK(generic == claim2_table(N));
}

TEST_CASE("truncated tables keep exact probabilities") {
  const int N = 40;
  const auto full = distance_table(1, N);
  const auto cut = distance_table(1, N, 5);
  CHECK(cut.d_max() == 5);
  for (int n = 1; n <= N; ++n) {
    for (int d = 0; d <= 5; ++d) CHECK(cut.w(n, d) == full.w(n, d));
    CHECK(cut.row_total(n) == full.row_total(n));
  }
  CHECK_THROWS_AS(cut.w(10, 6), std::out_of_range);

  const auto cheap = claim2_table(300, 10);
  const auto generic = distance_table(1, 300, 10);
  CHECK(cheap == generic);
}

TEST_CASE("probability rows") {
  const auto t = distance_table(1, 30);
  CHECK(probability_row(t, 1) == std::vector<Rat>{1});

  for (int n : {1, 2, 3, 10, 30}) {
    const auto row = probability_row(t, n);
    Rat sum = 0;
    for (const auto& p : row) {
      CHECK(p >= 0);
      sum += p;
    }
    CHECK(sum == 1);  // exactly, not approximately
  }

  const auto p30 = probability_row(t, 30);
  CHECK(std::abs(as_double(p30[1]) - 0.161) <= 1e-3);
  CHECK(std::abs(as_double(p30[29]) - 4.65e-11) <= 1e-13);
  CHECK(p30[0] == 0);

  CHECK_THROWS_AS(probability_row(t, 0), Error);
  CHECK_THROWS_AS(probability_row(t, 31), Error);
}

TEST_CASE("distance zero only for the single vertex") {
  const auto t = distance_table(1, 20);
  CHECK(t.w(1, 0) == 1);
  for (int n = 2; n <= 20; ++n) CHECK(t.w(n, 0) == 0);
}

}  // TEST_SUITE
