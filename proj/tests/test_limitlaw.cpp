#include <doctest.h>

#include <boost/multiprecision/mpfr.hpp>

#include <vector>

#include "helixspan/limitlaw.hpp"

using namespace helixspan;

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;

QSqrt5 q5(long an, long ad, long bn, long bd) {
  return QSqrt5(Rat(an, ad), Rat(bn, bd));
}

// The rational functions behind Q(u) = m1(u)/m2(u), written out so the
// published series can be re-derived here by plain polynomial division.
const std::vector<QSqrt5> kM1{{0, 0}, {-7, 3}};
const std::vector<QSqrt5> kM2{{-2, 0}, {6, -2}, {-15, 7}, {22, -10}, {-18, 8}};

QSqrt5 eval_poly(const std::vector<QSqrt5>& coeffs, const QSqrt5& u) {
  QSqrt5 acc{0, 0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::vector<QSqrt5> divide_series(int D) {
  std::vector<QSqrt5> q(static_cast<size_t>(D) + 1, QSqrt5{0, 0});
  const QSqrt5 lead_inv = kM2[0].inverse();
  for (int k = 0; k <= D; ++k) {
    QSqrt5 acc = k < static_cast<int>(kM1.size()) ? kM1[k] : QSqrt5{0, 0};
    for (int j = 1; j <= 4 && j <= k; ++j) acc = acc - kM2[j] * q[k - j];
    q[k] = acc * lead_inv;
  }
  return q;
}

}  // namespace

TEST_SUITE("limitlaw") {

TEST_CASE("exact field arithmetic") {
  const QSqrt5 x{1, 1};   // 1 + sqrt5
  const QSqrt5 y{1, -1};  // 1 - sqrt5
  CHECK(x * y == QSqrt5{-4, 0});
  CHECK(x + y == QSqrt5{2, 0});
  CHECK(x - y == QSqrt5{0, 2});
  CHECK(-x == QSqrt5{-1, -1});
  CHECK(Rat(3) * x == QSqrt5{3, 3});
  CHECK(x * x.inverse() == QSqrt5{1, 0});
  CHECK(x / x == QSqrt5{1, 0});
  CHECK(QSqrt5{0, 0}.is_zero());
  CHECK_FALSE(x.is_zero());
}

TEST_CASE("exact sign") {
  CHECK(QSqrt5{0, 0}.sign() == 0);
  CHECK(QSqrt5{3, -1}.sign() == 1);   // 3 - sqrt5 > 0
  CHECK(QSqrt5{-3, 1}.sign() == -1);  // sqrt5 - 3 < 0
  CHECK(QSqrt5{2, -1}.sign() == -1);  // 2 - sqrt5 < 0
  CHECK(QSqrt5{-2, 1}.sign() == 1);
  CHECK(QSqrt5{5, -2}.sign() == 1);   // 5 - 2 sqrt5 > 0 (25 vs 20)
  CHECK(QSqrt5{0, -3}.sign() == -1);
  CHECK(QSqrt5{7, 0}.sign() == 1);
}

TEST_CASE("rendering") {
  CHECK(q5(7, 2, -3, 2).to_string() == "7/2-3/2*sqrt5");
  CHECK(QSqrt5{18, -8}.to_string() == "18-8*sqrt5");
  CHECK(QSqrt5{0, 0}.to_string() == "0");
  CHECK(QSqrt5{5, 0}.to_string() == "5");
  CHECK(QSqrt5{0, 1}.to_string() == "1*sqrt5");
  CHECK(QSqrt5{0, -1}.to_string() == "-1*sqrt5");
  CHECK(QSqrt5{-1, 1}.to_string() == "-1+1*sqrt5");
}

TEST_CASE("numeric evaluation survives cancellation") {
  // 161 - 72 sqrt5 is ~3.1e-3 while both halves are ~161.
  const QSqrt5 tiny{161, -72};
  CHECK(tiny.sign() == 1);
  const Real prod = tiny.value(120) * QSqrt5{161, 72}.value(120);
  CHECK(abs(prod - 1) < 1e-30);  // (a - b sqrt5)(a + b sqrt5) = a^2 - 5 b^2 = 1
  CHECK(QSqrt5{0, 0}.value() == 0);
}

TEST_CASE("rho is the dominant singularity") {
  const QSqrt5 r = rho();
  CHECK(r == q5(3, 2, -1, 2));
  // z^2 - 3z + 1 = 0
  CHECK((r * r - Rat(3) * r + QSqrt5{1, 0}).is_zero());
  CHECK(abs(r.value(100) - 0.3819660112501051518) < 1e-15);
  CHECK(abs(r.inverse().value(100) - 2.6180339887498948482) < 1e-15);
}

TEST_CASE("delta") {
  PrecisionGuard guard(220);
  const Real d = delta(200);
  CHECK(d > 1);
  CHECK(d > 1.402447785);
  CHECK(d < 1.402447786);
  // Self-consistency: (4 delta + 1 + sqrt5)^2 = 38 + 18 sqrt5.
  const Real sqrt5 = sqrt(Real(5));
  const Real lhs = (4 * d + 1 + sqrt5) * (4 * d + 1 + sqrt5);
  const Real rhs = 38 + 18 * sqrt5;
  CHECK(abs(lhs - rhs) < 1e-50);
  CHECK(abs(QSqrt5{38, 18}.value(100) - 78.249224) < 1e-6);
}

TEST_CASE("limit law coefficients") {
  const auto law = q_series(10);
  CHECK(law.D == 10);
  REQUIRE(law.q.size() == 11);
  CHECK(law.q[0].is_zero());
  CHECK(law.q[1] == q5(7, 2, -3, 2));
  CHECK(law.q[2] == QSqrt5{18, -8});
  CHECK(law.q[3] == q5(83, 2, -37, 2));
  // The non-monotone dip at the start: q(2) < q(3) < q(1), exactly.
  CHECK((law.q[3] - law.q[2]).sign() == 1);
  CHECK((law.q[1] - law.q[3]).sign() == 1);
  CHECK(abs(law.q[1].value(100) - 0.145898) < 1e-6);
}

TEST_CASE("q_series is the division of m1 by m2") {
  const int D = 30;
  const auto law = q_series(D);
  const auto expected = divide_series(D);
  for (int d = 0; d <= D; ++d) {
    CAPTURE(d);
    CHECK(law.q[d] == expected[d]);
  }
}

TEST_CASE("Q(1) = 1 exactly") {
  // Total mass one: m1(1) = m2(1) in Q(sqrt5).
  const QSqrt5 one{1, 0};
  CHECK(eval_poly(kM1, one) == eval_poly(kM2, one));
  CHECK(eval_poly(kM1, one) == QSqrt5{-7, 3});
}

TEST_CASE("q is positive and sums below one") {
  const int D = 200;
  const auto law = q_series(D);
  QSqrt5 sum{0, 0};
  for (int d = 1; d <= D; ++d) {
    CAPTURE(d);
    CHECK(law.q[d].sign() == 1);
    sum = sum + law.q[d];
  }
  CHECK((QSqrt5{1, 0} - sum).sign() == 1);
  // ...and the remainder is genuinely small: the tail decays like delta^-d.
  CHECK((QSqrt5{1, 0} - sum).value(400) < 1e-25);
}

TEST_CASE("singular expansion constants") {
  const auto c = singular_constants(Rat(1, 2), 150);
  CHECK(c.u == Rat(1, 2));
  CHECK(c.alpha > 0);
  CHECK(c.alpha < 1);  // subcritical
  CHECK(c.t_rho > 0);
  CHECK(c.r_rho < 0);

  // alpha -> 0 with u.
  const auto small = singular_constants(Rat(1, 1000), 100);
  CHECK(small.alpha < 1e-3);
  CHECK(abs(small.C0 - small.alpha) < 1e-5);

  CHECK_THROWS_AS(singular_constants(Rat(0)), Error);
  CHECK_THROWS_AS(singular_constants(Rat(1)), Error);
  CHECK_THROWS_AS(singular_constants(Rat(-1, 4)), Error);
  CHECK_THROWS_AS(singular_constants(Rat(3, 2)), Error);
  CHECK_THROWS_WITH_AS(singular_constants(Rat(2)),
                       doctest::Contains("ProbeOutOfRange"), Error);
}

TEST_CASE("gamma density") {
  PrecisionGuard guard(120);
  // Gamma(1) = 1, so f(1, 1, x) = e^-x.
  for (double x : {0.25, 1.0, 2.0, 7.5}) {
    CHECK(abs(gamma_density(Real(1), Real(1), Real(x)) - exp(Real(-x))) < 1e-30);
  }
  CHECK(gamma_density(Real(1), Real(2), Real(-1)) == 0);
  CHECK(gamma_density(Real(1), Real(2), Real(0)) == 0);
  // f(lambda, 2, x) = lambda^2 x e^{-lambda x}, maximal at x = 1/lambda.
  const Real lam = log(delta(120));
  const Real peak = gamma_density(lam, Real(2), 1 / lam);
  CHECK(gamma_density(lam, Real(2), Real(1)) < peak);
  CHECK(gamma_density(lam, Real(2), Real(10)) < peak);
}

TEST_CASE("gamma density integrates to one for (log delta, 2)") {
  PrecisionGuard guard(120);
  const Real lam = log(delta(120));
  const Real r = 2;
  // Composite Simpson on [0, 100]; the tail beyond is ~1e-13.
  const int steps = 20000;  // even
  const Real h = Real(100) / steps;
  Real acc = gamma_density(lam, r, Real(0)) + gamma_density(lam, r, Real(100));
  for (int i = 1; i < steps; ++i) {
    acc += gamma_density(lam, r, i * h) * (i % 2 == 1 ? 4 : 2);
  }
  const Real integral = acc * h / 3;
  CHECK(abs(integral - 1) < 1e-8);
}

TEST_CASE("tail ratio matches the Gamma prediction") {
  const auto report = tail_ratio_check(60);
  CHECK(report.check == "tail_ratio");
  CHECK(report.passed);
  CHECK(report.max_deviation > 0);
  CHECK(report.max_deviation < 1e-2);
  CHECK_FALSE(report.rows.empty());
  for (const auto& row : report.rows) {
    CHECK(row.n_or_d >= 30);
    CHECK(row.n_or_d <= 60);
  }
}

TEST_CASE("growth rate of the counting sequence") {
  const auto r1 = growth_rate_check(300, 1, 128, 2e-2);
  CHECK(r1.check == "growth_rate");
  CHECK(r1.passed);
  CHECK(r1.max_deviation < 2e-2);

  // The K-stabilization side condition needs a longer run for r = 2.
  const auto r2 = growth_rate_check(600, 2, 128, 1e-2);
  CHECK(r2.check == "growth_rate_r2");
  CHECK(r2.passed);
}

TEST_CASE("singular expansion residual scales linearly") {
  const auto report = residual_slope_check(120);
  CHECK(report.check == "residual_slope");
  CHECK(report.passed);
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) {
    CHECK(row.observed > 0.9);
    CHECK(row.observed < 1.1);
  }
}

}  // TEST_SUITE
