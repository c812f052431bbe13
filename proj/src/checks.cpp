#include "helixspan/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "helixspan/diagram.hpp"
#include "helixspan/oracle.hpp"
#include "helixspan/series.hpp"
#include "helixspan/tableaux.hpp"

namespace helixspan {

namespace {

// Only the first failure is spelled out; the rest just bump the counter.
void record_failure(CheckReport& report, long long& failures,
                    const std::string& what) {
  if (failures == 0) report.note += "; first failure: " + what;
  ++failures;
}

// Outermost arcs (one per irreducible block) and uncovered unpaired
// vertices, computed straight from the arc list so the distance identity is
// tested independently of the tableau-side census.
std::pair<long long, long long> top_level_profile(const SecondaryStructure& s) {
  std::vector<std::pair<int, int>> spans;
  int cur_end = 0;
  for (const auto& arc : s.arcs())
    if (arc.first > cur_end) {
      spans.push_back(arc);
      cur_end = arc.second;
    }
  long long isolated = 0;
  std::size_t k = 0;
  for (int v = 1; v <= s.n(); ++v) {
    while (k < spans.size() && spans[k].second < v) ++k;
    const bool covered = k < spans.size() && spans[k].first <= v;
    if (!covered && s.partner(v) == 0) ++isolated;
  }
  return {static_cast<long long>(spans.size()), isolated};
}

double to_double(const Int& x) { return x.convert_to<double>(); }

}  // namespace

CheckReport check_bijection(int n_bijection, int n_distance) {
  CheckReport report;
  report.check = "bijection";
  report.tolerance = 0;
  report.note = "rows: n -> structures visited vs [z^n]S(z), deviation = "
                "failure count";
  long long failures = 0;

  const std::vector<Int> s_counts =
      integer_coeffs(secondary_series(std::max(1, n_distance)));

  for (int n = 1; n <= n_distance; ++n) {
    const long long at_start = failures;
    Int structures = 0;
    enumerate(n, 1, [&](const SecondaryStructure& s) {
      ++structures;
      const Tableau t = beta(s);
      const long long d = bfs_distance(s);
      if (tableau_distance(t) != d)
        record_failure(report, failures,
                       "tableau distance mismatch at " + to_dot_bracket(s));
      const auto [blocks, isolated] = top_level_profile(s);
      if (2 * blocks + isolated - 1 != d)
        record_failure(report, failures,
                       "2I+V-1 identity fails at " + to_dot_bracket(s));
      const bool spanning =
          !s.arcs().empty() && s.arcs().front() == std::pair<int, int>{1, n};
      if (is_irreducible(s) != spanning)
        record_failure(report, failures,
                       "spanning-arc characterization fails at " +
                           to_dot_bracket(s));
      if (spanning && gamma_star(gamma(s)) != s)
        record_failure(report, failures,
                       "gamma* . gamma != id at " + to_dot_bracket(s));
      if (n <= n_bijection) {
        if (beta_inv(t) != s)
          record_failure(report, failures,
                         "beta_inv . beta != id at " + to_dot_bracket(s));
        if (gamma(gamma_star(s)) != s)
          record_failure(report, failures,
                         "gamma . gamma* != id at " + to_dot_bracket(s));
      }
    });
    if (structures != s_counts[n])
      record_failure(report, failures,
                     "structure count != s_" + std::to_string(n));

    if (n <= n_bijection) {
      // All tableaux of length n, generated directly from the step rules.
      Int tableaux = 0;
      std::vector<int> shapes{0};
      std::function<void(int, int, int)> grow = [&](int i, int size,
                                                    int last) {
        if (i == n) {
          if (size != 0) return;
          ++tableaux;
          const Tableau t(shapes);
          if (beta(beta_inv(t)) != t)
            record_failure(report, failures,
                           "beta . beta_inv != id at " + t.to_string());
          return;
        }
        const int remaining = n - i;
        // A +1 step needs a non-minus buffer step before the size+1 minuses.
        if (size + 2 <= remaining - 1) {
          shapes.push_back(size + 1);
          grow(i + 1, size + 1, +1);
          shapes.pop_back();
        }
        if (size <= remaining - 1) {
          shapes.push_back(size);
          grow(i + 1, size, 0);
          shapes.pop_back();
        }
        if (size >= 1 && last != +1) {
          shapes.push_back(size - 1);
          grow(i + 1, size - 1, -1);
          shapes.pop_back();
        }
      };
      grow(0, 0, 0);
      if (tableaux != s_counts[n])
        record_failure(report, failures,
                       "tableau count != s_" + std::to_string(n));
    }

    report.rows.push_back({n, to_double(structures), to_double(s_counts[n]),
                           static_cast<double>(failures - at_start)});
  }

  report.max_deviation = static_cast<double>(failures);
  report.passed = failures == 0;
  return report;
}

CheckReport check_oracle(int n_max, const std::vector<int>& rs) {
  CheckReport report;
  report.check = "oracle";
  report.tolerance = 0;
  report.note = "rows: r -> table cells compared against enumeration";
  long long failures = 0;

  for (int r : rs) {
    const long long at_start = failures;
    const DistanceTable table = distance_table(r, n_max);
    long long cells = 0;
    for (int n = 1; n <= n_max; ++n) {
      std::map<int, Int> counts;
      Int seen = 0;
      enumerate(n, r, [&](const SecondaryStructure& s) {
        ++seen;
        const int d = bfs_distance(s);
        if (tableau_distance(beta(s)) != d)
          record_failure(report, failures,
                         "distance mismatch at " + to_dot_bracket(s));
        ++counts[d];
      });
      if (seen != table.row_total(n))
        record_failure(report, failures,
                       "row total mismatch at r=" + std::to_string(r) +
                           " n=" + std::to_string(n));
      for (int d = 0; d < n; ++d) {
        ++cells;
        const auto it = counts.find(d);
        const Int got = it == counts.end() ? Int(0) : it->second;
        if (got != table.w(n, d))
          record_failure(report, failures,
                         "w(" + std::to_string(n) + "," + std::to_string(d) +
                             ") mismatch at r=" + std::to_string(r));
      }
      for (const auto& [d, count] : counts)
        if (d < 0 || d >= n)
          record_failure(report, failures,
                         "distance out of range at n=" + std::to_string(n));
    }
    report.rows.push_back({r, static_cast<double>(cells),
                           static_cast<double>(cells),
                           static_cast<double>(failures - at_start)});
  }

  report.max_deviation = static_cast<double>(failures);
  report.passed = failures == 0;
  return report;
}

CheckReport check_row_sums(int N, const std::vector<int>& rs) {
  CheckReport report;
  report.check = "row_sums";
  report.tolerance = 0;
  report.note = "rows: r -> rows audited in distance_table(r," +
                std::to_string(N) + ")";
  long long failures = 0;

  const RationalSeries plain = secondary_series(N);
  for (int r : rs) {
    const long long at_start = failures;
    const RationalSeries via_sqrt = canonical_series(r, N);
    if (canonical_series_via_recurrence(r, N) != via_sqrt)
      record_failure(report, failures,
                     "sqrt vs recurrence at r=" + std::to_string(r));
    if (r == 1 && via_sqrt != plain)
      record_failure(report, failures, "S_1 != S");
    const std::vector<Int> totals = integer_coeffs(via_sqrt);

    const DistanceTable table = distance_table(r, N);
    for (int n = 1; n <= N; ++n) {
      Int sum = 0;
      for (int d = 0; d < n; ++d) {
        const Int& w = table.w(n, d);
        if (w < 0)
          record_failure(report, failures,
                         "negative cell at n=" + std::to_string(n));
        sum += w;
      }
      const std::string where =
          " at r=" + std::to_string(r) + " n=" + std::to_string(n);
      if (sum != totals[n])
        record_failure(report, failures, "row sum != [z^n]S_r" + where);
      if (table.row_total(n) != totals[n])
        record_failure(report, failures, "stored total != [z^n]S_r" + where);
      if (table.w(n, n - 1) != 1)
        record_failure(report, failures, "w(n,n-1) != 1" + where);
      if ((table.w(n, 0) != 0) != (n == 1))
        record_failure(report, failures, "w(n,0) support" + where);
    }
    report.rows.push_back({r, static_cast<double>(N), static_cast<double>(N),
                           static_cast<double>(failures - at_start)});
  }

  report.max_deviation = static_cast<double>(failures);
  report.passed = failures == 0;
  return report;
}

CheckReport check_specialization(int N) {
  CheckReport report;
  report.check = "specialization";
  report.tolerance = 0;
  report.note = "rows: 1 -> bivariate vs direct r=1 form, 2 -> bivariate vs "
                "arrangement counting; full tables at N=" + std::to_string(N);

  const DistanceTable bivariate = distance_table(1, N);
  const DistanceTable direct = theorem1_table(N);
  const DistanceTable arrangements = claim2_table(N);

  const double direct_bad = bivariate == direct ? 0.0 : 1.0;
  const double arrangements_bad = bivariate == arrangements ? 0.0 : 1.0;
  report.rows.push_back({1, direct_bad, 0.0, direct_bad});
  report.rows.push_back({2, arrangements_bad, 0.0, arrangements_bad});
  report.max_deviation = std::max(direct_bad, arrangements_bad);
  report.passed = report.max_deviation == 0.0;
  return report;
}

namespace {

// Known three-significant-figure reference values of p(30, d), d = 1..29.
const char* const kReferenceRow30[] = {
    "0.161",   "0.129",   "0.148",   "0.126",   "0.109",   "0.088",
    "0.069",   "5.18e-2", "3.8e-2",  "2.71e-2", "1.87e-2", "1.26e-2",
    "8.22e-3", "5.19e-3", "3.17e-3", "1.86e-3", "1.05e-3", "5.62e-4",
    "2.85e-4", "1.36e-4", "5.99e-5", "2.41e-5", "8.58e-6", "2.63e-6",
    "6.56e-7", "1.24e-7", "1.64e-8", "1.30e-9", "4.65e-11"};

// One unit in the last printed place, e.g. 1e-3 for "0.161" and "3.8e-2".
double printed_ulp(const std::string& text) {
  const std::size_t epos = text.find_first_of("eE");
  int exp10 = 0;
  std::string mantissa = text;
  if (epos != std::string::npos) {
    exp10 = std::stoi(text.substr(epos + 1));
    mantissa = text.substr(0, epos);
  }
  const std::size_t dot = mantissa.find('.');
  const int frac =
      dot == std::string::npos ? 0 : static_cast<int>(mantissa.size() - dot - 1);
  return std::pow(10.0, exp10 - frac);
}

}  // namespace

CheckReport check_reference_distribution() {
  CheckReport report;
  report.check = "reference_distribution";
  report.tolerance = 1.0;  // units in the last printed place
  report.note = "p(30,d) vs the printed three-significant-figure values; "
                "deviation in units of the last printed place";

  const DistanceTable table = claim2_table(30);
  const std::vector<Rat> p = probability_row(table, 30);
  for (int d = 1; d <= 29; ++d) {
    const std::string text = kReferenceRow30[d - 1];
    const double printed = std::stod(text);
    const double ulp = printed_ulp(text);
    const double observed = p[d].convert_to<double>();
    const double deviation = std::abs(observed - printed) / ulp;
    report.rows.push_back({d, observed, printed, deviation});
    report.max_deviation = std::max(report.max_deviation, deviation);
  }
  report.passed = report.max_deviation < report.tolerance;
  return report;
}

CheckReport check_convergence(const std::vector<int>& ns, int d_upper,
                              double tol) {
  CheckReport report;
  report.check = "convergence";
  report.tolerance = tol;

  std::vector<int> sizes = ns;
  std::sort(sizes.begin(), sizes.end());
  const int n_top = sizes.back();
  report.note = "rows: d -> |p(n,d) - q(d)| at n=" + std::to_string(n_top) +
                "; deviations must be non-increasing across the n ladder";
  long long failures = 0;

  PrecisionGuard guard(128);
  const DistanceTable table = claim2_table(n_top, std::max(32, d_upper));
  const LimitLaw law = q_series(d_upper);

  Real worst = 0;
  for (int d = 0; d <= d_upper; ++d) {
    const Real q = law.q[d].value(128);
    Real prev = -1;
    Real dev = 0;
    double p_last = 0;
    for (int n : sizes) {
      const Rat p(table.w(n, d), table.row_total(n));
      dev = abs(to_real(p) - q);
      if (prev >= 0 && dev > prev)
        record_failure(report, failures,
                       "deviation grows from n to " + std::to_string(n) +
                           " at d=" + std::to_string(d));
      prev = dev;
      p_last = p.convert_to<double>();
    }
    report.rows.push_back({d, p_last, static_cast<double>(q),
                           static_cast<double>(dev)});
    if (dev > worst) worst = dev;
  }

  report.max_deviation = static_cast<double>(worst);
  report.passed = failures == 0 && worst <= tol;
  return report;
}

CheckReport check_growth(int N, double rel_tol) {
  return growth_rate_check(N, 1, 128, rel_tol);
}

CheckReport check_tail(int D, double tol) {
  CheckReport report = tail_ratio_check(D, 128);
  report.tolerance = tol;
  report.passed = report.max_deviation < tol;
  return report;
}

CheckReport check_residual(double min_slope, unsigned bits) {
  CheckReport report = residual_slope_check(bits);
  report.tolerance = min_slope;
  report.passed =
      std::all_of(report.rows.begin(), report.rows.end(),
                  [&](const CheckRow& row) { return row.observed >= min_slope; });
  return report;
}

std::vector<CheckReport> run_all_checks(int n_max, const std::vector<int>& rs) {
  std::vector<CheckReport> reports;
  reports.push_back(check_bijection(std::min(12, n_max), n_max));
  reports.push_back(check_oracle(n_max, rs));
  reports.push_back(check_row_sums(200, {1, 2, 3, 5, 10}));
  reports.push_back(check_specialization(200));
  reports.push_back(check_reference_distribution());
  reports.push_back(check_convergence());
  reports.push_back(check_growth());
  reports.push_back(growth_rate_check(1000, 3, kDefaultPrecisionBits, 2e-3));
  reports.push_back(check_tail());
  reports.push_back(check_residual());
  return reports;
}

}  // namespace helixspan
