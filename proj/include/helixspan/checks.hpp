#pragma once

#include <vector>

#include "helixspan/limitlaw.hpp"

namespace helixspan {

// Named invariant suites shared by `helixspan check` and the acceptance
// binary. Each returns a CheckReport with passed/tolerance/deviations filled
// in; deviations are 0/1 counts for the exact (zero-tolerance) suites.

// beta/beta_inv roundtrips (structures and tableaux) up to n_bijection;
// tableau_distance == bfs_distance, gamma* ∘ gamma = id on irreducibles,
// 2*blocks + isolated - 1 distance identity, and the spanning-arc
// characterization up to n_distance; gamma ∘ gamma* = id up to n_bijection.
CheckReport check_bijection(int n_bijection = 12, int n_distance = 14);

// Enumerated counts match [z^n] S_r and histograms match distance_table
// rows for n <= n_max, r in rs; per-structure BFS == tableau distance.
CheckReport check_oracle(int n_max = 14, const std::vector<int>& rs = {1, 2, 3});

// Row sums equal [z^n] S_r (n <= N), support bounds (w(n,d)=0 for d>=n,
// w(n,n-1)=1), integrality of S_r coefficients, and sqrt-vs-recurrence
// agreement for canonical_series.
CheckReport check_row_sums(int N = 200, const std::vector<int>& rs = {1, 2, 3, 5, 10});

// distance_table(1,N), theorem1_table(N) and claim2_table(N) bit-identical.
CheckReport check_specialization(int N = 200);

// p(30,d) against the 29 published three-significant-figure values, within
// one unit in the last printed place.
CheckReport check_reference_distribution();

// |p(n,d) - q(d)| <= tol at n = ns.back() for d <= d_upper, non-increasing
// across ns.
CheckReport check_convergence(const std::vector<int>& ns = {250, 500, 1000, 2000},
                              int d_upper = 20, double tol = 5e-3);

// Relative deviation of s_{N+1}/s_N from (3+sqrt5)/2 below rel_tol, plus
// < 1% stabilization of s_n rho^n n^{3/2} between N/2 and N.
CheckReport check_growth(int N = 2000, double rel_tol = 1e-3);

// Gamma-tail ratio deviation below tol on d in [D/2, D].
CheckReport check_tail(int D = 60, double tol = 1e-2);

// Singular-expansion residual log-log slope >= min_slope at
// u in {1/4, 1/2, 3/4}.
CheckReport check_residual(double min_slope = 0.9,
                           unsigned bits = kDefaultPrecisionBits);

// Everything above with default parameters (n_max/rs applied to the oracle
// suite) — the `helixspan check` payload; exit 0 iff all pass.
std::vector<CheckReport> run_all_checks(int n_max = 14,
                                        const std::vector<int>& rs = {1, 2, 3});

}  // namespace helixspan
