#pragma once

#include <string>
#include <vector>

#include "helixspan/diagram.hpp"

namespace helixspan {

// A 1-tableau: one-row shape sizes (lambda_0, ..., lambda_n) with
// lambda_0 = lambda_n = 0, steps in {-1, 0, +1}, no +1 step immediately
// followed by a -1 step, and all sizes nonnegative.
class Tableau {
 public:
  explicit Tableau(std::vector<int> shapes);

  // Number of steps (the structure length).
  int n() const { return static_cast<int>(shapes_.size()) - 1; }
  const std::vector<int>& shapes() const { return shapes_; }

  // lambda_i - lambda_{i-1}, for 1 <= i <= n.
  int step(int i) const { return shapes_[i] - shapes_[i - 1]; }

  // Debug/test format: comma-separated sizes, e.g. "0,1,1,0".
  std::string to_string() const;
  static Tableau from_string(const std::string& text);

  bool operator==(const Tableau& other) const = default;

 private:
  std::vector<int> shapes_;
};

// Classification of the empty shapes among lambda_1..lambda_n:
// terminal empties of irreducible blocks are starred, except the one for
// the structure's rightmost irreducible (hash); the rest are plain.
struct EmptyShapeCensus {
  long long count_star = 0;
  long long count_hash = 0;
  long long count_plain = 0;

  bool operator==(const EmptyShapeCensus& other) const = default;
};

// A block [lo, hi] in shape indices: lambda_lo = lambda_hi = 0 and
// lambda_j > 0 for lo < j < hi.
struct IndexInterval {
  int lo = 0;
  int hi = 0;

  bool operator==(const IndexInterval& other) const = default;
};

// The bijection: vertices are processed n, n-1, ..., 1 starting from the
// empty shape; an arc endpoint adds a square, an arc start point removes
// one, an isolated vertex leaves the shape unchanged. Tableau position t
// therefore corresponds to vertex n - t + 1.
Tableau beta(const SecondaryStructure& s);

// Inverse: scanning steps left to right, an added square receives the
// vertex n - t + 1, a removed square pairs it with the most recently added
// unmatched one. Satisfies beta_inv(beta(s)) = s and beta(beta_inv(t)) = t.
SecondaryStructure beta_inv(const Tableau& t);

// Maximal intervals of nonzero shapes, with their bounding zeros, ordered
// left to right in tableau order.
std::vector<IndexInterval> irreducible_blocks(const Tableau& t);

EmptyShapeCensus census(const Tableau& t);

// n - 1 when there is no irreducible block, otherwise
// 2*count_star + count_hash + count_plain. Equals bfs_distance(beta_inv(t)).
long long tableau_distance(const Tableau& t);

// True iff the tableau of s has a single block spanning everything
// (equivalently: s carries the arc (1, n)).
bool is_irreducible(const SecondaryStructure& s);

// Peel the enclosing arc of an irreducible structure: removes the first and
// last tableau steps and one square from every interior shape, i.e. drops
// the arc (1, n) and shifts the rest down. Throws NotIrreducible.
SecondaryStructure gamma(const SecondaryStructure& s);

// Wrap a structure with an enclosing arc (1, n+2); inverse of gamma.
SecondaryStructure gamma_star(const SecondaryStructure& s);

}  // namespace helixspan
