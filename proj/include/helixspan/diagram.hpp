#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "helixspan/numeric.hpp"

namespace helixspan {

// A secondary structure: vertices 1..n on a line, arcs forming a partial
// matching that is noncrossing and has no arcs between adjacent vertices.
class SecondaryStructure {
 public:
  // Validates all invariants; arcs are stored sorted by left endpoint.
  SecondaryStructure(int n, std::vector<std::pair<int, int>> arcs);

  int n() const { return n_; }
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }

  // 0 if vertex v is unpaired, otherwise its partner (1-based).
  int partner(int v) const;

  bool operator==(const SecondaryStructure& other) const = default;

 private:
  int n_;
  std::vector<std::pair<int, int>> arcs_;
};

// A maximal run of parallel arcs (i,j), (i+1,j-1), ..., (i+len-1, j-len+1).
struct StackRun {
  std::pair<int, int> outer;
  int length = 0;

  bool operator==(const StackRun& other) const = default;
};

// Parse a dot-bracket line. Leading/trailing whitespace is trimmed; any
// character other than '.', '(', ')' is rejected.
SecondaryStructure parse_dot_bracket(const std::string& text);

std::string to_dot_bracket(const SecondaryStructure& s);

// Shortest path from vertex 1 to vertex n, where backbone edges (i, i+1)
// and arcs each have length 1. Returns 0 for n = 1.
int bfs_distance(const SecondaryStructure& s);

// All maximal stacks, ordered by outer arc.
std::vector<StackRun> stack_runs(const SecondaryStructure& s);

// Minimum maximal-stack length; nullopt when there are no arcs.
std::optional<int> min_stack_length(const SecondaryStructure& s);

// True iff s has no arcs or every maximal stack has length >= r.
bool is_r_canonical(const SecondaryStructure& s, int r);

// Number of unpaired vertices.
int isolated_count(const SecondaryStructure& s);

}  // namespace helixspan
