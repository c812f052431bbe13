#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "helixspan/diagram.hpp"

namespace helixspan {

inline constexpr int kDefaultEnumerationCap = 22;

struct Histogram {
  int n = 0;
  int r = 1;
  std::map<int, Int> counts;  // distance -> number of structures

  Int total() const;

  bool operator==(const Histogram& other) const = default;
};

// Visit every secondary structure of length n whose stacks all have length
// >= r (arcless included), exactly once, in lexicographic dot-bracket order
// ('(' < ')' < '.'). Throws SizeLimitExceeded when n > cap.
void enumerate(int n, int r,
               const std::function<void(const SecondaryStructure&)>& visit,
               int cap = kDefaultEnumerationCap);

// Convenience form returning the dot-bracket strings in enumeration order.
std::vector<std::string> enumerate_dot_brackets(int n, int r,
                                                int cap = kDefaultEnumerationCap);

// counts[d] = number of enumerated structures at BFS distance d.
Histogram histogram(int n, int r, int cap = kDefaultEnumerationCap);

}  // namespace helixspan
