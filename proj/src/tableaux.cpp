#include "helixspan/tableaux.hpp"

#include <sstream>
#include <stdexcept>

namespace helixspan {

Tableau::Tableau(std::vector<int> shapes) : shapes_(std::move(shapes)) {
  if (shapes_.size() < 2)
    throw std::invalid_argument("a tableau needs at least one step");
  if (shapes_.front() != 0 || shapes_.back() != 0)
    throw std::invalid_argument("tableau must start and end with the empty shape");
  for (size_t i = 0; i < shapes_.size(); ++i) {
    if (shapes_[i] < 0) throw std::invalid_argument("shape sizes must be nonnegative");
    if (i == 0) continue;
    const int d = shapes_[i] - shapes_[i - 1];
    if (d < -1 || d > 1)
      throw std::invalid_argument("shape sizes may change by at most one square");
    if (i >= 2 && shapes_[i - 1] - shapes_[i - 2] == 1 && d == -1)
      throw std::invalid_argument("add-then-remove step pairs are forbidden");
  }
}

std::string Tableau::to_string() const {
  std::string out;
  for (size_t i = 0; i < shapes_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(shapes_[i]);
  }
  return out;
}

Tableau Tableau::from_string(const std::string& text) {
  std::vector<int> shapes;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) shapes.push_back(std::stoi(item));
  return Tableau(std::move(shapes));
}

Tableau beta(const SecondaryStructure& s) {
  const int n = s.n();
  std::vector<int> partner(static_cast<size_t>(n) + 1, 0);
  for (const auto& [i, j] : s.arcs()) {
    partner[i] = j;
    partner[j] = i;
  }
  std::vector<int> shapes;
  shapes.reserve(static_cast<size_t>(n) + 1);
  shapes.push_back(0);
  for (int v = n; v >= 1; --v) {
    int size = shapes.back();
    if (partner[v] != 0) size += (partner[v] < v) ? +1 : -1;
    shapes.push_back(size);
  }
  return Tableau(std::move(shapes));
}

SecondaryStructure beta_inv(const Tableau& t) {
  const int n = t.n();
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> pending;  // endpoints whose start point is still ahead
  for (int i = 1; i <= n; ++i) {
    const int v = n - i + 1;  // tableau position i holds vertex n - i + 1
    switch (t.step(i)) {
      case +1:
        pending.push_back(v);
        break;
      case -1:
        arcs.emplace_back(v, pending.back());
        pending.pop_back();
        break;
      default:
        break;
    }
  }
  return SecondaryStructure(n, std::move(arcs));
}

std::vector<IndexInterval> irreducible_blocks(const Tableau& t) {
  std::vector<IndexInterval> blocks;
  const auto& shapes = t.shapes();
  int lo = 0;
  for (int i = 1; i < static_cast<int>(shapes.size()); ++i) {
    if (shapes[i] == 0) {
      if (i > lo + 1) blocks.push_back(IndexInterval{lo, i});
      lo = i;
    }
  }
  return blocks;
}

EmptyShapeCensus census(const Tableau& t) {
  const auto blocks = irreducible_blocks(t);
  EmptyShapeCensus result;
  // beta runs right to left, so the leftmost tableau block is the
  // structure's rightmost irreducible: that one's terminal empty is the
  // hash; terminal empties of the others are starred.
  result.count_hash = blocks.empty() ? 0 : 1;
  result.count_star = blocks.empty() ? 0 : static_cast<long long>(blocks.size()) - 1;
  long long zeros = 0;
  for (int i = 1; i <= t.n(); ++i)
    if (t.shapes()[i] == 0) ++zeros;
  result.count_plain = zeros - result.count_star - result.count_hash;
  return result;
}

long long tableau_distance(const Tableau& t) {
  if (irreducible_blocks(t).empty()) return t.n() - 1;
  const EmptyShapeCensus c = census(t);
  return 2 * c.count_star + c.count_hash + c.count_plain;
}

bool is_irreducible(const SecondaryStructure& s) {
  if (s.n() < 3) return false;
  const auto blocks = irreducible_blocks(beta(s));
  return blocks.size() == 1 && blocks[0].lo == 0 && blocks[0].hi == s.n();
}

SecondaryStructure gamma(const SecondaryStructure& s) {
  if (!is_irreducible(s))
    throw Error(ErrorCode::NotIrreducible,
                "gamma needs a structure whose tableau is a single spanning block");
  // The spanning block means (1, n) is an arc; peeling the first and last
  // tableau steps plus one square per interior shape removes exactly it.
  std::vector<std::pair<int, int>> arcs;
  for (const auto& [i, j] : s.arcs())
    if (!(i == 1 && j == s.n())) arcs.emplace_back(i - 1, j - 1);
  return SecondaryStructure(s.n() - 2, std::move(arcs));
}

SecondaryStructure gamma_star(const SecondaryStructure& s) {
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(s.arcs().size() + 1);
  arcs.emplace_back(1, s.n() + 2);
  for (const auto& [i, j] : s.arcs()) arcs.emplace_back(i + 1, j + 1);
  return SecondaryStructure(s.n() + 2, std::move(arcs));
}

}  // namespace helixspan
