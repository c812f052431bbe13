#include "helixspan/diagram.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace helixspan {

SecondaryStructure::SecondaryStructure(int n, std::vector<std::pair<int, int>> arcs)
    : n_(n), arcs_(std::move(arcs)) {
  if (n_ < 1) throw std::invalid_argument("structure length must be >= 1");
  std::sort(arcs_.begin(), arcs_.end());
  std::vector<char> used(static_cast<size_t>(n_) + 1, 0);
  for (const auto& [i, j] : arcs_) {
    if (i < 1 || j > n_ || i >= j)
      throw std::invalid_argument("arc endpoints out of range");
    if (j - i < 2) throw std::invalid_argument("1-arcs are forbidden");
    if (used[i] || used[j])
      throw std::invalid_argument("arcs must form a partial matching");
    used[i] = used[j] = 1;
  }
  // Noncrossing: with arcs sorted by left endpoint, a crossing is a pair
  // (i,j), (k,l) with i < k < j < l. Check each arc against a stack of
  // currently open spans.
  std::vector<std::pair<int, int>> open;
  for (const auto& arc : arcs_) {
    while (!open.empty() && open.back().second < arc.first) open.pop_back();
    if (!open.empty() && open.back().second < arc.second)
      throw std::invalid_argument("arcs must be noncrossing");
    open.push_back(arc);
  }
}

int SecondaryStructure::partner(int v) const {
  for (const auto& [i, j] : arcs_) {
    if (i == v) return j;
    if (j == v) return i;
  }
  return 0;
}

namespace {

std::string trimmed(const std::string& text) {
  size_t b = text.find_first_not_of(" \t\r\n\f\v");
  if (b == std::string::npos) return "";
  size_t e = text.find_last_not_of(" \t\r\n\f\v");
  return text.substr(b, e - b + 1);
}

}  // namespace

SecondaryStructure parse_dot_bracket(const std::string& text) {
  const std::string body = trimmed(text);
  if (body.empty()) throw Error(ErrorCode::EmptyInput, "no structure characters");

  std::vector<std::pair<int, int>> arcs;
  std::vector<int> open;
  for (size_t k = 0; k < body.size(); ++k) {
    const int pos = static_cast<int>(k) + 1;
    switch (body[k]) {
      case '(':
        open.push_back(pos);
        break;
      case ')': {
        if (open.empty())
          throw Error(ErrorCode::UnbalancedBrackets,
                      "unmatched ')' at position " + std::to_string(pos));
        const int i = open.back();
        open.pop_back();
        if (pos - i < 2)
          throw Error(ErrorCode::OneArc,
                      "\"()\" at position " + std::to_string(i));
        arcs.emplace_back(i, pos);
        break;
      }
      case '.':
        break;
      default:
        throw Error(ErrorCode::InvalidCharacter,
                    std::string("'") + body[k] + "' at position " + std::to_string(pos));
    }
  }
  if (!open.empty())
    throw Error(ErrorCode::UnbalancedBrackets,
                "unmatched '(' at position " + std::to_string(open.back()));
  return SecondaryStructure(static_cast<int>(body.size()), std::move(arcs));
}

std::string to_dot_bracket(const SecondaryStructure& s) {
  std::string out(static_cast<size_t>(s.n()), '.');
  for (const auto& [i, j] : s.arcs()) {
    out[i - 1] = '(';
    out[j - 1] = ')';
  }
  return out;
}

int bfs_distance(const SecondaryStructure& s) {
  const int n = s.n();
  if (n == 1) return 0;
  std::vector<int> partner(static_cast<size_t>(n) + 1, 0);
  for (const auto& [i, j] : s.arcs()) {
    partner[i] = j;
    partner[j] = i;
  }
  std::vector<int> dist(static_cast<size_t>(n) + 1, -1);
  std::deque<int> queue{1};
  dist[1] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v == n) return dist[v];
    const int nbrs[3] = {v - 1, v + 1, partner[v]};
    for (int w : nbrs) {
      if (w >= 1 && w <= n && dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist[n];  // unreachable: the backbone is connected
}

std::vector<StackRun> stack_runs(const SecondaryStructure& s) {
  const int n = s.n();
  std::vector<int> partner(static_cast<size_t>(n) + 2, 0);
  for (const auto& [i, j] : s.arcs()) {
    partner[i] = j;
    partner[j] = i;
  }
  std::vector<StackRun> runs;
  for (const auto& [i, j] : s.arcs()) {
    // (i,j) starts a maximal run unless (i-1, j+1) is also an arc.
    if (i > 1 && j < n && partner[i - 1] == j + 1) continue;
    int len = 1;
    while (partner[i + len] == j - len && j - len > i + len) ++len;
    runs.push_back(StackRun{{i, j}, len});
  }
  return runs;
}

std::optional<int> min_stack_length(const SecondaryStructure& s) {
  if (s.arcs().empty()) return std::nullopt;
  int best = 0;
  for (const StackRun& run : stack_runs(s))
    if (best == 0 || run.length < best) best = run.length;
  return best;
}

bool is_r_canonical(const SecondaryStructure& s, int r) {
  const auto m = min_stack_length(s);
  return !m.has_value() || *m >= r;
}

int isolated_count(const SecondaryStructure& s) {
  return s.n() - 2 * static_cast<int>(s.arcs().size());
}

}  // namespace helixspan
