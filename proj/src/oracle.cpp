#include "helixspan/oracle.hpp"

#include <string>

namespace helixspan {

Int Histogram::total() const {
  Int t = 0;
  for (const auto& [d, c] : counts) t += c;
  return t;
}

namespace {

// Character-by-character generation in lexicographic dot-bracket order
// ('(' < ')' < '.', their ASCII order). State: current prefix, stack of
// open bracket positions. Pruning rules keep every branch completable:
//  - '(' needs room for its own closure at span >= 2 plus closures for
//    everything already open: remaining - 1 >= (depth + 1) + 1;
//  - ')' is illegal right after its matching '(' (that would be a 1-arc);
//  - each open bracket needs one position, so remaining >= depth always.
// An equivalent recursive decomposition (first vertex isolated or arced to
// a splitting position) gives the same language; this form emits sorted.
class Generator {
 public:
  Generator(int n, int r, const std::function<void(const SecondaryStructure&)>& visit)
      : n_(n), r_(r), visit_(visit), buffer_(static_cast<size_t>(n), '.') {}

  void run() { extend(0); }

 private:
  void extend(int pos) {
    if (pos == n_) {
      if (open_.empty()) emit();
      return;
    }
    const int remaining = n_ - pos;  // positions left including pos
    const int depth = static_cast<int>(open_.size());
    if (remaining - 1 >= depth + 2) {
      buffer_[pos] = '(';
      open_.push_back(pos);
      extend(pos + 1);
      open_.pop_back();
    }
    if (depth > 0 && open_.back() != pos - 1) {
      buffer_[pos] = ')';
      const int start = open_.back();
      open_.pop_back();
      arcs_.emplace_back(start + 1, pos + 1);
      extend(pos + 1);
      arcs_.pop_back();
      open_.push_back(start);
    }
    if (remaining - 1 >= depth) {
      buffer_[pos] = '.';
      extend(pos + 1);
    }
    buffer_[pos] = '.';
  }

  void emit() {
    SecondaryStructure s(n_, arcs_);
    if (r_ <= 1 || is_r_canonical(s, r_)) visit_(s);
  }

  int n_;
  int r_;
  const std::function<void(const SecondaryStructure&)>& visit_;
  std::string buffer_;
  std::vector<int> open_;
  std::vector<std::pair<int, int>> arcs_;
};

}  // namespace

void enumerate(int n, int r,
               const std::function<void(const SecondaryStructure&)>& visit,
               int cap) {
  if (n < 1) throw std::invalid_argument("length must be >= 1");
  if (r < 1) throw std::invalid_argument("minimum stack length must be >= 1");
  if (n > cap)
    throw Error(ErrorCode::SizeLimitExceeded,
                "n = " + std::to_string(n) + " exceeds the enumeration cap " +
                    std::to_string(cap));
  Generator(n, r, visit).run();
}

std::vector<std::string> enumerate_dot_brackets(int n, int r, int cap) {
  std::vector<std::string> out;
  enumerate(n, r, [&](const SecondaryStructure& s) { out.push_back(to_dot_bracket(s)); },
            cap);
  return out;
}

Histogram histogram(int n, int r, int cap) {
  Histogram h;
  h.n = n;
  h.r = r;
  enumerate(n, r, [&](const SecondaryStructure& s) { h.counts[bfs_distance(s)] += 1; },
            cap);
  return h;
}

}  // namespace helixspan
