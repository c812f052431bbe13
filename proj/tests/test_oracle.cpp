#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "helixspan/oracle.hpp"
#include "helixspan/series.hpp"
#include "helixspan/tableaux.hpp"

using namespace helixspan;

TEST_SUITE("oracle") {

TEST_CASE("enumeration of length 3") {
  const auto all = enumerate_dot_brackets(3, 1);
  CHECK(all == std::vector<std::string>{"(.)", "..."});
}

TEST_CASE("enumeration counts match the counting series") {
  CHECK(enumerate_dot_brackets(6, 1).size() == 17);
  for (int r : {1, 2, 3}) {
    const auto counts = integer_coeffs(canonical_series(r, 12));
    for (int n = 1; n <= 12; ++n) {
      CAPTURE(r);
      CAPTURE(n);
      CHECK(Int(enumerate_dot_brackets(n, r).size()) == counts[n]);
    }
  }
}

TEST_CASE("enumeration is lexicographic and duplicate-free") {
  for (int n : {5, 8}) {
    for (int r : {1, 2}) {
      auto all = enumerate_dot_brackets(n, r);
      CHECK(std::is_sorted(all.begin(), all.end()));
      CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
      // '(' sorts before '.', so structures with early arcs come first and
      // the arcless structure is last.
      CHECK(all.back() == std::string(static_cast<size_t>(n), '.'));
    }
  }
}

TEST_CASE("enumeration respects the stack filter") {
  const auto all = enumerate_dot_brackets(5, 2);
  CHECK(all == std::vector<std::string>{"((.))", "....."});
  for (int n = 1; n <= 10; ++n) {
    for (const auto& db : enumerate_dot_brackets(n, 3)) {
      CHECK(is_r_canonical(parse_dot_bracket(db), 3));
    }
  }
}

TEST_CASE("enumeration is deterministic") {
  CHECK(enumerate_dot_brackets(8, 1) == enumerate_dot_brackets(8, 1));
}

TEST_CASE("visitor form sees every structure once") {
  std::vector<std::string> seen;
  enumerate(4, 1, [&](const SecondaryStructure& s) {
    seen.push_back(to_dot_bracket(s));
  });
  CHECK(seen == enumerate_dot_brackets(4, 1));
}

TEST_CASE("histograms") {
  const auto h3 = histogram(3, 1);
  CHECK(h3.n == 3);
  CHECK(h3.r == 1);
  CHECK(h3.counts == std::map<int, Int>{{1, 1}, {2, 1}});
  CHECK(h3.total() == 2);

  CHECK(histogram(2, 1).counts == std::map<int, Int>{{1, 1}});
  CHECK(histogram(1, 1).counts == std::map<int, Int>{{0, 1}});
  CHECK(histogram(5, 2).counts == std::map<int, Int>{{1, 1}, {4, 1}});
}

TEST_CASE("histogram equals the analytic table row") {
  const int n_max = 12;
  for (int r : {1, 2, 3}) {
    const auto table = distance_table(r, n_max);
    for (int n = 1; n <= n_max; ++n) {
      const auto h = histogram(n, r);
      for (int d = 0; d < n; ++d) {
        const Int expected = table.w(n, d);
        const auto it = h.counts.find(d);
        const Int counted = it == h.counts.end() ? Int(0) : it->second;
        CAPTURE(r);
        CAPTURE(n);
        CAPTURE(d);
        CHECK(counted == expected);
      }
      CHECK(h.total() == table.row_total(n));
    }
  }
}

TEST_CASE("histogram distances agree with the tableau route") {
  enumerate(10, 1, [&](const SecondaryStructure& s) {
    CHECK(bfs_distance(s) == tableau_distance(beta(s)));
  });
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(enumerate_dot_brackets(kDefaultEnumerationCap + 1, 1), Error);
  CHECK_THROWS_WITH_AS(enumerate_dot_brackets(23, 1),
                       doctest::Contains("SizeLimitExceeded"), Error);
  CHECK_THROWS_AS(enumerate_dot_brackets(5, 1, /*cap=*/4), Error);
  CHECK_NOTHROW(enumerate_dot_brackets(5, 1, /*cap=*/5));
  CHECK_THROWS_AS(histogram(23, 1), Error);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(enumerate_dot_brackets(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_dot_brackets(-2, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_dot_brackets(5, 0), std::invalid_argument);
}

}  // TEST_SUITE
