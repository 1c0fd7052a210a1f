#include <doctest.h>

#include <algorithm>

#include "dotvc/experiments.hpp"
#include "dotvc/prune.hpp"
#include "helpers.hpp"

using namespace dotvc;
using testing::field;
using testing::full_graph;
using testing::graph_of;
using testing::pt;

namespace {

// Recomputes the keep rule from scratch with direct dot products.
std::vector<std::size_t> naive_keep(const PointSet& s, Elem t, bool upper) {
  const std::size_t n = s.size();
  const auto q = s.ctx().q();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t deg = 0;
    for (std::size_t j = 0; j < n; ++j) deg += dot(s[i], s[j], s.ctx()) == t;
    const bool keep = upper ? 5ull * q * deg <= 11ull * n : 5ull * q * deg >= n;
    if (keep) kept.push_back(i);
  }
  return kept;
}

}  // namespace

TEST_CASE("thresholds") {
  CHECK(upper_threshold(125, 5) == Rational(55));
  CHECK(lower_threshold(125, 5) == Rational(5));
  CHECK(upper_conclusion_bound(125, 5) == Rational(110));
  CHECK(upper_threshold(27, 3) == Rational(99, 5));
  CHECK(lower_threshold(27, 3) == Rational(9, 5));
}

TEST_CASE("full F_5^3") {
  const auto g = full_graph(5);
  const auto up = prune_upper(g);
  CHECK(up.output_size == 125);
  CHECK(up.size_guarantee);
  CHECK(up.kept_within_bounds);

  const auto low = prune_lower(g);
  CHECK(low.output_size == 124);  // only the zero vector has degree 0
  CHECK(std::find(low.kept_indices.begin(), low.kept_indices.end(), 0) == low.kept_indices.end());
  CHECK(low.kept_min_degree == 25);
  CHECK(low.kept_within_bounds);
}

TEST_CASE("full F_3^3") {
  const auto g = full_graph(3);
  CHECK(prune_upper(g).output_size == 27);
  const auto low = prune_lower(g);
  CHECK(low.output_size == 26);
  CHECK(low.threshold == Rational(9, 5));
  const auto both = prune_both(g);
  REQUIRE(both.stages.size() == 2);
  CHECK(both.stages[0].output_size == 27);
  CHECK(both.stages[1].output_size == 26);
  CHECK(both.output_size == 26);
}

TEST_CASE("zero vector alone") {
  const auto g = graph_of(5, {pt({0, 0, 0})});
  CHECK(prune_upper(g).output_size == 1);
  CHECK(prune_lower(g).output_size == 0);
}

TEST_CASE("keep rule matches a direct recount") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::uint32_t p = seed % 2 ? 7 : 5;
    const auto s = random_subset(field(p), 3, 10 + seed * 11, seed);
    const DotGraph g(s, 1 + seed % 3);
    CAPTURE(seed);
    CHECK(prune_upper(g).kept_indices == naive_keep(s, g.t(), true));
    CHECK(prune_lower(g).kept_indices == naive_keep(s, g.t(), false));
  }
}

TEST_CASE("prune_both composes the two passes") {
  const auto s = random_subset(field(7), 3, 100, 7);
  const DotGraph g(s, 1);
  const auto both = prune_both(g);

  const auto up = naive_keep(s, 1, true);
  const auto mid = s.subset(up);
  std::vector<std::size_t> expected;
  for (std::size_t i : naive_keep(mid, 1, false)) expected.push_back(up[i]);
  CHECK(both.kept_indices == expected);
  CHECK(std::is_sorted(both.kept_indices.begin(), both.kept_indices.end()));

  const auto again = prune_both(DotGraph(s, 1));
  CHECK(again.kept_indices == both.kept_indices);
  CHECK(again.summary() == both.summary());
}

TEST_CASE("upper pass on the full space is idempotent") {
  const auto g = full_graph(5);
  const auto r = prune_upper(g);
  const auto h = kept_graph(g, r);
  CHECK(prune_upper(h).output_size == h.size());
}

TEST_CASE("kept graph") {
  const auto g = full_graph(3);
  const auto r = prune_lower(g);
  const auto h = kept_graph(g, r);
  CHECK(h.size() == 26);
  CHECK(h.t() == g.t());
  for (std::size_t i = 0; i < h.size(); ++i) CHECK(h.set()[i] == g.set()[r.kept_indices[i]]);
}

TEST_CASE("summary text") {
  const auto s = prune_lower(full_graph(5)).summary();
  CHECK(s.find("size_guarantee=true") != std::string::npos);
  CHECK(s.find("kept_within_bounds=true") != std::string::npos);
}
