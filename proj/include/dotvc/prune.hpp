#pragma once

// Degree regularization of a dot-product graph.
//
// Upper pass keeps E' = {u : deg_E(u) <= 11|E|/(5q)}, which has at least
// |E|/2 points whenever the edge count is within |E|^2/(10q) of |E|^2/q.
// Lower pass keeps E_0 = {u : deg_E(u) >= |E|/(5q)}, which has at least
// |E|/6 points under the same condition and a 22|E|/(5q) maximum degree.
// Degrees are always measured in the set being filtered; both guarantees are
// reported, never enforced.

#include <cstdint>
#include <string>
#include <vector>

#include "dotvc/dotgraph.hpp"

namespace dotvc {

enum class PruneDirection { Upper, Lower, Both };

std::string_view to_string(PruneDirection d);

struct PruneStage {
  PruneDirection direction;
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  Rational threshold;           // degree bound the stage compares against
  bool size_guarantee = false;  // |out| >= |in|/2 (upper) or >= |in|/6 (lower)
};

struct PruneReport {
  PruneDirection direction = PruneDirection::Upper;
  std::size_t input_size = 0;
  std::size_t output_size = 0;
  Rational threshold;  // threshold of the last stage
  // Indices into the input set, increasing.
  std::vector<std::size_t> kept_indices;
  std::vector<PruneStage> stages;

  // Degrees remeasured inside the kept set.
  std::uint64_t kept_max_degree = 0;
  std::uint64_t kept_min_degree = 0;
  // Degree bounds remeasured inside the kept set: deg <= 22|kept|/(5q) for
  // Upper, deg >= |kept|/(5q) for Lower, both for Both. Vacuous when empty.
  bool kept_within_bounds = false;
  bool size_guarantee = false;

  std::string summary() const;
};

// Rational thresholds 11n/(5q), n/(5q) and 22n/(5q).
Rational upper_threshold(std::size_t n, std::uint32_t q);
Rational lower_threshold(std::size_t n, std::uint32_t q);
Rational upper_conclusion_bound(std::size_t n, std::uint32_t q);

PruneReport prune_upper(const DotGraph& g);
PruneReport prune_lower(const DotGraph& g);
// One upper pass, then one lower pass on the graph rebuilt over E'.
PruneReport prune_both(const DotGraph& g);

// The kept points as a graph with the same t.
DotGraph kept_graph(const DotGraph& g, const PruneReport& r);

}  // namespace dotvc
