#pragma once

// Shattering for the hypothesis class {h_y : y in E}, h_y(x) = [x.y = t], on
// the domain E, plus explicit certificates that a 2- or 3-point set is
// shattered.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dotvc/dotgraph.hpp"

namespace dotvc {

// True iff every labeling of C is h_y restricted to C for some y in E.
// Throws DuplicateIndices, or ValueOutOfRange for an index outside E.
bool shatters(const DotGraph& g, std::span<const std::size_t> c);

inline constexpr std::uint64_t kDefaultVcBudget = 1'000'000'000;

struct VcResult {
  std::size_t dimension = 0;
  // dimension == max_check: the true dimension may be larger.
  bool truncated = false;
  // A shattered set of size `dimension`.
  std::vector<std::size_t> shattered;
};

// Largest n <= max_check such that some n-subset of E is shattered. Sizes with
// 2^n > |E| are skipped, since they need more than |E| patterns. Throws
// BudgetExceeded when C(|E|, n) exceeds `budget` for a size it must search.
VcResult vc_dimension(const DotGraph& g, std::size_t max_check,
                      std::uint64_t budget = kDefaultVcBudget);

// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// x1, x2 shattered: y* realizes (0,0), y1 (1,0), y2 (0,1), y12 (1,1).
struct WitnessVC2 {
  Point x1, x2, y12, y1, y2, ystar;
};

// x1, x2, x3 shattered: y_S is adjacent to exactly the x_i with i in S.
struct WitnessVC3 {
  Point x1, x2, x3, y1, y2, y3, y12, y13, y23, y123, ystar;
};

struct Verification {
  bool ok = true;
  std::vector<std::string> violations;
};

Verification witness_verify(const WitnessVC2& w, const DotGraph& g);
Verification witness_verify(const WitnessVC3& w, const DotGraph& g);

enum class Strategy { Exhaustive, SeededRandom };

struct SearchOptions {
  Strategy strategy = Strategy::Exhaustive;
  std::uint64_t seed = 0;
  // Cap on candidate tuples examined; 0 means unlimited.
  std::uint64_t budget = 1'000'000;
};

template <class W>
struct SearchResult {
  std::optional<W> witness;
  std::uint64_t candidates = 0;
  // The search stopped on the budget rather than exhausting its space.
  bool budget_exhausted = false;
};

// Paths y1 - x1 - y12 - x2 - y2 with x1.y2 != t and x2.y1 != t, then y*
// off both planes. Exhaustive order is lexicographic in (x1, x2).
SearchResult<WitnessVC2> find_vc2_witness(const DotGraph& g, SearchOptions opts = {});

// Pairs of A' members (y12, x2, y123, x1, y13) and (y23, x2, y123, x3, y13)
// sharing x2, y123 and y13, with x1 != x3, then y1, y2, y3, y* by row scans.
// Exhaustive order is lexicographic in (x2, y123, y13, x1, y12, x3, y23).
SearchResult<WitnessVC3> find_vc3_witness(const DotGraph& g, SearchOptions opts = {});

// Each witness member as (name, point), in declaration order.
std::vector<std::pair<std::string, Point>> named_points(const WitnessVC2& w);
std::vector<std::pair<std::string, Point>> named_points(const WitnessVC3& w);

struct PacParams {
  std::uint64_t n = 0;  // VC dimension
  double epsilon = 0.1;
  double delta = 0.1;
  double c1 = 1.0;
  double c2 = 1.0;
  // Base of the logarithm; the default is natural log.
  double log_base = std::exp(1.0);
};

struct PacBounds {
  double lower = 0;
  double upper = 0;
};

// c1 (n + log(1/delta)) / epsilon and c2 (n log(1/epsilon) + log(1/delta)) / epsilon,
// evaluated in double precision. Throws InvalidConfig unless
// 0 < epsilon, delta < 1, c1, c2 > 0 and log_base > 1.
PacBounds pac_sample_bounds(const PacParams& params);

}  // namespace dotvc
