#include "dotvc/prune.hpp"

#include <algorithm>
#include <sstream>

namespace dotvc {

namespace {

// deg <= 11 n / (5q)
bool below_upper(std::uint64_t deg, std::size_t n, std::uint32_t q) {
  return BigInt(5) * q * deg <= BigInt(11) * n;
}

// deg >= n / (5q)
bool above_lower(std::uint64_t deg, std::size_t n, std::uint32_t q) {
  return BigInt(5) * q * deg >= BigInt(n);
}

void fill_kept_degrees(const DotGraph& g, PruneReport& r) {
  const DotGraph kept = kept_graph(g, r);
  const auto& degs = kept.degrees();
  const std::size_t n = kept.size();
  const std::uint32_t q = g.ctx().q();
  r.kept_max_degree = degs.empty() ? 0 : *std::max_element(degs.begin(), degs.end());
  r.kept_min_degree = degs.empty() ? 0 : *std::min_element(degs.begin(), degs.end());
  const bool check_upper = r.direction != PruneDirection::Lower;
  const bool check_lower = r.direction != PruneDirection::Upper;
  r.kept_within_bounds = std::all_of(degs.begin(), degs.end(), [&](std::uint64_t d) {
    if (check_upper && BigInt(5) * q * d > BigInt(22) * n) return false;
    if (check_lower && !above_lower(d, n, q)) return false;
    return true;
  });
}

PruneStage run_stage(const DotGraph& g, PruneDirection dir, std::vector<std::size_t>& kept) {
  const std::size_t n = g.size();
  const std::uint32_t q = g.ctx().q();
  kept.clear();
  for (std::size_t u = 0; u < n; ++u) {
    const bool keep = dir == PruneDirection::Upper ? below_upper(g.degree(u), n, q)
                                                   : above_lower(g.degree(u), n, q);
    if (keep) kept.push_back(u);
  }
  PruneStage s{dir, n, kept.size(), {}, false};
  if (dir == PruneDirection::Upper) {
    s.threshold = upper_threshold(n, q);
    s.size_guarantee = 2 * kept.size() >= n;
  } else {
    s.threshold = lower_threshold(n, q);
    s.size_guarantee = 6 * kept.size() >= n;
  }
  return s;
}

PruneReport single(const DotGraph& g, PruneDirection dir) {
  PruneReport r;
  r.direction = dir;
  r.input_size = g.size();
  const PruneStage s = run_stage(g, dir, r.kept_indices);
  r.output_size = s.output_size;
  r.threshold = s.threshold;
  r.size_guarantee = s.size_guarantee;
  r.stages.push_back(s);
  fill_kept_degrees(g, r);
  return r;
}

}  // namespace

std::string_view to_string(PruneDirection d) {
  switch (d) {
    case PruneDirection::Upper: return "upper";
    case PruneDirection::Lower: return "lower";
    case PruneDirection::Both: return "both";
  }
  return "?";
}

Rational upper_threshold(std::size_t n, std::uint32_t q) {
  return Rational(BigInt(11) * n, BigInt(5) * q);
}

Rational lower_threshold(std::size_t n, std::uint32_t q) {
  return Rational(BigInt(n), BigInt(5) * q);
}

Rational upper_conclusion_bound(std::size_t n, std::uint32_t q) {
  return Rational(BigInt(22) * n, BigInt(5) * q);
}

PruneReport prune_upper(const DotGraph& g) { return single(g, PruneDirection::Upper); }

PruneReport prune_lower(const DotGraph& g) { return single(g, PruneDirection::Lower); }

PruneReport prune_both(const DotGraph& g) {
  PruneReport r;
  r.direction = PruneDirection::Both;
  r.input_size = g.size();

  std::vector<std::size_t> upper_kept;
  const PruneStage up = run_stage(g, PruneDirection::Upper, upper_kept);
  const DotGraph mid(g.set().subset(upper_kept), g.t());
  std::vector<std::size_t> lower_kept;
  const PruneStage low = run_stage(mid, PruneDirection::Lower, lower_kept);

  r.kept_indices.reserve(lower_kept.size());
  for (auto i : lower_kept) r.kept_indices.push_back(upper_kept[i]);
  r.output_size = r.kept_indices.size();
  r.threshold = low.threshold;
  r.size_guarantee = up.size_guarantee && low.size_guarantee;
  r.stages = {up, low};
  fill_kept_degrees(g, r);
  return r;
}

DotGraph kept_graph(const DotGraph& g, const PruneReport& r) {
  return DotGraph(g.set().subset(r.kept_indices), g.t());
}

std::string PruneReport::summary() const {
  std::ostringstream os;
  os << "direction=" << to_string(direction) << '\n'
     << "input_size=" << input_size << '\n'
     << "output_size=" << output_size << '\n'
     << "threshold=" << threshold << '\n';
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const auto& s = stages[i];
    os << "stage" << i << '=' << to_string(s.direction) << ' ' << s.input_size << "->"
       << s.output_size << " threshold=" << s.threshold
       << " size_guarantee=" << (s.size_guarantee ? "true" : "false") << '\n';
  }
  os << "size_guarantee=" << (size_guarantee ? "true" : "false") << '\n'
     << "kept_min_degree=" << kept_min_degree << '\n'
     << "kept_max_degree=" << kept_max_degree << '\n'
     << "kept_within_bounds=" << (kept_within_bounds ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace dotvc
