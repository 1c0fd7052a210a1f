// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: acceptance [path-to-dotvc-cli]
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "dotvc/dotgraph.hpp"
#include "dotvc/error.hpp"
#include "dotvc/experiments.hpp"
#include "dotvc/geometry.hpp"
#include "dotvc/prune.hpp"
#include "dotvc/shatter.hpp"

using namespace dotvc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, std::to_string(failures_) + " failure(s): " + notes_};
  }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
};

std::shared_ptr<const FieldCtx> field(std::uint32_t p, std::uint32_t k = 1) {
  return std::make_shared<const FieldCtx>(FieldCtx::create(p, k));
}

DotGraph full_graph(std::uint32_t p, Elem t = 1) { return DotGraph(PointSet::full_space(field(p), 3), t); }

// Instances shared by criteria 2, 7 and 8.
std::vector<DotGraph> oracle_instances() {
  std::vector<DotGraph> out;
  out.push_back(full_graph(3, 1));
  out.push_back(full_graph(3, 2));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::uint32_t p = seed % 2 ? 5 : 3;
    const std::uint64_t size = p == 3 ? 8 + (seed * 7) % 20 : 8 + (seed * 7) % 33;  // at most 27 or 40
    out.emplace_back(random_subset(field(p), 3, size, seed), static_cast<Elem>(1 + seed % (p - 1)));
  }
  return out;
}

std::string label(const DotGraph& g) {
  return "q=" + std::to_string(g.ctx().q()) + " |E|=" + std::to_string(g.size()) + " t=" + std::to_string(g.t());
}

Outcome edge_identity() {
  Check c;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const auto g = full_graph(q);
    const BigInt e = edge_count(g);
    const BigInt q2 = BigInt(q) * q;
    c.expect(e == (BigInt(q) * q * q - 1) * q2, "edge count at q=" + std::to_string(q));
    const BigInt q5 = q2 * q2 * q;
    const BigInt dev = abs(e - q5);
    c.expect(dev == q2 && dev <= q2 * q2, "deviation at q=" + std::to_string(q));
    c.expect(count_report(g).edge_band.contains(e), "band at q=" + std::to_string(q));
  }
  return c.outcome("q in {3,5,7}: edges = (q^3-1) q^2, |R| = q^2");
}

Outcome oracle_equivalence(const std::vector<DotGraph>& instances) {
  Check c;
  for (const auto& g : instances) {
    const auto& s = g.set();
    const Elem t = g.t();
    c.expect(count_p5(g) == naive::count_p5(s, t), "P5 " + label(g));
    c.expect(count_c4(g) == naive::count_c4(s, t), "C4 " + label(g));
    c.expect(count_a(g) == naive::count_a(s, t), "A " + label(g));
    c.expect(count_a_degenerate(g) == naive::count_a_degenerate(s, t), "degenerate " + label(g));
    const auto fast = triple_count_map(g);
    const auto slow = naive::triple_count_map(s, t);
    c.expect(fast.sum == slow.sum, "sum f " + label(g));
    c.expect(fast.sum_squares == slow.sum_squares, "sum f^2 " + label(g));
    c.expect(fast.sum_squares == naive::folded_pair_count(s, t), "folded pairs " + label(g));
  }
  return c.outcome(std::to_string(instances.size()) + " instances, all counts equal");
}

Outcome plane_cardinality() {
  Check c;
  std::uint64_t planes = 0;
  for (auto [p, k] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    const auto ctx = field(p, k);
    const auto space = PointSet::full_space(ctx, 3);
    const std::uint64_t q = ctx->q();
    for (const auto& y : space.points()) {
      if (y.is_zero()) continue;
      for (Elem t = 1; t < q; ++t) {
        ++planes;
        c.expect(plane_points(y, t, *ctx).size() == q * q, "plane " + to_string(y));
      }
    }
  }
  return c.outcome(std::to_string(planes) + " planes at q in {3,4,5}, each of size q^2");
}

Outcome no_four_shattered() {
  Check c;
  const auto g = full_graph(3);
  std::uint64_t subsets = 0, shattered = 0;
  const std::size_t n = g.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t d = b + 1; d < n; ++d)
        for (std::size_t e = d + 1; e < n; ++e) {
          const std::array<std::size_t, 4> s{a, b, d, e};
          ++subsets;
          shattered += shatters(g, s);
        }
  c.expect(subsets == 17550, "enumerated " + std::to_string(subsets) + " subsets");
  c.expect(shattered == 0, std::to_string(shattered) + " shattered 4-subsets");
  const auto vc = vc_dimension(g, 4);
  c.expect(vc.dimension == 3 && !vc.truncated, "vc_dimension at q=3");
  return c.outcome("0 of 17550 4-subsets of F_3^3 shattered; vc_dimension = 3");
}

Outcome vc3_witness_full_space() {
  Check c;
  for (std::uint32_t q : {5u, 7u}) {
    const auto g = full_graph(q);
    const std::string tag = "q=" + std::to_string(q);
    const auto r = find_vc3_witness(g, {Strategy::Exhaustive, 0, 0});
    c.expect(r.witness.has_value(), "no witness at " + tag);
    if (!r.witness) continue;
    c.expect(witness_verify(*r.witness, g).ok, "verification at " + tag);
    const auto& s = g.set();
    const std::array<std::size_t, 3> xs{*s.index_of(r.witness->x1), *s.index_of(r.witness->x2),
                                        *s.index_of(r.witness->x3)};
    c.expect(shatters(g, xs), "shatters at " + tag);
    const auto vc = vc_dimension(g, 4);
    c.expect(vc.dimension == 3 && !vc.truncated, "vc_dimension at " + tag);
  }
  return c.outcome("q in {5,7}: witness verified, {x1,x2,x3} shattered, vc_dimension = 3");
}

Outcome pruning_exactness() {
  Check c;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::uint32_t p = std::array{3u, 5u, 7u}[seed % 3];
    const std::uint64_t max = std::uint64_t{p} * p * p;
    const auto s = random_subset(field(p), 3, 1 + (seed * 37) % max, seed);
    const Elem t = static_cast<Elem>(1 + seed % (p - 1));
    const DotGraph g(s, t);
    const auto up = prune_upper(g), low = prune_lower(g);
    const std::size_t n = s.size();
    std::vector<std::size_t> want_up, want_low;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t deg = 0;
      for (std::size_t j = 0; j < n; ++j) deg += dot(s[i], s[j], s.ctx()) == t;
      const Rational d(deg);
      if (d <= upper_threshold(n, p)) want_up.push_back(i);
      if (d >= lower_threshold(n, p)) want_low.push_back(i);
    }
    c.expect(up.kept_indices == want_up, "upper seed " + std::to_string(seed));
    c.expect(low.kept_indices == want_low, "lower seed " + std::to_string(seed));
  }
  return c.outcome("50 instances, E' and E_0 membership exact");
}

Outcome degeneracy_bound(const std::vector<DotGraph>& instances) {
  Check c;
  c.expect(!instances.empty(), "no oracle instances");
  std::vector<DotGraph> extra;
  for (std::uint32_t q : {3u, 5u, 7u}) extra.push_back(full_graph(q));
  auto run = [&](const DotGraph& g) {
    const BigInt n = g.size(), q = g.ctx().q();
    c.expect(count_a_degenerate(g) <= 5 * n * n * q * q * q, label(g));
  };
  for (const auto& g : instances) run(g);
  for (const auto& g : extra) run(g);
  return c.outcome(std::to_string(instances.size() + extra.size()) + " instances within 5|E|^2 q^3");
}

Outcome cauchy_schwarz(const std::vector<DotGraph>& instances) {
  Check c;
  c.expect(!instances.empty(), "no oracle instances");
  for (const auto& g : instances) {
    const auto m = triple_count_map(g);
    c.expect(m.sum * m.sum <= m.sum_squares * m.support(), label(g));
    c.expect(m.cauchy_schwarz_holds(), "reported flag " + label(g));
  }
  return c.outcome(std::to_string(instances.size()) + " instances satisfy (sum f)^2 <= sum f^2 * support");
}

Outcome loss_exactness() {
  Check c;
  const auto ctx = field(3);
  const auto space = PointSet::full_space(ctx, 3);
  const std::uint64_t q = 3;
  std::uint64_t pairs = 0;
  for (const auto& y : space.points()) {
    if (y.is_zero()) continue;
    for (const auto& ys : space.points()) {
      if (ys.is_zero()) continue;
      ++pairs;
      std::uint64_t scan = 0;
      for (const auto& x : space.points()) scan += (dot(x, y, *ctx) == 1) != (dot(x, ys, *ctx) == 1);
      const auto r = loss(y, ys, 1, *ctx);
      c.expect(r.mismatches == scan && r.total == 27, "scan " + to_string(y) + " / " + to_string(ys));
      c.expect(r.mismatches == 2 * q * q - 2 * plane_intersection_size(y, ys, 1, *ctx),
               "closed form " + to_string(y) + " / " + to_string(ys));
    }
  }
  return c.outcome(std::to_string(pairs) + " pairs at q=3 match scan and 2q^2 - 2|intersection|");
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

std::vector<std::string> csv_without_elapsed(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(line.substr(0, line.rfind(',')));
  return rows;
}

Outcome determinism(const std::string& cli) {
  Check c;
  const auto dir = std::filesystem::temp_directory_path() / "dotvc_acceptance";
  std::filesystem::create_directories(dir);
  const auto config = dir / "sweep.cfg";
  {
    std::ofstream out(config);
    out << "q = 5, 7, 2^2\nalpha = 2.0, 2.5, 3.0\ntrials = 2\nseed = 2024\nbudget = 200000\n";
  }

  if (cli.empty()) {
    SweepConfig cfg = load_sweep_config(config);
    cfg.output_path = dir / "a.csv";
    run_sweep(cfg);
    cfg.workers = 1;
    cfg.output_path = dir / "b.csv";
    run_sweep(cfg);
    const SearchOptions opts{Strategy::SeededRandom, 77, 100000};
    const auto g = full_graph(7);
    const auto w1 = find_vc3_witness(g, opts), w2 = find_vc3_witness(g, opts);
    c.expect(w1.witness && w2.witness && named_points(*w1.witness) == named_points(*w2.witness),
             "random witness reproducibility");
  } else {
    int s1 = 0, s2 = 0;
    run_capture(cli + " sweep --config " + config.string() + " --out " + (dir / "a.csv").string(), s1);
    run_capture(cli + " sweep --config " + config.string() + " --workers 1 --out " + (dir / "b.csv").string(),
                s2);
    c.expect(s1 == 0 && s2 == 0, "sweep exit status");
    const std::string witness = cli + " witness --p 7 --full --vc3 --strategy random --seed 77";
    int w1s = 0, w2s = 0;
    const auto w1 = run_capture(witness, w1s);
    const auto w2 = run_capture(witness, w2s);
    c.expect(w1s == 0 && w2s == 0 && !w1.empty() && w1.rfind("none", 0) != 0, "witness run");
    c.expect(w1 == w2, "random witness output differs between runs");
  }
  const auto a = csv_without_elapsed(dir / "a.csv"), b = csv_without_elapsed(dir / "b.csv");
  c.expect(a.size() == 1 + 3 * 3 * 2, "csv row count " + std::to_string(a.size()));
  c.expect(a == b, "CSV differs outside elapsed_ms");
  std::filesystem::remove_all(dir);
  return c.outcome("sweep CSV identical across runs (modulo elapsed_ms); seeded witness reproducible");
}

Outcome threshold_probe() {
  Check c;
  SweepConfig cfg;
  cfg.fields = {{7, 1}, {11, 1}};
  cfg.alphas = {"2.0", "2.5", "2.75", "3.0"};
  cfg.trials = 10;
  cfg.seed = 1;
  const auto records = run_sweep(cfg);
  std::ostringstream rates;
  for (std::size_t f = 0; f < cfg.fields.size(); ++f) {
    int prev = -1;
    rates << (f ? "; " : "") << "q=" << cfg.fields[f].p << ":";
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a) {
      int found = 0;
      for (std::uint32_t t = 0; t < cfg.trials; ++t)
        found += records[(f * cfg.alphas.size() + a) * cfg.trials + t].vc3_found;
      rates << ' ' << found << "/10";
      c.expect(found >= prev, "rate drops at q=" + std::to_string(cfg.fields[f].p) + " alpha=" + cfg.alphas[a]);
      prev = found;
    }
  }
  return c.outcome("vc3 rate non-decreasing in alpha (" + rates.str() + ")");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  std::vector<DotGraph> instances;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"edge-count identity", edge_identity},
      {"oracle equivalence",
       [&] {
         instances = oracle_instances();
         return oracle_equivalence(instances);
       }},
      {"plane cardinality", plane_cardinality},
      {"VC upper bound at q=3", no_four_shattered},
      {"VC3 witness on full spaces", vc3_witness_full_space},
      {"pruning exactness", pruning_exactness},
      {"degeneracy bound", [&] { return degeneracy_bound(instances); }},
      {"Cauchy-Schwarz consistency", [&] { return cauchy_schwarz(instances); }},
      {"loss exactness", loss_exactness},
      {"determinism", [&] { return determinism(cli); }},
      {"threshold probe", threshold_probe},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.ok;
    std::printf("[%s] %2zu. %s: %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
