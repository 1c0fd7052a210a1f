// Command-line front end: counts, pruning, VC dimension, witnesses, loss,
// sweeps and PAC bounds over dot-product graphs in F_q^d.

#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "dotvc/dotgraph.hpp"
#include "dotvc/error.hpp"
#include "dotvc/experiments.hpp"
#include "dotvc/prune.hpp"
#include "dotvc/shatter.hpp"

namespace {

using namespace dotvc;

constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;
constexpr int kExitIo = 3;

struct FieldArgs {
  std::uint32_t p = 0;
  std::uint32_t k = 1;
  std::uint32_t t = 1;
  std::string modulus;

  void add_to(CLI::App* app) {
    app->add_option("--p", p, "field characteristic")->required();
    app->add_option("--k", k, "extension degree")->capture_default_str();
    app->add_option("--t", t, "nonzero dot-product value (element code)")->capture_default_str();
    app->add_option("--modulus", modulus, "modulus coefficients c0,c1,...,ck (default: smallest irreducible)");
  }

  std::shared_ptr<const FieldCtx> field() const {
    std::optional<Poly> mod;
    if (!modulus.empty()) {
      Poly f;
      std::stringstream ss(modulus);
      std::string item;
      while (std::getline(ss, item, ',')) f.push_back(static_cast<std::uint32_t>(std::stoul(item)));
      mod = std::move(f);
    }
    return std::make_shared<const FieldCtx>(FieldCtx::create(p, k, mod));
  }
};

struct InputArgs : FieldArgs {
  std::size_t d = 3;
  bool full = false;
  std::string in;
  std::uint64_t random = 0;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app) {
    FieldArgs::add_to(app);
    app->add_option("--d", d, "dimension")->capture_default_str();
    auto* o_full = app->add_flag("--full", full, "E = all of F_q^d");
    auto* o_in = app->add_option("--in", in, "point file, one comma-separated point per line");
    auto* o_rand = app->add_option("--random", random, "E = random subset of this size");
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    o_full->excludes(o_in)->excludes(o_rand);
    o_in->excludes(o_rand);
  }

  DotGraph graph() const {
    auto ctx = field();
    const Elem te = ctx->checked(t);
    if (full) return DotGraph(PointSet::full_space(ctx, d), te);
    if (!in.empty()) return DotGraph(load_pointset(in, ctx, d), te);
    if (random > 0) return DotGraph(random_subset(ctx, d, random, seed), te);
    throw CLI::ValidationError("input", "one of --full, --in FILE, --random SIZE is required");
  }
};

void print_witness(const std::vector<std::pair<std::string, Point>>& pts) {
  for (const auto& [name, p] : pts) std::cout << name << ' ' << to_string(p) << '\n';
}

Strategy parse_strategy(const std::string& s) {
  if (s == "exhaustive") return Strategy::Exhaustive;
  if (s == "random") return Strategy::SeededRandom;
  throw CLI::ValidationError("--strategy", "expected exhaustive or random");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dot-product graphs over F_q^d: configuration counts, pruning and VC dimension"};
  app.require_subcommand(1);

  InputArgs count_in;
  bool count_naive = false, count_triples = false;
  auto* count = app.add_subcommand("count", "configuration counts with predicted bands");
  count_in.add_to(count);
  count->add_flag("--naive", count_naive, "use nested-loop enumeration");
  count->add_flag("--triples", count_triples, "also report sum f, sum f^2 and support of f(y,z,v)");

  InputArgs prune_in;
  bool p_upper = false, p_lower = false, p_both = false;
  std::string prune_out;
  auto* prune = app.add_subcommand("prune", "degree pruning");
  prune_in.add_to(prune);
  auto* o_up = prune->add_flag("--upper", p_upper, "keep deg <= 11|E|/(5q)");
  auto* o_lo = prune->add_flag("--lower", p_lower, "keep deg >= |E|/(5q)");
  auto* o_bo = prune->add_flag("--both", p_both, "upper pass then lower pass");
  o_up->excludes(o_lo)->excludes(o_bo);
  o_lo->excludes(o_bo);
  prune->add_option("--out", prune_out, "write kept points to FILE");

  InputArgs vc_in;
  std::size_t vc_max = 4;
  std::uint64_t vc_budget = kDefaultVcBudget;
  auto* vc = app.add_subcommand("vc", "VC dimension by exhaustive subset search");
  vc_in.add_to(vc);
  vc->add_option("--max", vc_max, "largest subset size to check")->capture_default_str();
  vc->add_option("--budget", vc_budget, "refuse when C(|E|, n) exceeds this")->capture_default_str();

  InputArgs w_in;
  bool w_vc2 = false, w_vc3 = false;
  std::string w_strategy = "exhaustive";
  std::uint64_t w_budget = 1'000'000;
  auto* witness = app.add_subcommand("witness", "search for a shattering certificate");
  w_in.add_to(witness);
  auto* o_vc2 = witness->add_flag("--vc2", w_vc2, "two shattered points");
  auto* o_vc3 = witness->add_flag("--vc3", w_vc3, "three shattered points");
  o_vc2->excludes(o_vc3);
  witness->add_option("--strategy", w_strategy, "exhaustive or random")->capture_default_str();
  witness->add_option("--budget", w_budget, "candidate tuples to examine (0 = unlimited)")->capture_default_str();

  FieldArgs loss_f;
  std::string loss_y, loss_ystar;
  auto* loss_cmd = app.add_subcommand("loss", "exact loss of h_y against h_ystar under uniform D on F_q^3");
  loss_f.add_to(loss_cmd);
  loss_cmd->add_option("--y", loss_y, "hypothesis point a,b,c")->required();
  loss_cmd->add_option("--ystar", loss_ystar, "target point a,b,c")->required();

  std::string sweep_config, sweep_out;
  std::size_t sweep_workers = 0;
  auto* sweep = app.add_subcommand("sweep", "density sweep over random subsets");
  sweep->add_option("--config", sweep_config, "config file")->required();
  sweep->add_option("--out", sweep_out, "CSV output (overrides the config's out)");
  sweep->add_option("--workers", sweep_workers, "worker threads (default: config or hardware)");

  PacParams pac_params;
  auto* pac = app.add_subcommand("pac", "PAC sample-size bounds");
  pac->add_option("--n", pac_params.n, "VC dimension")->required();
  pac->add_option("--eps", pac_params.epsilon, "epsilon in (0,1)")->required();
  pac->add_option("--delta", pac_params.delta, "delta in (0,1)")->required();
  pac->add_option("--c1", pac_params.c1, "lower-bound constant")->capture_default_str();
  pac->add_option("--c2", pac_params.c2, "upper-bound constant")->capture_default_str();
  pac->add_option("--log-base", pac_params.log_base, "logarithm base (default e)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*count) {
      const DotGraph g = count_in.graph();
      std::cout << count_report(g, {count_naive}).to_key_values();
      if (count_triples) {
        const TripleCountMap m = count_naive ? naive::triple_count_map(g.set(), g.t()) : triple_count_map(g);
        std::cout << "triples_sum=" << m.sum << '\n'
                  << "triples_sum_squares=" << m.sum_squares << '\n'
                  << "triples_support=" << m.support() << '\n'
                  << "cauchy_schwarz=" << (m.cauchy_schwarz_holds() ? "true" : "false") << '\n';
      }
    } else if (*prune) {
      const DotGraph g = prune_in.graph();
      PruneReport r = p_lower ? prune_lower(g) : p_both ? prune_both(g) : prune_upper(g);
      std::cout << r.summary();
      if (!prune_out.empty()) save_pointset(prune_out, g.set().subset(r.kept_indices));
    } else if (*vc) {
      const DotGraph g = vc_in.graph();
      const VcResult r = vc_dimension(g, vc_max, vc_budget);
      std::cout << "vc_dimension=" << r.dimension << '\n'
                << "truncated=" << (r.truncated ? "true" : "false") << '\n';
      for (auto i : r.shattered) std::cout << "shattered " << to_string(g.set()[i]) << '\n';
    } else if (*witness) {
      const DotGraph g = w_in.graph();
      SearchOptions opts{parse_strategy(w_strategy), w_in.seed, w_budget};
      auto report = [](const auto& r) {
        if (r.witness) {
          print_witness(named_points(*r.witness));
          return;
        }
        std::cout << "none\n"
                  << "candidates=" << r.candidates << '\n'
                  << "budget_exhausted=" << (r.budget_exhausted ? "true" : "false") << '\n';
      };
      if (w_vc2) report(find_vc2_witness(g, opts));
      else report(find_vc3_witness(g, opts));
    } else if (*loss_cmd) {
      auto ctx = loss_f.field();
      const LossReport r = loss(parse_point(loss_y, *ctx), parse_point(loss_ystar, *ctx), ctx->checked(loss_f.t), *ctx);
      std::cout << "loss=" << r.fraction() << '\n'
                << "decimal=" << std::setprecision(12) << r.value() << '\n';
    } else if (*sweep) {
      SweepConfig cfg = load_sweep_config(sweep_config);
      if (!sweep_out.empty()) cfg.output_path = sweep_out;
      if (sweep_workers) cfg.workers = sweep_workers;
      const auto records = run_sweep(cfg);
      if (cfg.output_path.empty()) {
        std::cout << kSweepCsvHeader << '\n';
        for (const auto& r : records) std::cout << to_csv_row(r) << '\n';
      } else {
        std::cout << "records=" << records.size() << '\n' << "out=" << cfg.output_path.string() << '\n';
      }
    } else if (*pac) {
      const PacBounds b = pac_sample_bounds(pac_params);
      std::cout << std::setprecision(12) << "lower=" << b.lower << '\n' << "upper=" << b.upper << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::BudgetExceeded: return kExitBudget;
      case ErrorCode::IoError: return kExitIo;
      default: return kExitUsage;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
