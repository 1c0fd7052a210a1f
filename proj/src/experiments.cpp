#include "dotvc/experiments.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>

#include "dotvc/dotgraph.hpp"
#include "dotvc/error.hpp"
#include "dotvc/parallel.hpp"
#include "dotvc/prune.hpp"
#include "dotvc/random.hpp"
#include "dotvc/shatter.hpp"

namespace dotvc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

template <class T>
bool parse_uint(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

[[noreturn]] void config_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "config line " + std::to_string(line) + ": " + what);
}

FieldSpec parse_field(const std::string& text, std::size_t line) {
  FieldSpec f;
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    if (!parse_uint(trim(text.substr(0, caret)), f.p) || !parse_uint(trim(text.substr(caret + 1)), f.k)) {
      config_error(line, "bad field '" + text + "'");
    }
    return f;
  }
  std::uint64_t q = 0;
  if (!parse_uint(text, q) || q < 2) config_error(line, "bad field order '" + text + "'");
  // Plain q must be a prime power.
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t k = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) config_error(line, std::to_string(q) + " is not a prime power");
  f.p = static_cast<std::uint32_t>(p);
  f.k = k;
  return f;
}

bool parse_bool(const std::string& v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  config_error(line, "expected a boolean, got '" + v + "'");
}

SweepRecord run_cell(const SweepConfig& cfg, const FieldSpec& f, std::size_t alpha_index,
                     std::uint32_t trial) {
  const auto start = std::chrono::steady_clock::now();
  auto ctx = std::make_shared<const FieldCtx>(FieldCtx::create(f.p, f.k));
  SweepRecord r;
  r.p = f.p;
  r.k = f.k;
  r.q = ctx->q();
  r.t = ctx->checked(cfg.t);
  r.alpha = cfg.alphas[alpha_index];
  r.target_size = target_size(r.q, r.alpha);
  r.seed = cell_seed(cfg.seed, f, alpha_index, trial);

  DotGraph g(random_subset(ctx, 3, r.target_size, r.seed), r.t);
  r.actual_size = g.size();
  const BigInt edges = edge_count(g);
  r.edge_count = edges.str();
  // |edges - N^2/q| <= N q  <=>  |q edges - N^2| <= N q^2
  const BigInt n = r.actual_size;
  const BigInt dev = abs(BigInt(r.q) * edges - n * n);
  r.in_edge_band = dev <= n * r.q * r.q;

  const DotGraph searched = cfg.prune ? kept_graph(g, prune_both(g)) : g;
  r.pruned_size = searched.size();
  SearchOptions opts;
  opts.strategy = cfg.random_search ? Strategy::SeededRandom : Strategy::Exhaustive;
  opts.seed = r.seed;
  opts.budget = cfg.budget;
  r.vc2_found = find_vc2_witness(searched, opts).witness.has_value();
  r.vc3_found = find_vc3_witness(searched, opts).witness.has_value();
  if (r.vc3_found) {
    r.vc_dim_lb = 3;
  } else if (r.vc2_found) {
    r.vc_dim_lb = 2;
  } else {
    for (std::size_t x = 0; x < searched.size(); ++x) {
      if (searched.degree(x) > 0 && searched.degree(x) < searched.size()) {
        r.vc_dim_lb = 1;
        break;
      }
    }
  }
  r.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
          .count());
  return r;
}

}  // namespace

PointSet random_subset(std::shared_ptr<const FieldCtx> ctx, std::size_t d, std::uint64_t size,
                       std::uint64_t seed) {
  const std::uint64_t total = space_size(ctx->q(), d);
  if (size < 1 || size > total) {
    throw Error(ErrorCode::SizeOutOfRange,
                "size " + std::to_string(size) + " not in [1, " + std::to_string(total) + "]");
  }
  std::vector<std::uint64_t> codes(total);
  for (std::uint64_t i = 0; i < total; ++i) codes[i] = i;
  Rng rng(seed);
  // Partial Fisher-Yates: position i receives a uniform pick from [i, total).
  for (std::uint64_t i = 0; i < size; ++i) {
    const std::uint64_t j = i + uniform_below(rng, total - i);
    std::swap(codes[i], codes[j]);
  }
  std::vector<Point> pts;
  pts.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) pts.push_back(decode(codes[i], ctx->q(), d));
  return PointSet(std::move(ctx), d, std::move(pts));
}

Point parse_point(const std::string& text, const FieldCtx& ctx) {
  Point p;
  std::size_t col = 1;
  for (const auto& field : split_list(text)) {
    std::uint64_t v = 0;
    if (!parse_uint(field, v)) {
      throw Error(ErrorCode::ParseError, "column " + std::to_string(col) + ": '" + field + "' is not a nonnegative integer");
    }
    p.coords.push_back(ctx.checked(v));
    ++col;
  }
  return p;
}

PointSet parse_pointset(std::istream& in, std::shared_ptr<const FieldCtx> ctx, std::size_t d) {
  std::vector<Point> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    Point p;
    std::size_t col = 0;
    std::stringstream ss(body);
    std::string field;
    while (std::getline(ss, field, ',')) {
      ++col;
      field = trim(field);
      std::uint64_t v = 0;
      if (!parse_uint(field, v)) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ", column " +
                                               std::to_string(col) + ": '" + field +
                                               "' is not a nonnegative integer");
      }
      if (!ctx->contains(v)) {
        throw Error(ErrorCode::ValueOutOfRange, "line " + std::to_string(lineno) + ", column " +
                                                    std::to_string(col) + ": " + field +
                                                    " is not below q = " + std::to_string(ctx->q()));
      }
      p.coords.push_back(static_cast<Elem>(v));
    }
    if (p.dim() != d) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected " +
                                             std::to_string(d) + " coordinates, got " +
                                             std::to_string(p.dim()));
    }
    pts.push_back(std::move(p));
  }
  return PointSet(std::move(ctx), d, std::move(pts));
}

PointSet load_pointset(const std::filesystem::path& path, std::shared_ptr<const FieldCtx> ctx,
                       std::size_t d) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return parse_pointset(in, std::move(ctx), d);
}

void save_pointset(const std::filesystem::path& path, const PointSet& set) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  for (const auto& p : set.points()) out << to_string(p) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

void SweepConfig::validate() const {
  if (fields.empty()) throw Error(ErrorCode::InvalidConfig, "no fields (q) given");
  if (trials < 1) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
  if (t == 0) throw Error(ErrorCode::InvalidConfig, "t must be nonzero");
  if (alphas.empty()) throw Error(ErrorCode::InvalidConfig, "no alpha values given");
  for (const auto& a : alphas) {
    char* end = nullptr;
    const double v = std::strtod(a.c_str(), &end);
    if (end == a.c_str() || *end != '\0' || !(v > 0.0 && v <= 3.0)) {
      throw Error(ErrorCode::InvalidConfig, "alpha '" + a + "' not in (0, 3]");
    }
  }
  for (const auto& f : fields) {
    if (!is_prime(f.p) || f.k < 1) {
      throw Error(ErrorCode::InvalidConfig, "field " + std::to_string(f.p) + "^" + std::to_string(f.k) + " is not a prime power");
    }
  }
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) config_error(lineno, "expected key = value");
    const std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']') value = value.substr(1, value.size() - 2);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);

    if (key == "q") {
      cfg.fields.clear();
      for (const auto& item : split_list(value)) cfg.fields.push_back(parse_field(item, lineno));
    } else if (key == "t") {
      if (!parse_uint(value, cfg.t)) config_error(lineno, "bad t");
    } else if (key == "alpha") {
      cfg.alphas = split_list(value);
    } else if (key == "trials") {
      if (!parse_uint(value, cfg.trials)) config_error(lineno, "bad trials");
    } else if (key == "seed") {
      if (!parse_uint(value, cfg.seed)) config_error(lineno, "bad seed");
    } else if (key == "budget") {
      if (!parse_uint(value, cfg.budget)) config_error(lineno, "bad budget");
    } else if (key == "prune") {
      cfg.prune = parse_bool(value, lineno);
    } else if (key == "strategy") {
      if (value == "random") {
        cfg.random_search = true;
      } else if (value == "exhaustive") {
        cfg.random_search = false;
      } else {
        config_error(lineno, "strategy must be exhaustive or random");
      }
    } else if (key == "workers") {
      if (!parse_uint(value, cfg.workers)) config_error(lineno, "bad workers");
    } else if (key == "out") {
      cfg.output_path = value;
    } else {
      config_error(lineno, "unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return parse_sweep_config(in);
}

std::uint64_t target_size(std::uint32_t q, const std::string& alpha) {
  const double a = std::stod(alpha);
  if (!(a > 0.0 && a <= 3.0)) throw Error(ErrorCode::InvalidConfig, "alpha '" + alpha + "' not in (0, 3]");
  const std::uint64_t full = std::uint64_t{q} * q * q;
  const double raw = std::round(std::pow(static_cast<double>(q), a));
  return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(raw), 1, full);
}

std::uint64_t cell_seed(std::uint64_t base, const FieldSpec& f, std::size_t alpha_index,
                        std::uint32_t trial) {
  std::uint64_t s = mix_seed(base);
  s = mix_seed(s ^ f.p);
  s = mix_seed(s ^ f.k);
  s = mix_seed(s ^ alpha_index);
  return mix_seed(s ^ trial);
}

std::string to_csv_row(const SweepRecord& r) {
  auto b = [](bool v) { return v ? "true" : "false"; };
  std::ostringstream os;
  os << r.p << ',' << r.k << ',' << r.q << ',' << r.t << ',' << r.alpha << ',' << r.target_size << ','
     << r.actual_size << ',' << r.seed << ',' << r.pruned_size << ',' << r.edge_count << ','
     << b(r.in_edge_band) << ',' << b(r.vc2_found) << ',' << b(r.vc3_found) << ',' << r.vc_dim_lb
     << ',' << r.elapsed_ms;
  return os.str();
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << kSweepCsvHeader << '\n';
    for (const auto& r : records) out << to_csv_row(r) << '\n';
    if (!out) throw Error(ErrorCode::IoError, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot move " + tmp.string() + " to " + path.string());
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  struct Cell {
    const FieldSpec* field;
    std::size_t alpha_index;
    std::uint32_t trial;
  };
  std::vector<Cell> cells;
  for (const auto& f : cfg.fields)
    for (std::size_t a = 0; a < cfg.alphas.size(); ++a)
      for (std::uint32_t t = 0; t < cfg.trials; ++t) cells.push_back({&f, a, t});

  std::vector<SweepRecord> records(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  parallel_for(
      cells.size(),
      [&](std::size_t i) {
        try {
          records[i] = run_cell(cfg, *cells[i].field, cells[i].alpha_index, cells[i].trial);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      },
      cfg.workers);
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  if (!cfg.output_path.empty()) write_sweep_csv(cfg.output_path, records);
  return records;
}

}  // namespace dotvc
