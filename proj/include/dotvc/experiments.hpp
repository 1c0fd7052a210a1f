#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dotvc/geometry.hpp"

namespace dotvc {

// `size` points of F_q^d without replacement: a seeded Fisher-Yates shuffle
// of the codes 0..q^d-1, keeping the first `size` in shuffled order.
// Throws SizeOutOfRange unless 1 <= size <= q^d.
PointSet random_subset(std::shared_ptr<const FieldCtx> ctx, std::size_t d, std::uint64_t size,
                       std::uint64_t seed);

// One point per line, d comma-separated element codes. Blank lines and lines
// starting with '#' are skipped. Throws IoError, ParseError (with line and
// column), ValueOutOfRange or DuplicatePoint.
PointSet load_pointset(const std::filesystem::path& path, std::shared_ptr<const FieldCtx> ctx,
                       std::size_t d);
PointSet parse_pointset(std::istream& in, std::shared_ptr<const FieldCtx> ctx, std::size_t d);
void save_pointset(const std::filesystem::path& path, const PointSet& set);

// "a,b,c" -> Point; throws ParseError or ValueOutOfRange.
Point parse_point(const std::string& text, const FieldCtx& ctx);

struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t k = 1;
};

struct SweepConfig {
  std::vector<FieldSpec> fields;
  Elem t = 1;
  // Density exponents as written (e.g. "2.75"); the text is echoed to CSV.
  std::vector<std::string> alphas = {"2.0", "2.25", "2.5", "2.75", "3.0"};
  std::uint32_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
  bool prune = true;
  // Seeded-random search instead of exhaustive.
  bool random_search = false;
  std::size_t workers = 0;
  std::filesystem::path output_path;

  // Throws InvalidConfig.
  void validate() const;
};

// key = value lines:
//   q = 7, 11, 2^2      field orders as p or p^k
//   t = 1
//   alpha = 2.0, 2.5, 2.75, 3.0
//   trials = 10
//   seed = 42
//   budget = 1000000
//   prune = true
//   strategy = exhaustive | random
//   workers = 4
//   out = sweep.csv
// '#' starts a comment. Throws ParseError or InvalidConfig.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct SweepRecord {
  std::uint32_t p = 0, k = 0, q = 0;
  Elem t = 0;
  std::string alpha;
  std::uint64_t target_size = 0;
  std::uint64_t actual_size = 0;
  std::uint64_t seed = 0;
  std::uint64_t pruned_size = 0;
  std::string edge_count;
  bool in_edge_band = false;
  bool vc2_found = false;
  bool vc3_found = false;
  std::uint32_t vc_dim_lb = 0;
  std::uint64_t elapsed_ms = 0;
};

inline constexpr const char* kSweepCsvHeader =
    "p,k,q,t,alpha,target_size,actual_size,seed,pruned_size,edge_count,in_edge_band,"
    "vc2_found,vc3_found,vc_dim_lb,elapsed_ms";

std::string to_csv_row(const SweepRecord& r);

// round(q^alpha) clamped to [1, q^3]; alpha must be in (0, 3].
std::uint64_t target_size(std::uint32_t q, const std::string& alpha);

// Seed of one (field, alpha, trial) cell, derived from the base seed.
std::uint64_t cell_seed(std::uint64_t base, const FieldSpec& f, std::size_t alpha_index,
                        std::uint32_t trial);

// Runs every cell, concurrently when workers > 1, and returns records in
// (field, alpha, trial) order. Writes the CSV when output_path is set,
// through a temporary file renamed into place.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records);

}  // namespace dotvc
