#include "dotvc/shatter.hpp"

#include <algorithm>
#include <limits>

#include "dotvc/error.hpp"
#include "dotvc/random.hpp"

namespace dotvc {

namespace {

using bits::npos;
using bits::Word;

Word valid_mask(std::size_t n, std::size_t word) {
  const std::size_t lo = word * 64;
  if (lo + 64 <= n) return ~Word{0};
  if (lo >= n) return 0;
  return (Word{1} << (n - lo)) - 1;
}

template <class WordAt>
std::size_t first_bit(std::size_t n_words, WordAt word_at) {
  return bits::nth(n_words, word_at, 0);
}

template <class WordAt>
std::uint64_t count_bits(std::size_t n_words, WordAt word_at) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < n_words; ++i) c += static_cast<std::uint64_t>(std::popcount(word_at(i)));
  return c;
}

// Uniformly random set bit of word_at, or npos.
template <class WordAt>
std::size_t random_bit(Rng& rng, std::size_t n_words, WordAt word_at) {
  const std::uint64_t c = count_bits(n_words, word_at);
  if (c == 0) return npos;
  return bits::nth(n_words, word_at, uniform_below(rng, c));
}

class VcSearch {
 public:
  VcSearch(const DotGraph& g, std::size_t target)
      : g_(g), n_(g.size()), w_(g.words()), target_(target), levels_(target + 1) {
    for (std::size_t k = 0; k <= target_; ++k) levels_[k].assign((std::size_t{1} << k) * w_, 0);
    for (std::size_t i = 0; i < w_; ++i) levels_[0][i] = valid_mask(n_, i);
  }

  std::optional<std::vector<std::size_t>> run() {
    if (!enough(0)) return std::nullopt;
    if (dfs(0, 0)) return chosen_;
    return std::nullopt;
  }

 private:
  // Every pattern class at level k must still split into 2^(target-k)
  // nonempty classes.
  bool enough(std::size_t k) const {
    const std::uint64_t need = std::uint64_t{1} << (target_ - k);
    const auto& lv = levels_[k];
    for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
      if (bits::count({lv.data() + m * w_, w_}) < need) return false;
    }
    return true;
  }

  bool extend(std::size_t k, std::size_t c) {
    const std::uint64_t need = std::uint64_t{1} << (target_ - k - 1);
    const auto& cur = levels_[k];
    auto& next = levels_[k + 1];
    const bits::Row rc = g_.row(c);
    for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
      const Word* src = cur.data() + m * w_;
      Word* in = next.data() + (2 * m + 1) * w_;
      Word* out = next.data() + (2 * m) * w_;
      std::uint64_t cin = 0, cout = 0;
      for (std::size_t i = 0; i < w_; ++i) {
        in[i] = src[i] & rc[i];
        out[i] = src[i] & ~rc[i];
        cin += static_cast<std::uint64_t>(std::popcount(in[i]));
        cout += static_cast<std::uint64_t>(std::popcount(out[i]));
      }
      if (cin < need || cout < need) return false;
    }
    return true;
  }

  bool dfs(std::size_t k, std::size_t start) {
    if (k == target_) return true;
    for (std::size_t c = start; c + (target_ - k) <= n_; ++c) {
      if (!extend(k, c)) continue;
      chosen_.push_back(c);
      if (dfs(k + 1, c + 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const DotGraph& g_;
  std::size_t n_;
  std::size_t w_;
  std::size_t target_;
  std::vector<std::vector<Word>> levels_;
  std::vector<std::size_t> chosen_;
};

// Checks a list of named conditions.
class Checker {
 public:
  void require(bool cond, std::string what) {
    if (!cond) {
      v_.ok = false;
      v_.violations.push_back(std::move(what));
    }
  }
  Verification done() { return std::move(v_); }

 private:
  Verification v_;
};

void check_members(Checker& ck, const DotGraph& g,
                   const std::vector<std::pair<std::string, Point>>& named) {
  for (const auto& [name, p] : named) ck.require(g.set().contains(p), name + " in E");
}

// x.y == t, tolerant of points outside E or of the wrong dimension.
bool on(const DotGraph& g, const Point& x, const Point& y) {
  if (x.dim() != y.dim()) return false;
  for (Elem c : x.coords)
    if (c >= g.ctx().q()) return false;
  for (Elem c : y.coords)
    if (c >= g.ctx().q()) return false;
  return dot(x, y, g.ctx()) == g.t();
}

// First y adjacent to `a` and to neither `b` nor `c` (c may be npos).
std::size_t private_neighbor(const DotGraph& g, std::size_t a, std::size_t b, std::size_t c) {
  const bits::Row ra = g.row(a), rb = g.row(b);
  if (c == npos) {
    return first_bit(g.words(), [&](std::size_t i) { return ra[i] & ~rb[i]; });
  }
  const bits::Row rc = g.row(c);
  return first_bit(g.words(), [&](std::size_t i) { return ra[i] & ~rb[i] & ~rc[i]; });
}

// First y adjacent to none of the given vertices.
std::size_t common_non_neighbor(const DotGraph& g, std::initializer_list<std::size_t> xs) {
  const std::size_t n = g.size();
  return first_bit(g.words(), [&](std::size_t i) {
    Word w = valid_mask(n, i);
    for (auto x : xs) w &= ~g.row(x)[i];
    return w;
  });
}

const Point& pt(const DotGraph& g, std::size_t i) { return g.set()[i]; }

std::optional<WitnessVC2> complete_vc2(const DotGraph& g, std::size_t x1, std::size_t x2,
                                       std::size_t y12) {
  const std::size_t y1 = private_neighbor(g, x1, x2, npos);
  if (y1 == npos) return std::nullopt;
  const std::size_t y2 = private_neighbor(g, x2, x1, npos);
  if (y2 == npos) return std::nullopt;
  const std::size_t ys = common_non_neighbor(g, {x1, x2});
  if (ys == npos) return std::nullopt;
  return WitnessVC2{pt(g, x1), pt(g, x2), pt(g, y12), pt(g, y1), pt(g, y2), pt(g, ys)};
}

struct Seven {
  std::size_t x1, x2, x3, y12, y13, y23, y123;
};

std::optional<WitnessVC3> complete_vc3(const DotGraph& g, const Seven& s) {
  // The three-plane argument forces x3.y12 != t and x1.y23 != t once the
  // other conditions hold; checked here rather than assumed.
  if (g.adjacent(s.x3, s.y12) || g.adjacent(s.x1, s.y23)) return std::nullopt;
  const std::size_t y1 = private_neighbor(g, s.x1, s.x2, s.x3);
  if (y1 == npos) return std::nullopt;
  const std::size_t y2 = private_neighbor(g, s.x2, s.x1, s.x3);
  if (y2 == npos) return std::nullopt;
  const std::size_t y3 = private_neighbor(g, s.x3, s.x1, s.x2);
  if (y3 == npos) return std::nullopt;
  const std::size_t ys = common_non_neighbor(g, {s.x1, s.x2, s.x3});
  if (ys == npos) return std::nullopt;
  return WitnessVC3{pt(g, s.x1), pt(g, s.x2),  pt(g, s.x3),  pt(g, y1),
                    pt(g, y2),   pt(g, y3),    pt(g, s.y12), pt(g, s.y13),
                    pt(g, s.y23), pt(g, s.y123), pt(g, ys)};
}

// Picks an ordered edge (a, b) uniformly among all ordered adjacent pairs.
std::optional<std::pair<std::size_t, std::size_t>> random_edge(const DotGraph& g, Rng& rng,
                                                               const std::vector<std::uint64_t>& prefix) {
  const std::uint64_t total = prefix.back();
  if (total == 0) return std::nullopt;
  const std::uint64_t k = uniform_below(rng, total);
  const auto it = std::upper_bound(prefix.begin(), prefix.end(), k);
  const std::size_t a = static_cast<std::size_t>(it - prefix.begin()) - 1;
  const bits::Row ra = g.row(a);
  const std::size_t b = bits::nth(g.words(), [&](std::size_t i) { return ra[i]; }, k - prefix[a]);
  return std::pair{a, b};
}

std::vector<std::uint64_t> degree_prefix(const DotGraph& g) {
  std::vector<std::uint64_t> prefix(g.size() + 1, 0);
  for (std::size_t i = 0; i < g.size(); ++i) prefix[i + 1] = prefix[i] + g.degree(i);
  return prefix;
}

bool over_budget(const SearchOptions& opts, std::uint64_t candidates) {
  return opts.budget != 0 && candidates >= opts.budget;
}

SearchResult<WitnessVC2> vc2_exhaustive(const DotGraph& g, const SearchOptions& opts) {
  SearchResult<WitnessVC2> r;
  const std::size_t n = g.size();
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      if (x2 == x1) continue;
      const bits::Row r1 = g.row(x1), r2 = g.row(x2);
      const std::size_t y12 = first_bit(g.words(), [&](std::size_t i) { return r1[i] & r2[i]; });
      if (y12 == npos) continue;
      if (over_budget(opts, r.candidates)) {
        r.budget_exhausted = true;
        return r;
      }
      ++r.candidates;
      if (auto w = complete_vc2(g, x1, x2, y12)) {
        r.witness = std::move(w);
        return r;
      }
    }
  }
  return r;
}

SearchResult<WitnessVC2> vc2_random(const DotGraph& g, const SearchOptions& opts) {
  SearchResult<WitnessVC2> r;
  Rng rng(opts.seed);
  const auto prefix = degree_prefix(g);
  const std::uint64_t budget = opts.budget ? opts.budget : 1'000'000;
  while (r.candidates < budget) {
    ++r.candidates;
    const auto e = random_edge(g, rng, prefix);
    if (!e) return r;  // no edges: nothing can ever be found
    const auto [x1, y12] = *e;
    const bits::Row ry = g.row(y12);
    const std::size_t x2 = random_bit(rng, g.words(), [&](std::size_t i) {
      Word w = ry[i];
      if (i == x1 / 64) w &= ~(Word{1} << (x1 % 64));
      return w;
    });
    if (x2 == npos) continue;
    if (auto w = complete_vc2(g, x1, x2, y12)) {
      r.witness = std::move(w);
      return r;
    }
  }
  r.budget_exhausted = true;
  return r;
}

SearchResult<WitnessVC3> vc3_exhaustive(const DotGraph& g, const SearchOptions& opts) {
  SearchResult<WitnessVC3> r;
  const std::size_t n = g.size();
  const std::size_t w = g.words();
  std::vector<Word> common(w);
  std::vector<Word> n12(w);
  for (std::size_t x2 = 0; x2 < n; ++x2) {
    const bits::Row r2 = g.row(x2);
    bool stop = false;
    bits::for_each(r2, [&](std::size_t y123) {
      const bits::Row rz = g.row(y123);
      for (std::size_t y13 = 0; y13 < n && !stop; ++y13) {
        if (g.adjacent(x2, y13)) continue;
        const bits::Row rv = g.row(y13);
        for (std::size_t i = 0; i < w; ++i) common[i] = rz[i] & rv[i];
        bits::for_each(common, [&](std::size_t x1) {
          if (x1 == x2) return true;
          const bits::Row r1 = g.row(x1);
          return bits::for_each(w, [&](std::size_t i) { return r1[i] & r2[i]; }, [&](std::size_t y12) {
            if (y12 == y123) return true;
            return bits::for_each(common, [&](std::size_t x3) {
              if (x3 == x2 || x3 == x1) return true;
              const bits::Row r3 = g.row(x3);
              return bits::for_each(w, [&](std::size_t i) { return r3[i] & r2[i]; }, [&](std::size_t y23) {
                if (y23 == y123) return true;
                if (over_budget(opts, r.candidates)) {
                  r.budget_exhausted = true;
                  stop = true;
                  return false;
                }
                ++r.candidates;
                if (auto wit = complete_vc3(g, {x1, x2, x3, y12, y13, y23, y123})) {
                  r.witness = std::move(wit);
                  stop = true;
                  return false;
                }
                return true;
              });
            });
          });
        });
      }
      return !stop;
    });
    if (stop) break;
  }
  return r;
}

SearchResult<WitnessVC3> vc3_random(const DotGraph& g, const SearchOptions& opts) {
  SearchResult<WitnessVC3> r;
  Rng rng(opts.seed);
  const std::size_t n = g.size();
  const std::size_t w = g.words();
  const auto prefix = degree_prefix(g);
  const std::uint64_t budget = opts.budget ? opts.budget : 1'000'000;
  auto without = [](Word word, std::size_t i, std::initializer_list<std::size_t> drop) {
    for (auto d : drop)
      if (d / 64 == i) word &= ~(Word{1} << (d % 64));
    return word;
  };
  while (r.candidates < budget) {
    ++r.candidates;
    const auto e = random_edge(g, rng, prefix);
    if (!e) return r;
    const auto [x2, y123] = *e;
    const bits::Row r2 = g.row(x2), rz = g.row(y123);
    const std::size_t y13 = random_bit(rng, w, [&](std::size_t i) { return ~r2[i] & valid_mask(n, i); });
    if (y13 == npos) continue;
    const bits::Row rv = g.row(y13);
    auto common = [&](std::size_t i) { return rz[i] & rv[i]; };
    const std::size_t x1 = random_bit(rng, w, [&](std::size_t i) { return without(common(i), i, {x2}); });
    if (x1 == npos) continue;
    const std::size_t x3 =
        random_bit(rng, w, [&](std::size_t i) { return without(common(i), i, {x2, x1}); });
    if (x3 == npos) continue;
    const bits::Row r1 = g.row(x1), r3 = g.row(x3);
    const std::size_t y12 =
        random_bit(rng, w, [&](std::size_t i) { return without(r1[i] & r2[i], i, {y123}); });
    if (y12 == npos) continue;
    const std::size_t y23 =
        random_bit(rng, w, [&](std::size_t i) { return without(r3[i] & r2[i], i, {y123}); });
    if (y23 == npos) continue;
    if (auto wit = complete_vc3(g, {x1, x2, x3, y12, y13, y23, y123})) {
      r.witness = std::move(wit);
      return r;
    }
  }
  r.budget_exhausted = true;
  return r;
}

}  // namespace

bool shatters(const DotGraph& g, std::span<const std::size_t> c) {
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= n) throw Error(ErrorCode::ValueOutOfRange, "index " + std::to_string(c[i]) + " not in E");
    for (std::size_t j = 0; j < i; ++j) {
      if (c[i] == c[j]) throw Error(ErrorCode::DuplicateIndices, "index " + std::to_string(c[i]) + " repeated");
    }
  }
  if (n == 0) return false;
  if (c.size() >= 63 || (std::uint64_t{1} << c.size()) > n) return false;
  const std::size_t patterns = std::size_t{1} << c.size();
  std::vector<char> seen(patterns, 0);
  std::size_t distinct = 0;
  for (std::size_t y = 0; y < n && distinct < patterns; ++y) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (g.adjacent(c[i], y)) mask |= std::size_t{1} << i;
    }
    if (!seen[mask]) {
      seen[mask] = 1;
      ++distinct;
    }
  }
  return distinct == patterns;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

VcResult vc_dimension(const DotGraph& g, std::size_t max_check, std::uint64_t budget) {
  VcResult r;
  const std::size_t n = g.size();
  for (std::size_t size = 1; size <= max_check; ++size) {
    if (size >= 63 || (std::uint64_t{1} << size) > n) break;
    const std::uint64_t subsets = binomial(n, size);
    if (subsets > budget) {
      throw Error(ErrorCode::BudgetExceeded, "C(" + std::to_string(n) + ", " + std::to_string(size) +
                                                 ") = " + std::to_string(subsets) +
                                                 " subsets exceeds budget " + std::to_string(budget));
    }
    auto found = VcSearch(g, size).run();
    if (!found) break;
    r.dimension = size;
    r.shattered = std::move(*found);
  }
  r.truncated = r.dimension == max_check;
  return r;
}

std::vector<std::pair<std::string, Point>> named_points(const WitnessVC2& w) {
  return {{"x1", w.x1}, {"x2", w.x2}, {"y12", w.y12}, {"y1", w.y1}, {"y2", w.y2}, {"ystar", w.ystar}};
}

std::vector<std::pair<std::string, Point>> named_points(const WitnessVC3& w) {
  return {{"x1", w.x1},   {"x2", w.x2},   {"x3", w.x3},   {"y1", w.y1},
          {"y2", w.y2},   {"y3", w.y3},   {"y12", w.y12}, {"y13", w.y13},
          {"y23", w.y23}, {"y123", w.y123}, {"ystar", w.ystar}};
}

Verification witness_verify(const WitnessVC2& w, const DotGraph& g) {
  Checker ck;
  check_members(ck, g, named_points(w));
  ck.require(w.x1 != w.x2, "x1 != x2");
  ck.require(on(g, w.x1, w.y12), "x1.y12 = t");
  ck.require(on(g, w.x2, w.y12), "x2.y12 = t");
  ck.require(on(g, w.x1, w.y1), "x1.y1 = t");
  ck.require(!on(g, w.x2, w.y1), "x2.y1 != t");
  ck.require(on(g, w.x2, w.y2), "x2.y2 = t");
  ck.require(!on(g, w.x1, w.y2), "x1.y2 != t");
  ck.require(!on(g, w.x1, w.ystar), "x1.ystar != t");
  ck.require(!on(g, w.x2, w.ystar), "x2.ystar != t");
  return ck.done();
}

Verification witness_verify(const WitnessVC3& w, const DotGraph& g) {
  Checker ck;
  check_members(ck, g, named_points(w));
  ck.require(w.x1 != w.x2, "x1 != x2");
  ck.require(w.x1 != w.x3, "x1 != x3");
  ck.require(w.x2 != w.x3, "x2 != x3");
  const std::pair<std::string, const Point*> xs[] = {{"x1", &w.x1}, {"x2", &w.x2}, {"x3", &w.x3}};
  // Hypothesis y_S and the set S of x indices (bit i-1 for x_i) it must cover.
  const std::tuple<std::string, const Point*, unsigned> hyps[] = {
      {"ystar", &w.ystar, 0b000}, {"y1", &w.y1, 0b001},   {"y2", &w.y2, 0b010},
      {"y3", &w.y3, 0b100},       {"y12", &w.y12, 0b011}, {"y13", &w.y13, 0b101},
      {"y23", &w.y23, 0b110},     {"y123", &w.y123, 0b111}};
  for (const auto& [hname, h, set] : hyps) {
    for (unsigned i = 0; i < 3; ++i) {
      const bool want = (set >> i) & 1u;
      ck.require(on(g, *xs[i].second, *h) == want,
                 xs[i].first + "." + hname + (want ? " = t" : " != t"));
    }
  }
  return ck.done();
}

SearchResult<WitnessVC2> find_vc2_witness(const DotGraph& g, SearchOptions opts) {
  auto r = opts.strategy == Strategy::Exhaustive ? vc2_exhaustive(g, opts) : vc2_random(g, opts);
  if (r.witness && !witness_verify(*r.witness, g).ok) {
    throw std::logic_error("vc2 search produced an invalid witness");
  }
  return r;
}

SearchResult<WitnessVC3> find_vc3_witness(const DotGraph& g, SearchOptions opts) {
  auto r = opts.strategy == Strategy::Exhaustive ? vc3_exhaustive(g, opts) : vc3_random(g, opts);
  if (r.witness && !witness_verify(*r.witness, g).ok) {
    throw std::logic_error("vc3 search produced an invalid witness");
  }
  return r;
}

PacBounds pac_sample_bounds(const PacParams& p) {
  if (!(p.epsilon > 0 && p.epsilon < 1) || !(p.delta > 0 && p.delta < 1)) {
    throw Error(ErrorCode::InvalidConfig, "epsilon and delta must lie in (0, 1)");
  }
  if (!(p.c1 > 0) || !(p.c2 > 0)) throw Error(ErrorCode::InvalidConfig, "c1 and c2 must be positive");
  if (!(p.log_base > 1)) throw Error(ErrorCode::InvalidConfig, "log base must exceed 1");
  const double lb = std::log(p.log_base);
  const double log_inv_eps = std::log(1.0 / p.epsilon) / lb;
  const double log_inv_delta = std::log(1.0 / p.delta) / lb;
  const double n = static_cast<double>(p.n);
  return {p.c1 * (n + log_inv_delta) / p.epsilon, p.c2 * (n * log_inv_eps + log_inv_delta) / p.epsilon};
}

}  // namespace dotvc
