#include "dotvc/dotgraph.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "dotvc/error.hpp"
#include "dotvc/parallel.hpp"

namespace dotvc {

namespace {

using Acc = unsigned __int128;

BigInt to_big(Acc v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) + static_cast<std::uint64_t>(v);
}

BigInt sum_slots(const std::vector<Acc>& slots) {
  Acc total = 0;
  for (Acc s : slots) total += s;
  return to_big(total);
}

struct CycleSums {
  BigInt c4;
  BigInt a;
  BigInt a_prime;
};

// One pass over unordered pairs {u, v}, u <= v, of the codegree c(u, v):
//   C4  = sum_{u,v} c^2
//   |A| = sum_{u,v} deg(u) c^2                   (u, y fixed; x, z in N(u) & N(y); v in N(u))
//   |A'|= sum_{u != v} c (c - 1) (deg(u) - c)    (x != z, v in N(u) \ N(y))
CycleSums cycle_sums(const DotGraph& g) {
  const std::size_t n = g.size();
  std::vector<Acc> c4(n), a(n), ap(n);
  parallel_for(n, [&](std::size_t u) {
    const Acc du = g.degree(u);
    Acc s4 = 0, sa = 0, sap = 0;
    {
      const Acc c = g.degree(u);  // codegree of u with itself
      s4 += c * c;
      sa += du * c * c;
    }
    for (std::size_t v = u + 1; v < n; ++v) {
      const Acc c = g.codegree(u, v);
      if (c == 0) continue;
      const Acc dv = g.degree(v);
      s4 += 2 * c * c;
      sa += (du + dv) * c * c;
      sap += c * (c - 1) * ((du - c) + (dv - c));
    }
    c4[u] = s4;
    a[u] = sa;
    ap[u] = sap;
  });
  return {sum_slots(c4), sum_slots(a), sum_slots(ap)};
}

Rational pow_r(const Rational& base, unsigned e) {
  Rational r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

DotGraph::DotGraph(PointSet set, Elem t)
    : set_(std::move(set)), t_(t), words_(bits::words_for(set_.size())) {
  if (t_ == 0) throw Error(ErrorCode::ZeroT, "t must be nonzero");
  set_.ctx().checked(t_);
  const std::size_t n = set_.size();
  adj_.assign(n * words_, 0);
  degree_.assign(n, 0);
  const FieldCtx& ctx = set_.ctx();
  for (std::size_t i = 0; i < n; ++i) {
    std::span<bits::Word> ri(adj_.data() + i * words_, words_);
    for (std::size_t j = i; j < n; ++j) {
      if (ctx.dot(set_[i].span(), set_[j].span()) != t_) continue;
      bits::set(ri, j);
      bits::set(std::span<bits::Word>(adj_.data() + j * words_, words_), i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) degree_[i] = bits::count(row(i));
}

bool Band::contains(const BigInt& v) const {
  const Rational x(v);
  if (x < lower) return false;
  return !upper || x <= *upper;
}

std::string Band::to_string() const {
  std::ostringstream os;
  os << '[' << lower << ", ";
  if (upper) {
    os << *upper;
  } else {
    os << "inf";
  }
  os << ']';
  return os.str();
}

Rational rational_ceil(double x) {
  const double scaled = std::ceil(x * 1e12);
  BigInt num(static_cast<long long>(scaled));
  return Rational(num, BigInt(1000000000000LL));
}

BigInt edge_count(const DotGraph& g) {
  BigInt total = 0;
  for (auto d : g.degrees()) total += d;
  return total;
}

BigInt count_p5(const DotGraph& g) {
  // (x1, x2, y12, y1, y2) = choose the middle vertex y12, then two walks of
  // length two out of it: sum_v (sum_{u ~ v} deg u)^2.
  const std::size_t n = g.size();
  std::vector<Acc> slots(n);
  parallel_for(n, [&](std::size_t v) {
    Acc s = 0;
    bits::for_each(g.row(v), [&](std::size_t u) {
      s += g.degree(u);
      return true;
    });
    slots[v] = s * s;
  });
  return sum_slots(slots);
}

BigInt count_c4(const DotGraph& g) { return cycle_sums(g).c4; }
BigInt count_a(const DotGraph& g) { return cycle_sums(g).a; }
BigInt count_a_prime(const DotGraph& g) { return cycle_sums(g).a_prime; }

BigInt count_a_degenerate(const DotGraph& g) {
  const CycleSums s = cycle_sums(g);
  return s.a - s.a_prime;
}

bool TripleCountMap::cauchy_schwarz_holds() const {
  return sum * sum <= sum_squares * BigInt(support());
}

TripleCountMap triple_count_map(const DotGraph& g) {
  // For (y, z, v) with y ~ z and not y ~ v, the admissible (x, u) have
  // u in N(z) & N(v), u != y, and x in N(u) & N(y) minus z; z always lies in
  // N(u) & N(y), so each u contributes codeg(u, y) - 1.
  const std::size_t n = g.size();
  const std::size_t w = g.words();
  std::vector<std::vector<TripleCount>> per_y(n);
  parallel_for(n, [&](std::size_t y) {
    std::vector<std::uint64_t> weight(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
      if (u != y) weight[u] = g.codegree(u, y);
    }
    auto& out = per_y[y];
    bits::for_each(g.row(y), [&](std::size_t z) {
      const bits::Row rz = g.row(z);
      for (std::size_t v = 0; v < n; ++v) {
        if (g.adjacent(y, v)) continue;
        const bits::Row rv = g.row(v);
        std::uint64_t f = 0;
        bits::for_each(w, [&](std::size_t i) { return rz[i] & rv[i]; }, [&](std::size_t u) {
          if (u != y) f += weight[u] - 1;
          return true;
        });
        if (f) {
          out.push_back({static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(z),
                         static_cast<std::uint32_t>(v), f});
        }
      }
      return true;
    });
  });
  TripleCountMap m;
  Acc sum = 0, sq = 0;
  for (auto& chunk : per_y) {
    for (const auto& e : chunk) {
      sum += e.value;
      sq += Acc{e.value} * e.value;
    }
    m.entries.insert(m.entries.end(), chunk.begin(), chunk.end());
  }
  m.sum = to_big(sum);
  m.sum_squares = to_big(sq);
  return m;
}

CountReport count_report(const DotGraph& g, CountOptions opts) {
  CountReport r;
  r.set_size = g.size();
  r.q = g.ctx().q();
  r.naive = opts.naive;
  if (opts.naive) {
    const PointSet& s = g.set();
    r.edges = naive::edge_count(s, g.t());
    r.p5 = naive::count_p5(s, g.t());
    r.c4 = naive::count_c4(s, g.t());
    r.a = naive::count_a(s, g.t());
    r.a_degenerate = naive::count_a_degenerate(s, g.t());
    r.a_prime = r.a - r.a_degenerate;
  } else {
    r.edges = edge_count(g);
    r.p5 = count_p5(g);
    const CycleSums cs = cycle_sums(g);
    r.c4 = cs.c4;
    r.a = cs.a;
    r.a_prime = cs.a_prime;
    r.a_degenerate = cs.a - cs.a_prime;
  }

  const Rational n(BigInt(r.set_size));
  const Rational q(BigInt(r.q));
  const double qd = r.q;

  const Rational edge_center = n * n / q;
  r.remainder = Rational(r.edges) - edge_center;
  r.edge_band = {edge_center - n * q, edge_center + n * q};

  const Rational p5_center = pow_r(n, 5) / pow_r(q, 4);
  const Rational p5_radius = rational_ceil(4.0 / std::log(2.0)) * pow_r(n, 4) / (q * q);
  r.p5_band = {p5_center - p5_radius, p5_center + p5_radius};
  r.p5_lower = {p5_center / 2, std::nullopt};

  const Rational c4_center = pow_r(n, 4) / pow_r(q, 4);
  Rational c4_factor = rational_ceil(12.0 / std::sqrt(qd));
  if (r.set_size > 0) c4_factor += 8 * pow_r(q, 5) / (n * n) + 28 * q * q / n;
  r.c4_band = {c4_center - c4_center * c4_factor, c4_center + c4_center * c4_factor};

  const Rational a_center = pow_r(n, 5) / pow_r(q, 5);
  r.a_band = {a_center / 2, a_center * 2};
  r.a_degenerate_band = {Rational(0), 5 * n * n * pow_r(q, 3)};
  r.a_prime_lower = {a_center / 4, std::nullopt};
  return r;
}

std::string CountReport::to_key_values() const {
  std::ostringstream os;
  os << "size=" << set_size << '\n'
     << "q=" << q << '\n'
     << "mode=" << (naive ? "naive" : "fast") << '\n'
     << "edges=" << edges << '\n'
     << "remainder=" << remainder << '\n'
     << "edge_band=" << edge_band.to_string() << '\n'
     << "edge_in_band=" << bool_str(edge_band.contains(edges)) << '\n'
     << "p5=" << p5 << '\n'
     << "p5_band=" << p5_band.to_string() << '\n'
     << "p5_in_band=" << bool_str(p5_band.contains(p5)) << '\n'
     << "p5_lower=" << p5_lower.to_string() << '\n'
     << "p5_above_lower=" << bool_str(p5_lower.contains(p5)) << '\n'
     << "c4=" << c4 << '\n'
     << "c4_band=" << c4_band.to_string() << '\n'
     << "c4_in_band=" << bool_str(c4_band.contains(c4)) << '\n'
     << "a=" << a << '\n'
     << "a_band=" << a_band.to_string() << '\n'
     << "a_in_band=" << bool_str(a_band.contains(a)) << '\n'
     << "a_degenerate=" << a_degenerate << '\n'
     << "a_degenerate_band=" << a_degenerate_band.to_string() << '\n'
     << "a_degenerate_in_band=" << bool_str(a_degenerate_band.contains(a_degenerate)) << '\n'
     << "a_prime=" << a_prime << '\n'
     << "a_prime_lower=" << a_prime_lower.to_string() << '\n'
     << "a_prime_above_lower=" << bool_str(a_prime_lower.contains(a_prime)) << '\n';
  return os.str();
}

namespace naive {

std::vector<char> adjacency(const PointSet& set, Elem t) {
  const std::size_t n = set.size();
  std::vector<char> adj(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) adj[i * n + j] = dot(set[i], set[j], set.ctx()) == t;
  }
  return adj;
}

BigInt edge_count(const PointSet& set, Elem t) {
  const auto adj = adjacency(set, t);
  std::uint64_t c = 0;
  for (char e : adj) c += e;
  return c;
}

BigInt count_p5(const PointSet& set, Elem t) {
  const std::size_t n = set.size();
  const auto adj = adjacency(set, t);
  auto D = [&](std::size_t i, std::size_t j) { return adj[i * n + j] != 0; };
  std::uint64_t c = 0;
  for (std::size_t x1 = 0; x1 < n; ++x1)
    for (std::size_t y12 = 0; y12 < n; ++y12) {
      if (!D(x1, y12)) continue;
      for (std::size_t x2 = 0; x2 < n; ++x2) {
        if (!D(y12, x2)) continue;
        for (std::size_t y1 = 0; y1 < n; ++y1) {
          if (!D(y1, x1)) continue;
          for (std::size_t y2 = 0; y2 < n; ++y2) c += D(x2, y2);
        }
      }
    }
  return c;
}

BigInt count_c4(const PointSet& set, Elem t) {
  const std::size_t n = set.size();
  const auto adj = adjacency(set, t);
  auto D = [&](std::size_t i, std::size_t j) { return adj[i * n + j] != 0; };
  std::uint64_t c = 0;
  for (std::size_t x1 = 0; x1 < n; ++x1)
    for (std::size_t y12 = 0; y12 < n; ++y12) {
      if (!D(x1, y12)) continue;
      for (std::size_t x2 = 0; x2 < n; ++x2) {
        if (!D(y12, x2)) continue;
        for (std::size_t y2 = 0; y2 < n; ++y2) c += D(x2, y2) && D(y2, x1);
      }
    }
  return c;
}

namespace {

// Calls f(x, y, z, u, v) for every member of A.
template <class F>
void for_each_a(const std::vector<char>& adj, std::size_t n, F&& f) {
  auto D = [&](std::size_t i, std::size_t j) { return adj[i * n + j] != 0; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!D(x, y)) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (!D(y, z)) continue;
        for (std::size_t u = 0; u < n; ++u) {
          if (!D(z, u) || !D(u, x)) continue;
          for (std::size_t v = 0; v < n; ++v) {
            if (D(v, u)) f(x, y, z, u, v);
          }
        }
      }
    }
}

bool degenerate(const std::vector<char>& adj, std::size_t n, std::size_t x, std::size_t y,
                std::size_t z, std::size_t u, std::size_t v) {
  return adj[y * n + v] != 0 || x == z || y == u;
}

}  // namespace

BigInt count_a(const PointSet& set, Elem t) {
  const std::size_t n = set.size();
  const auto adj = adjacency(set, t);
  std::uint64_t c = 0;
  for_each_a(adj, n, [&](auto, auto, auto, auto, auto) { ++c; });
  return c;
}

BigInt count_a_degenerate(const PointSet& set, Elem t) {
  const std::size_t n = set.size();
  const auto adj = adjacency(set, t);
  std::uint64_t c = 0;
  for_each_a(adj, n, [&](auto x, auto y, auto z, auto u, auto v) {
    c += degenerate(adj, n, x, y, z, u, v);
  });
  return c;
}

TripleCountMap triple_count_map(const PointSet& set, Elem t) {
  const std::size_t n = set.size();
  const auto adj = adjacency(set, t);
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::uint64_t> f;
  for_each_a(adj, n, [&](auto x, auto y, auto z, auto u, auto v) {
    if (!degenerate(adj, n, x, y, z, u, v)) ++f[{y, z, v}];
  });
  TripleCountMap m;
  for (const auto& [key, value] : f) {
    const auto [y, z, v] = key;
    m.entries.push_back({static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(z),
                         static_cast<std::uint32_t>(v), value});
    m.sum += value;
    m.sum_squares += BigInt(value) * value;
  }
  return m;
}

BigInt folded_pair_count(const PointSet& set, Elem t) {
  const std::size_t n = set.size();
  const auto adj = adjacency(set, t);
  auto D = [&](std::size_t i, std::size_t j) { return adj[i * n + j] != 0; };
  std::uint64_t c = 0;
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t z = 0; z < n; ++z) {
      if (!D(y, z)) continue;
      for (std::size_t v = 0; v < n; ++v) {
        if (D(y, v)) continue;
        for (std::size_t u = 0; u < n; ++u) {
          if (!D(z, u) || !D(v, u) || u == y) continue;
          for (std::size_t x = 0; x < n; ++x) {
            if (!D(x, y) || !D(u, x) || x == z) continue;
            for (std::size_t u2 = 0; u2 < n; ++u2) {
              if (!D(z, u2) || !D(v, u2) || u2 == y) continue;
              for (std::size_t x2 = 0; x2 < n; ++x2) {
                c += D(x2, y) && D(u2, x2) && x2 != z;
              }
            }
          }
        }
      }
    }
  return c;
}

}  // namespace naive

}  // namespace dotvc
