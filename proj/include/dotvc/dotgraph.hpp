#pragma once

// The dot-product graph D_t on a point set E: vertices are the points of E,
// and u ~ v iff u.v = t. The relation is symmetric and may have loops
// (u.u = t). All configuration counts are over ordered tuples of E with no
// distinctness imposed unless stated.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dotvc/bits.hpp"
#include "dotvc/geometry.hpp"

namespace dotvc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class DotGraph {
 public:
  // Throws ZeroT for t = 0.
  DotGraph(PointSet set, Elem t);

  const PointSet& set() const { return set_; }
  const FieldCtx& ctx() const { return set_.ctx(); }
  Elem t() const { return t_; }
  std::size_t size() const { return set_.size(); }
  std::size_t words() const { return words_; }

  bits::Row row(std::size_t i) const { return {adj_.data() + i * words_, words_}; }
  bool adjacent(std::size_t i, std::size_t j) const { return bits::test(row(i), j); }
  std::uint64_t degree(std::size_t i) const { return degree_[i]; }
  const std::vector<std::uint64_t>& degrees() const { return degree_; }
  std::uint64_t codegree(std::size_t i, std::size_t j) const {
    return bits::count_and(row(i), row(j));
  }

 private:
  PointSet set_;
  Elem t_;
  std::size_t words_;
  std::vector<bits::Word> adj_;
  std::vector<std::uint64_t> degree_;
};

// Closed interval with an optional upper end. Membership is exact.
struct Band {
  Rational lower;
  std::optional<Rational> upper;

  bool contains(const BigInt& v) const;
  std::string to_string() const;
};

// Smallest multiple of 1e-12 not below x; used where a bound carries an
// irrational constant, so the resulting band is never narrower than the true
// one.
Rational rational_ceil(double x);

BigInt edge_count(const DotGraph& g);
BigInt count_p5(const DotGraph& g);
BigInt count_c4(const DotGraph& g);
BigInt count_a(const DotGraph& g);
BigInt count_a_prime(const DotGraph& g);
BigInt count_a_degenerate(const DotGraph& g);

// f(y, z, v) = #{(x, u) : (x, y, z, u, v) in A'} for the triples where it is
// nonzero, in lexicographic index order.
struct TripleCount {
  std::uint32_t y, z, v;
  std::uint64_t value;
};

struct TripleCountMap {
  std::vector<TripleCount> entries;
  BigInt sum;          // equals |A'|
  BigInt sum_squares;  // pairs of A' members sharing (y, z, v)

  std::size_t support() const { return entries.size(); }
  // (sum f)^2 <= (sum f^2) * |support|.
  bool cauchy_schwarz_holds() const;
};

TripleCountMap triple_count_map(const DotGraph& g);

// The counts needed by the proofs together with the bands those proofs
// predict. A count outside its band is data, not an error: the bands only
// hold under density hypotheses that small inputs need not meet.
struct CountReport {
  std::uint64_t set_size = 0;
  std::uint32_t q = 0;
  bool naive = false;

  BigInt edges;
  BigInt p5;
  BigInt c4;
  BigInt a;
  BigInt a_degenerate;
  BigInt a_prime;

  Rational remainder;   // edges - |E|^2/q
  Band edge_band;       // |E|^2/q -+ |E|q
  Band p5_band;         // |E|^5/q^4 -+ (4/ln 2) q^2 |E|^4/q^4
  Band p5_lower;        // >= |E|^5/(2q^4)
  Band c4_band;         // |E|^4/q^4 (1 -+ (12 q^-1/2 + 8 q^5/|E|^2 + 28 q^2/|E|))
  Band a_band;          // [|E|^5/(2q^5), 2|E|^5/q^5]
  Band a_degenerate_band;  // [0, 5|E|^2 q^3]
  Band a_prime_lower;   // >= |E|^5/(4q^5)

  std::string to_key_values() const;
};

struct CountOptions {
  bool naive = false;
};

CountReport count_report(const DotGraph& g, CountOptions opts = {});

// Literal nested-loop enumerations that test u.v = t with direct dot products
// instead of the graph's bitsets. They are the trust anchor for the fast
// kernels above.
namespace naive {

std::vector<char> adjacency(const PointSet& set, Elem t);

BigInt edge_count(const PointSet& set, Elem t);
BigInt count_p5(const PointSet& set, Elem t);
BigInt count_c4(const PointSet& set, Elem t);
BigInt count_a(const PointSet& set, Elem t);
BigInt count_a_degenerate(const PointSet& set, Elem t);
TripleCountMap triple_count_map(const PointSet& set, Elem t);
// Seven-fold loop over the folded tuples (x, x', y, z, u, u', v).
BigInt folded_pair_count(const PointSet& set, Elem t);

}  // namespace naive

}  // namespace dotvc
