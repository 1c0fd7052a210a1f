#pragma once

// Arithmetic in F_q, q = p^k.
//
// Elements are integers in [0, q) whose base-p digits are the coefficients of
// a polynomial over F_p reduced modulo the field's monic irreducible modulus,
// constant term in the least significant digit. For k = 1 this is the usual
// residue representation.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dotvc {

using Elem = std::uint32_t;

// Polynomial over F_p, coefficients low degree first.
using Poly = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);

class FieldCtx {
 public:
  // Largest order for which log/antilog tables are built.
  static constexpr std::uint64_t kTableLimit = 1u << 16;

  // Throws NotPrime, DegreeMismatch or ReducibleModulus. With no modulus and
  // k > 1 the smallest monic irreducible of degree k (by encoding) is used.
  static FieldCtx create(std::uint32_t p, std::uint32_t k,
                         std::optional<Poly> modulus = std::nullopt);

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  const Poly& modulus() const { return modulus_; }
  bool has_tables() const { return !log_.empty(); }

  bool contains(std::uint64_t a) const { return a < q_; }
  // Throws ValueOutOfRange when a >= q.
  Elem checked(std::uint64_t a) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  // Throws DivisionByZero for a = 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  // Sum of coordinate products; throws DimensionMismatch on unequal lengths.
  Elem dot(std::span<const Elem> u, std::span<const Elem> v) const;

  // Human-readable description, e.g. "F_4 = F_2[x]/(x^2+x+1)".
  std::string describe() const;

 private:
  FieldCtx(std::uint32_t p, std::uint32_t k, Poly modulus);

  Elem mul_poly(Elem a, Elem b) const;
  void build_tables();

  std::uint32_t p_;
  std::uint32_t k_;
  std::uint32_t q_;
  Poly modulus_;
  std::vector<std::uint32_t> log_;  // log_[a] for a != 0
  std::vector<Elem> exp_;           // exp_[i] for i in [0, 2(q-1))
};

// Monic irreducibility over F_p by trial division against every monic
// polynomial of degree 1..deg/2.
bool is_irreducible(const Poly& f, std::uint32_t p);

// Smallest monic irreducible of degree k over F_p, ordered by encoding
// (equivalently, lexicographically from the leading coefficient down).
Poly smallest_irreducible(std::uint32_t p, std::uint32_t k);

// Formats a polynomial like "x^2+x+1".
std::string poly_to_string(const Poly& f);

}  // namespace dotvc
