#include "dotvc/gf.hpp"

#include <algorithm>
#include <sstream>

#include "dotvc/error.hpp"

namespace dotvc {

namespace {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a modulo monic b over F_p.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = (lead * b[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Monic polynomial of degree `deg` whose lower coefficients are the base-p
// digits of `index`.
Poly monic_from_index(std::uint64_t index, std::uint32_t deg, std::uint32_t p) {
  Poly f(deg + 1, 0);
  for (std::uint32_t i = 0; i < deg; ++i) {
    f[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  f[deg] = 1;
  return f;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(const Poly& f_in, std::uint32_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2 || f.back() != 1) return false;
  const auto deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t i = 0; i < count; ++i) {
      if (poly_rem(f, monic_from_index(i, d, p), p).empty()) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t k) {
  const std::uint64_t count = ipow(p, k);
  for (std::uint64_t i = 0; i < count; ++i) {
    Poly f = monic_from_index(i, k, p);
    if (is_irreducible(f, p)) return f;
  }
  // Irreducibles of every degree exist over every prime field.
  throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found");
}

std::string poly_to_string(const Poly& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (f[i] != 1 || i == 0) os << f[i];
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

FieldCtx FieldCtx::create(std::uint32_t p, std::uint32_t k, std::optional<Poly> modulus) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k == 0) throw Error(ErrorCode::DegreeMismatch, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > (1ull << 31)) {
      throw Error(ErrorCode::ValueOutOfRange, "field order exceeds 2^31");
    }
  }
  Poly f;
  if (modulus) {
    f = *modulus;
    trim(f);
    if (f.size() != k + 1) {
      throw Error(ErrorCode::DegreeMismatch, "modulus " + poly_to_string(f) +
                                                 " does not have degree " + std::to_string(k));
    }
    for (auto c : f) {
      if (c >= p) throw Error(ErrorCode::DegreeMismatch, "modulus coefficient out of range");
    }
    if (f.back() != 1) throw Error(ErrorCode::DegreeMismatch, "modulus must be monic");
    if (!is_irreducible(f, p)) {
      throw Error(ErrorCode::ReducibleModulus, poly_to_string(f) + " is reducible over F_" +
                                                   std::to_string(p));
    }
  } else if (k == 1) {
    f = {0, 1};
  } else {
    f = smallest_irreducible(p, k);
  }
  return FieldCtx(p, k, std::move(f));
}

FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t k, Poly modulus)
    : p_(p), k_(k), q_(static_cast<std::uint32_t>(ipow(p, k))), modulus_(std::move(modulus)) {
  if (k_ > 1 && q_ <= kTableLimit) build_tables();
}

Elem FieldCtx::checked(std::uint64_t a) const {
  if (a >= q_) {
    throw Error(ErrorCode::ValueOutOfRange,
                std::to_string(a) + " is not an element of F_" + std::to_string(q_));
  }
  return static_cast<Elem>(a);
}

Elem FieldCtx::add(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>((std::uint64_t{a} + b) % p_);
  if (p_ == 2) return a ^ b;
  Elem out = 0;
  Elem place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += place * ((a % p_ + b % p_) % p_);
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

Elem FieldCtx::neg(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  if (p_ == 2) return a;
  Elem out = 0;
  Elem place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const Elem d = a % p_;
    out += place * (d == 0 ? 0 : p_ - d);
    a /= p_;
    place *= p_;
  }
  return out;
}

Elem FieldCtx::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FieldCtx::mul_poly(Elem a, Elem b) const {
  Poly fa(k_), fb(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    fa[i] = a % p_;
    fb[i] = b % p_;
    a /= p_;
    b /= p_;
  }
  Poly prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (fa[i] == 0) continue;
    for (std::uint32_t j = 0; j < k_; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + std::uint64_t{fa[i]} * fb[j]) % p_);
    }
  }
  Poly r = poly_rem(std::move(prod), modulus_, p_);
  Elem out = 0;
  for (std::size_t i = r.size(); i-- > 0;) out = out * p_ + r[i];
  return out;
}

Elem FieldCtx::mul(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
  if (a == 0 || b == 0) return 0;
  if (has_tables()) return exp_[log_[a] + log_[b]];
  return mul_poly(a, b);
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Elem FieldCtx::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (has_tables()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

Elem FieldCtx::dot(std::span<const Elem> u, std::span<const Elem> v) const {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "dot of vectors with dimensions " +
                                                  std::to_string(u.size()) + " and " +
                                                  std::to_string(v.size()));
  }
  if (k_ == 1) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc = (acc + std::uint64_t{u[i]} * v[i]) % p_;
    return static_cast<Elem>(acc);
  }
  Elem acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) acc = add(acc, mul(u[i], v[i]));
  return acc;
}

void FieldCtx::build_tables() {
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  auto slow_pow = [this](Elem a, std::uint64_t e) {
    Elem r = 1;
    while (e > 0) {
      if (e & 1) r = mul_poly(r, a);
      a = mul_poly(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem gen = 0;
  for (Elem g = 2; g < q_; ++g) {
    bool primitive = true;
    for (auto r : factors) {
      if (slow_pow(g, order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = g;
      break;
    }
  }
  log_.assign(q_, 0);
  exp_.assign(2 * order, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_poly(x, gen);
  }
}

std::string FieldCtx::describe() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (k_ > 1) os << " = F_" << p_ << "[x]/(" << poly_to_string(modulus_) << ")";
  return os.str();
}

}  // namespace dotvc
