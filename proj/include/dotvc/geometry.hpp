#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dotvc/gf.hpp"

namespace dotvc {

struct Point {
  std::vector<Elem> coords;

  std::size_t dim() const { return coords.size(); }
  bool is_zero() const;
  std::span<const Elem> span() const { return coords; }

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;
};

// "a,b,c" using the integer element encodings.
std::string to_string(const Point& p);

// Point <-> integer in [0, q^d), first coordinate most significant, so that
// increasing codes enumerate F_q^d lexicographically.
std::uint64_t encode(const Point& p, std::uint32_t q);
Point decode(std::uint64_t code, std::uint32_t q, std::size_t d);

// q^d, throwing ValueOutOfRange when it does not fit in 62 bits.
std::uint64_t space_size(std::uint32_t q, std::size_t d);

Elem dot(const Point& u, const Point& v, const FieldCtx& ctx);
Point add(const Point& u, const Point& v, const FieldCtx& ctx);

// An indexed, duplicate-free subset E of F_q^d. Indices are stable.
class PointSet {
 public:
  // Throws DuplicatePoint, DimensionMismatch or ValueOutOfRange.
  PointSet(std::shared_ptr<const FieldCtx> ctx, std::size_t d, std::vector<Point> points);

  static PointSet full_space(std::shared_ptr<const FieldCtx> ctx, std::size_t d);

  const FieldCtx& ctx() const { return *ctx_; }
  const std::shared_ptr<const FieldCtx>& ctx_ptr() const { return ctx_; }
  std::size_t dim() const { return d_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  std::optional<std::size_t> index_of(const Point& p) const;
  bool contains(const Point& p) const { return index_of(p).has_value(); }

  // Subset in the order given by `indices`.
  PointSet subset(std::span<const std::size_t> indices) const;

 private:
  std::shared_ptr<const FieldCtx> ctx_;
  std::size_t d_;
  std::vector<Point> points_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

// The plane {x in F_q^d : x.y = t}. Throws ZeroT for t = 0. Empty for y = 0.
std::vector<Point> plane_points(const Point& y, Elem t, const FieldCtx& ctx);

// |{x : x.y1 = t = x.y2}| for d = 3, which is q^2 when y1 = y2, 0 when the
// normals are parallel but distinct, and q otherwise. Throws ZeroT, ZeroNormal
// or DimensionMismatch.
std::uint64_t plane_intersection_size(const Point& y1, const Point& y2, Elem t,
                                      const FieldCtx& ctx);

// Exact disagreement of h_y and h_ystar under the uniform distribution on
// F_q^d.
struct LossReport {
  std::uint64_t mismatches = 0;
  std::uint64_t total = 0;

  double value() const { return static_cast<double>(mismatches) / static_cast<double>(total); }
  // Unreduced "mismatches/total".
  std::string fraction() const;
};

LossReport loss(const Point& y, const Point& ystar, Elem t, const FieldCtx& ctx);

}  // namespace dotvc
