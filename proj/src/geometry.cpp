#include "dotvc/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "dotvc/error.hpp"

namespace dotvc {

namespace {

void require_nonzero_t(Elem t) {
  if (t == 0) throw Error(ErrorCode::ZeroT, "t must be nonzero");
}

std::uint64_t upow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

bool Point::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](Elem c) { return c == 0; });
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) os << ',';
    os << p.coords[i];
  }
  return os.str();
}

std::uint64_t space_size(std::uint32_t q, std::size_t d) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (n > (std::uint64_t{1} << 62) / q) {
      throw Error(ErrorCode::ValueOutOfRange, "q^d does not fit in 62 bits");
    }
    n *= q;
  }
  return n;
}

std::uint64_t encode(const Point& p, std::uint32_t q) {
  std::uint64_t code = 0;
  for (Elem c : p.coords) code = code * q + c;
  return code;
}

Point decode(std::uint64_t code, std::uint32_t q, std::size_t d) {
  Point p{std::vector<Elem>(d, 0)};
  for (std::size_t i = d; i-- > 0;) {
    p.coords[i] = static_cast<Elem>(code % q);
    code /= q;
  }
  return p;
}

Elem dot(const Point& u, const Point& v, const FieldCtx& ctx) { return ctx.dot(u.span(), v.span()); }

Point add(const Point& u, const Point& v, const FieldCtx& ctx) {
  if (u.dim() != v.dim()) throw Error(ErrorCode::DimensionMismatch, "add of unequal dimensions");
  Point out{std::vector<Elem>(u.dim())};
  for (std::size_t i = 0; i < u.dim(); ++i) out.coords[i] = ctx.add(u.coords[i], v.coords[i]);
  return out;
}

PointSet::PointSet(std::shared_ptr<const FieldCtx> ctx, std::size_t d, std::vector<Point> points)
    : ctx_(std::move(ctx)), d_(d), points_(std::move(points)) {
  space_size(ctx_->q(), d_);
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.dim() != d_) {
      throw Error(ErrorCode::DimensionMismatch, "point " + to_string(p) + " is not " +
                                                    std::to_string(d_) + "-dimensional");
    }
    for (Elem c : p.coords) ctx_->checked(c);
    if (!index_.emplace(encode(p, ctx_->q()), i).second) {
      throw Error(ErrorCode::DuplicatePoint, "point " + to_string(p) + " appears twice");
    }
  }
}

PointSet PointSet::full_space(std::shared_ptr<const FieldCtx> ctx, std::size_t d) {
  const std::uint64_t n = space_size(ctx->q(), d);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::uint64_t code = 0; code < n; ++code) pts.push_back(decode(code, ctx->q(), d));
  return PointSet(std::move(ctx), d, std::move(pts));
}

std::optional<std::size_t> PointSet::index_of(const Point& p) const {
  if (p.dim() != d_) return std::nullopt;
  for (Elem c : p.coords) {
    if (c >= ctx_->q()) return std::nullopt;
  }
  auto it = index_.find(encode(p, ctx_->q()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (auto i : indices) pts.push_back(points_.at(i));
  return PointSet(ctx_, d_, std::move(pts));
}

std::vector<Point> plane_points(const Point& y, Elem t, const FieldCtx& ctx) {
  require_nonzero_t(t);
  std::vector<Point> out;
  if (y.is_zero()) return out;
  const std::uint64_t n = space_size(ctx.q(), y.dim());
  for (std::uint64_t code = 0; code < n; ++code) {
    Point x = decode(code, ctx.q(), y.dim());
    if (dot(x, y, ctx) == t) out.push_back(std::move(x));
  }
  return out;
}

std::uint64_t plane_intersection_size(const Point& y1, const Point& y2, Elem t,
                                      const FieldCtx& ctx) {
  require_nonzero_t(t);
  if (y1.dim() != y2.dim()) throw Error(ErrorCode::DimensionMismatch, "normals differ in dimension");
  if (y1.is_zero() || y2.is_zero()) throw Error(ErrorCode::ZeroNormal, "normal vector is zero");
  const std::size_t d = y1.dim();
  if (y1 == y2) return upow(ctx.q(), d - 1);
  // y2 = lambda * y1 with lambda != 1 gives disjoint parallel planes.
  std::size_t lead = 0;
  while (y1.coords[lead] == 0) ++lead;
  const Elem lambda = ctx.div(y2.coords[lead], y1.coords[lead]);
  bool parallel = true;
  for (std::size_t i = 0; i < d && parallel; ++i) {
    parallel = ctx.mul(lambda, y1.coords[i]) == y2.coords[i];
  }
  if (parallel) return 0;
  return upow(ctx.q(), d - 2);
}

std::string LossReport::fraction() const {
  return std::to_string(mismatches) + "/" + std::to_string(total);
}

LossReport loss(const Point& y, const Point& ystar, Elem t, const FieldCtx& ctx) {
  require_nonzero_t(t);
  if (y.dim() != ystar.dim()) throw Error(ErrorCode::DimensionMismatch, "hypotheses differ in dimension");
  LossReport r;
  r.total = space_size(ctx.q(), y.dim());
  Point x{std::vector<Elem>(y.dim(), 0)};
  for (std::uint64_t code = 0; code < r.total; ++code) {
    x = decode(code, ctx.q(), y.dim());
    if ((dot(x, y, ctx) == t) != (dot(x, ystar, ctx) == t)) ++r.mismatches;
  }
  return r;
}

}  // namespace dotvc
