#include <doctest.h>

#include "dotvc/error.hpp"
#include "dotvc/geometry.hpp"
#include "helpers.hpp"

using namespace dotvc;
using testing::field;
using testing::pt;

namespace {

std::uint64_t brute_intersection(const Point& y1, const Point& y2, Elem t, const FieldCtx& f) {
  std::uint64_t c = 0;
  for (std::uint64_t code = 0; code < space_size(f.q(), 3); ++code) {
    const Point x = decode(code, f.q(), 3);
    c += dot(x, y1, f) == t && dot(x, y2, f) == t;
  }
  return c;
}

}  // namespace

TEST_CASE("point encoding") {
  CHECK(encode(pt({1, 2, 3}), 5) == 1 * 25 + 2 * 5 + 3);
  CHECK(decode(38, 5, 3) == pt({1, 2, 3}));
  for (std::uint64_t c = 0; c < 64; ++c) CHECK(encode(decode(c, 4, 3), 4) == c);
}

TEST_CASE("point sets reject duplicates and bad coordinates") {
  auto f5 = field(5);
  CHECK_THROWS_WITH_AS(PointSet(f5, 3, {pt({1, 0, 0}), pt({1, 0, 0})}), doctest::Contains("DuplicatePoint"), Error);
  CHECK_THROWS_WITH_AS(PointSet(f5, 3, {pt({5, 0, 0})}), doctest::Contains("ValueOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(PointSet(f5, 3, {pt({1, 0})}), doctest::Contains("DimensionMismatch"), Error);
  const PointSet s(f5, 3, {pt({1, 0, 0}), pt({0, 1, 0})});
  CHECK(s.index_of(pt({0, 1, 0})) == 1u);
  CHECK_FALSE(s.contains(pt({0, 0, 1})));
  CHECK(PointSet::full_space(f5, 3).size() == 125);
}

TEST_CASE("plane points") {
  auto f5 = field(5);
  const auto plane = plane_points(pt({1, 0, 0}), 1, *f5);
  CHECK(plane.size() == 25);
  for (const auto& x : plane) CHECK(x.coords[0] == 1);
  CHECK(plane_points(pt({0, 0, 0}), 1, *f5).empty());
  CHECK(plane_points(pt({1, 1, 1}), 2, *field(3)).size() == 9);
  CHECK_THROWS_WITH_AS(plane_points(pt({1, 0, 0}), 0, *f5), doctest::Contains("ZeroT"), Error);
}

TEST_CASE("planes have q^2 points for every nonzero normal") {
  for (auto [p, k] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    auto f = field(p, k);
    for (std::uint64_t code = 1; code < space_size(f->q(), 3); ++code) {
      for (Elem t = 1; t < f->q(); ++t) {
        REQUIRE(plane_points(decode(code, f->q(), 3), t, *f).size() == f->q() * f->q());
      }
    }
  }
}

TEST_CASE("plane intersections") {
  auto f5 = field(5);
  CHECK(plane_intersection_size(pt({1, 0, 0}), pt({0, 1, 0}), 1, *f5) == 5);
  CHECK(plane_intersection_size(pt({1, 0, 0}), pt({1, 0, 0}), 1, *f5) == 25);
  CHECK(plane_intersection_size(pt({1, 0, 0}), pt({2, 0, 0}), 1, *f5) == 0);
  CHECK_THROWS_WITH_AS(plane_intersection_size(pt({0, 0, 0}), pt({1, 0, 0}), 1, *f5),
                       doctest::Contains("ZeroNormal"), Error);
}

TEST_CASE("intersection sizes match enumeration, never a single point") {
  for (auto [p, k] : {std::pair{3u, 1u}, {2u, 2u}}) {
    auto f = field(p, k);
    const std::uint64_t n = space_size(f->q(), 3);
    for (std::uint64_t a = 1; a < n; ++a)
      for (std::uint64_t b = 1; b < n; ++b) {
        const Point y1 = decode(a, f->q(), 3), y2 = decode(b, f->q(), 3);
        const auto size = plane_intersection_size(y1, y2, 1, *f);
        REQUIRE(size == brute_intersection(y1, y2, 1, *f));
        if (a != b) REQUIRE((size == 0 || size == f->q()));
      }
  }
}

TEST_CASE("loss") {
  auto f5 = field(5);
  CHECK(loss(pt({1, 0, 0}), pt({1, 0, 0}), 1, *f5).mismatches == 0);
  const auto r = loss(pt({1, 0, 0}), pt({0, 1, 0}), 1, *f5);
  CHECK(r.mismatches == 40);
  CHECK(r.total == 125);
  CHECK(r.fraction() == "40/125");
  CHECK(loss(pt({1, 0, 0}), pt({2, 0, 0}), 1, *f5).mismatches == 50);
  CHECK_THROWS_AS(loss(pt({1, 0, 0}), pt({2, 0, 0}), 0, *f5), Error);
}

TEST_CASE("loss is symmetric and follows the intersection closed form") {
  auto f = field(3);
  for (std::uint64_t a = 1; a < 27; ++a)
    for (std::uint64_t b = 1; b < 27; ++b) {
      const Point y = decode(a, 3, 3), ys = decode(b, 3, 3);
      const auto l = loss(y, ys, 2, *f);
      CHECK(l.mismatches == loss(ys, y, 2, *f).mismatches);
      CHECK(l.mismatches == 2 * 9 - 2 * plane_intersection_size(y, ys, 2, *f));
    }
}
