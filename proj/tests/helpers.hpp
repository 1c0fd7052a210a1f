#pragma once

#include <memory>
#include <vector>

#include "dotvc/dotgraph.hpp"
#include "dotvc/experiments.hpp"

namespace testing {

inline std::shared_ptr<const dotvc::FieldCtx> field(std::uint32_t p, std::uint32_t k = 1) {
  return std::make_shared<const dotvc::FieldCtx>(dotvc::FieldCtx::create(p, k));
}

inline dotvc::Point pt(std::initializer_list<dotvc::Elem> c) { return dotvc::Point{std::vector<dotvc::Elem>(c)}; }

inline dotvc::DotGraph full_graph(std::uint32_t p, dotvc::Elem t = 1, std::uint32_t k = 1) {
  return dotvc::DotGraph(dotvc::PointSet::full_space(field(p, k), 3), t);
}

inline dotvc::DotGraph graph_of(std::uint32_t p, std::vector<dotvc::Point> pts, dotvc::Elem t = 1) {
  return dotvc::DotGraph(dotvc::PointSet(field(p), 3, std::move(pts)), t);
}

}  // namespace testing
