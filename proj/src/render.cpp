#include "refl/render.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace refl {

namespace {

constexpr int kSamples = 16;
constexpr double kDiskScale = 500.0;

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

Eigen::Vector2d klein_to_poincare(const Eigen::Vector2d& k) {
  const double r2 = std::min(k.squaredNorm(), 1.0);
  return k / (1.0 + std::sqrt(1.0 - r2));
}

struct Frame {
  bool disk = true;
  double scale = kDiskScale;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();

  Eigen::Vector2d screen(const Eigen::Vector2d& chart) const {
    const Eigen::Vector2d p = disk ? klein_to_poincare(chart) : chart;
    return {(p.x() - center.x()) * scale, -(p.y() - center.y()) * scale};
  }
};

std::string sampled_path(const Frame& fr, const std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>>& edges,
                         bool close) {
  std::ostringstream d;
  bool first = true;
  for (const auto& [a, b] : edges) {
    const int steps = close ? kSamples : kSamples + 1;
    for (int k = 0; k < steps; ++k) {
      const Eigen::Vector2d q = fr.screen(a + (b - a) * (static_cast<double>(k) / kSamples));
      d << (first ? "M" : " L") << num(q.x()) << "," << num(q.y());
      first = false;
    }
  }
  if (close) d << " Z";
  return d.str();
}

}  // namespace

std::optional<RenderSpec::Model> model_from_string(const std::string& s) {
  if (s == "auto") return RenderSpec::Model::Auto;
  if (s == "poincare_disk") return RenderSpec::Model::PoincareDisk;
  if (s == "euclidean_plane") return RenderSpec::Model::EuclideanPlane;
  return std::nullopt;
}

Rendering render_svg(const CoxeterMatrix& m, const RenderSpec& spec, const Bounds& bounds, const Tolerances& tol) {
  if (m.rank() != 3) throw input_error("render needs a rank-3 group (dimension 2)");
  if (spec.depth < 0) throw input_error("render depth must be non-negative");
  const Signature sig = signature(gram_from_coxeter(m), tol.sig);
  if (sig.plus == 3) throw input_error("render needs a Euclidean or hyperbolic group, got an elliptic one");
  const Polytope f = realize_fundamental(m, tol);
  const bool hyperbolic = f.space().hyperbolic();
  if (spec.model == RenderSpec::Model::PoincareDisk && !hyperbolic)
    throw input_error("poincare_disk needs a hyperbolic group");
  if (spec.model == RenderSpec::Model::EuclideanPlane && hyperbolic)
    throw input_error("euclidean_plane needs a Euclidean group");

  const ChamberSet cs = chamber_bfs(m, spec.depth, bounds.max_chambers, tol);
  const Tiling tiling = build_tiling(f, cs, tol);
  std::set<ElementKey> marked;
  if (spec.highlight) {
    const SubgroupChamber sc = subgroup_chamber(m, *spec.highlight, bounds, tol);
    for (const auto& c : sc.chambers.chambers) marked.insert(c.key);
  }

  Frame fr;
  fr.disk = hyperbolic;
  Eigen::Vector2d lo(-1, -1), hi(1, 1);
  if (!hyperbolic) {
    bool any = false;
    for (const auto& t : tiling.tiles)
      for (const auto& v : t.polytope.vertices()) {
        const Eigen::Vector2d p = v.point;
        lo = any ? lo.cwiseMin(p) : p;
        hi = any ? hi.cwiseMax(p) : p;
        any = true;
      }
    const Eigen::Vector2d pad = ((hi - lo) * 0.05).cwiseMax(Eigen::Vector2d(0.5, 0.5));
    lo -= pad;
    hi += pad;
    fr.center = (lo + hi) / 2;
    fr.scale = 1000.0 / (hi - lo).maxCoeff();
  }
  const double half_w = hyperbolic ? kDiskScale * 1.02 : (hi.x() - lo.x()) / 2 * fr.scale;
  const double half_h = hyperbolic ? kDiskScale * 1.02 : (hi.y() - lo.y()) / 2 * fr.scale;

  Rendering out;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(-half_w) << " " << num(-half_h) << " "
      << num(2 * half_w) << " " << num(2 * half_h) << "\">\n";
  svg << "<style>.chamber{fill:none;stroke:#333;stroke-width:" << num(spec.chamber_stroke)
      << "}.highlight{fill:#f4c542;fill-opacity:0.6}.mirror{fill:none;stroke:#c0392b;stroke-width:"
      << num(spec.mirror_stroke) << "}.boundary{fill:none;stroke:#000;stroke-width:1}</style>\n";
  if (hyperbolic) svg << "<circle class=\"boundary\" cx=\"0\" cy=\"0\" r=\"" << num(kDiskScale) << "\"/>\n";
  for (std::size_t k = 0; k < tiling.tiles.size(); ++k) {
    std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>> edges;
    for (const auto& sg : tiling.tiles[k].polytope.segments()) edges.push_back({sg.start, sg.end});
    const bool hl = marked.contains(cs.chambers[k].key);
    svg << "<path class=\"chamber" << (hl ? " highlight" : "") << "\" d=\"" << sampled_path(fr, edges, true) << "\"/>\n";
    ++out.chambers;
    out.highlighted += hl;
  }
  // Base chamber walls, extended across the visible region.
  for (const auto& h : f.facets()) {
    const Eigen::Vector2d a(h.normal(0), h.normal(1));
    const double c = hyperbolic ? h.normal(2) : h.offset;
    const Eigen::Vector2d foot = a * (c / a.squaredNorm());
    const Eigen::Vector2d dir(-a.y(), a.x());
    double reach;
    if (hyperbolic) {
      const double r2 = foot.squaredNorm();
      if (r2 >= 1.0) continue;
      reach = std::sqrt(1.0 - r2) / dir.norm();
    } else {
      reach = 2.0 * (hi - lo).norm() + (foot - fr.center).norm();
      reach /= dir.norm();
    }
    svg << "<path class=\"mirror\" d=\"" << sampled_path(fr, {{foot - reach * dir, foot + reach * dir}}, false)
        << "\"/>\n";
  }
  svg << "</svg>\n";
  out.svg = svg.str();
  return out;
}

}  // namespace refl
