#pragma once

#include <optional>
#include <string>

#include "refl/engine.hpp"

namespace refl {

struct RenderSpec {
  enum class Model { Auto, PoincareDisk, EuclideanPlane };
  Model model = Model::Auto;
  int depth = 6;
  double chamber_stroke = 0.5;
  double mirror_stroke = 2.0;
  std::optional<SubgroupSpec> highlight;  ///< fill the chamber of this subgroup
};

struct Rendering {
  std::string svg;
  int chambers = 0;
  int highlighted = 0;
};

/// One path per chamber of chamber_bfs(m, depth), the base chamber's walls as
/// mirrors. Throws InputError unless m is a rank-3 Euclidean or hyperbolic
/// group and the model matches its geometry.
Rendering render_svg(const CoxeterMatrix& m, const RenderSpec& spec, const Bounds& bounds = {},
                     const Tolerances& tol = {});

std::optional<RenderSpec::Model> model_from_string(const std::string& s);

}  // namespace refl
