#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "holsh/maps/circle_example.hpp"
#include "holsh/maps/smooth_map.hpp"

namespace holsh::maps {

struct CatalogOptions {
  CircleExampleParams circle;
  double henon_a = 1.4;
  double henon_b = 0.3;
};

/// Names in catalogue order: circle_example, cat, contraction, identity, henon.
std::vector<std::string> map_names();

std::vector<SmoothMap> builtin_maps(const CatalogOptions& options = {});

/// Throws PreconditionError for names not in map_names().
SmoothMap find_map(std::string_view name, const CatalogOptions& options = {});

SmoothMap make_cat_map();
SmoothMap make_contraction();
SmoothMap make_identity(int dim = 2);
SmoothMap make_henon(double a = 1.4, double b = 0.3);

}  // namespace holsh::maps
