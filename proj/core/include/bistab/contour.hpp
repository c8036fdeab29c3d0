#pragma once

#include <functional>
#include <vector>

namespace bistab {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Polyline {
  std::vector<Point2> points;
  bool closed = false;
};

/// Scalar field sampled on a rectilinear grid: values[j * xs.size() + i] = field(xs[i], ys[j]).
struct GridField {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;
  std::function<double(double, double)> field;

  double at(std::size_t i, std::size_t j) const { return values[j * xs.size() + i]; }
  bool inside(std::size_t i, std::size_t j) const { return at(i, j) > 0.0; }
};

/// Zero level set of the field by marching squares. Crossing points are located by bisection of
/// the field along the grid edge; ambiguous cells are resolved with the field at the cell centre.
std::vector<Polyline> marching_squares(const GridField& grid);

/// Polygons covering the part {field > 0} of cell (i, j): one polygon in the generic case, two
/// triangles for an ambiguous cell whose centre is outside. Empty when the cell is all outside.
std::vector<std::vector<Point2>> clip_cell(const GridField& grid, std::size_t i, std::size_t j);

}  // namespace bistab
