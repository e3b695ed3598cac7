#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "trackforge/geo/geometry.hpp"

namespace trackforge::query {

// Merges overlapping polygons into disjoint (possibly nonconvex) outlines.
// Conservative: the result covers every input polygon. Implementation
// rasterizes onto a cell_deg lattice (cells that touch any polygon count as
// covered), takes 4-connected components, and traces their outer boundaries;
// interior holes are dropped, which only enlarges the union.
std::vector<geo::Polygon> union_polygons(std::span<const geo::Polygon> polygons,
                                         double cell_deg = 0.01);

// One connected set of lattice cells. Cell (row, col) spans
// [row*cell_deg, (row+1)*cell_deg) latitude x [col*cell_deg, (col+1)*cell_deg)
// longitude on the absolute lattice, so covers built from different inputs
// tile consistently.
struct RectilinearRegion {
    double cell_deg = 0.05;
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;  // sorted (row, col)

    double area_deg2() const;
};

// Conservative rectilinear cover: every grid_deg lattice cell that intersects
// any input polygon, grouped into 4-connected regions (sorted by first cell).
// The union of the returned regions contains the union of the inputs.
std::vector<RectilinearRegion> rectilinear_cover(std::span<const geo::Polygon> polygons,
                                                 double grid_deg = 0.05);

// Decomposes each region into axis-aligned rectangles (row sweep, stacking
// runs with identical column extents), then divides any rectangle whose lat
// or lon span exceeds max_span_deg into the minimal number of equal parts.
// Output rectangles have pairwise disjoint interiors and exactly tile the
// input regions.
std::vector<geo::GeoRect> join_split_rectangles(
    std::span<const RectilinearRegion> regions, double max_span_deg = 2.0);

}  // namespace trackforge::query
