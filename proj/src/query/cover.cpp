#include "trackforge/query/cover.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "trackforge/query/aerodrome.hpp"

namespace trackforge::query {

namespace {

using Cell = std::pair<std::int64_t, std::int64_t>;  // (row, col)

geo::GeoRect cell_rect(const Cell& cell, double g) {
    return {static_cast<double>(cell.first) * g,
            static_cast<double>(cell.first + 1) * g,
            static_cast<double>(cell.second) * g,
            static_cast<double>(cell.second + 1) * g};
}

// Every lattice cell that intersects any polygon (exact cell/polygon test).
std::set<Cell> marked_cells(std::span<const geo::Polygon> polygons, double g) {
    std::set<Cell> cells;
    for (const auto& polygon : polygons) {
        if (polygon.empty()) continue;
        double lat_min = polygon[0].lat_deg, lat_max = polygon[0].lat_deg;
        double lon_min = polygon[0].lon_deg, lon_max = polygon[0].lon_deg;
        for (const auto& v : polygon) {
            lat_min = std::min(lat_min, v.lat_deg);
            lat_max = std::max(lat_max, v.lat_deg);
            lon_min = std::min(lon_min, v.lon_deg);
            lon_max = std::max(lon_max, v.lon_deg);
        }
        const auto r0 = static_cast<std::int64_t>(std::floor(lat_min / g));
        const auto r1 = static_cast<std::int64_t>(std::floor(lat_max / g));
        const auto c0 = static_cast<std::int64_t>(std::floor(lon_min / g));
        const auto c1 = static_cast<std::int64_t>(std::floor(lon_max / g));
        for (std::int64_t r = r0; r <= r1; ++r) {
            for (std::int64_t c = c0; c <= c1; ++c) {
                const Cell cell{r, c};
                if (cells.count(cell)) continue;
                if (geo::polygon_intersects_rect(polygon, cell_rect(cell, g)))
                    cells.insert(cell);
            }
        }
    }
    return cells;
}

// Directions in counterclockwise order, so (d+1)%4 is a left turn.
enum Dir { E = 0, N = 1, W = 2, S = 3 };

struct BoundaryEdge {
    std::int64_t row = 0, col = 0;  // start corner
    int dir = E;
    bool used = false;
};

Cell edge_end(const BoundaryEdge& e) {
    switch (e.dir) {
        case E: return {e.row, e.col + 1};
        case N: return {e.row + 1, e.col};
        case W: return {e.row, e.col - 1};
        default: return {e.row - 1, e.col};
    }
}

void drop_collinear(std::vector<Cell>& corners) {
    std::vector<Cell> out;
    const std::size_t n = corners.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& prev = corners[(i + n - 1) % n];
        const auto& cur = corners[i];
        const auto& next = corners[(i + 1) % n];
        const bool same_row = prev.first == cur.first && cur.first == next.first;
        const bool same_col = prev.second == cur.second && cur.second == next.second;
        if (!same_row && !same_col) out.push_back(cur);
    }
    corners.swap(out);
}

// Traces the boundaries of the marked-cell union with the interior on the
// left: counterclockwise loops are outer boundaries, clockwise loops are
// holes (dropped; keeping them would only shrink the union).
std::vector<geo::Polygon> trace_boundaries(const std::set<Cell>& cells, double g) {
    std::vector<BoundaryEdge> edges;
    for (const auto& [r, c] : cells) {
        if (!cells.count({r - 1, c})) edges.push_back({r, c, E, false});
        if (!cells.count({r, c + 1})) edges.push_back({r, c + 1, N, false});
        if (!cells.count({r + 1, c})) edges.push_back({r + 1, c + 1, W, false});
        if (!cells.count({r, c - 1})) edges.push_back({r + 1, c, S, false});
    }

    std::map<Cell, std::vector<std::size_t>> outgoing;
    for (std::size_t i = 0; i < edges.size(); ++i)
        outgoing[{edges[i].row, edges[i].col}].push_back(i);

    auto next_edge = [&](const Cell& corner, int incoming_dir) -> std::size_t {
        // Prefer a left turn, then straight, then right: keeps pinched
        // corners from producing self-crossing loops.
        for (int turn : {1, 0, 3}) {
            const int want = (incoming_dir + turn) % 4;
            for (const std::size_t j : outgoing[corner]) {
                if (!edges[j].used && edges[j].dir == want) return j;
            }
        }
        return edges.size();
    };

    std::vector<geo::Polygon> polygons;
    for (std::size_t start = 0; start < edges.size(); ++start) {
        if (edges[start].used) continue;
        std::vector<Cell> corners;
        std::size_t cur = start;
        long long area2 = 0;  // twice the signed shoelace area in grid units
        while (true) {
            edges[cur].used = true;
            const Cell a{edges[cur].row, edges[cur].col};
            const Cell b = edge_end(edges[cur]);
            area2 += static_cast<long long>(a.second) * b.first -
                     static_cast<long long>(b.second) * a.first;
            corners.push_back(a);
            if (b == Cell{edges[start].row, edges[start].col}) break;
            cur = next_edge(b, edges[cur].dir);
            if (cur == edges.size())
                throw QuerygenError("boundary trace lost its loop (internal error)");
        }
        if (area2 <= 0) continue;  // hole
        drop_collinear(corners);
        geo::Polygon polygon;
        polygon.reserve(corners.size());
        for (const auto& [r, c] : corners)
            polygon.push_back({static_cast<double>(r) * g, static_cast<double>(c) * g});
        polygons.push_back(std::move(polygon));
    }
    return polygons;
}

std::vector<std::vector<Cell>> connected_components(const std::set<Cell>& cells) {
    std::vector<std::vector<Cell>> components;
    std::set<Cell> seen;
    for (const auto& seed : cells) {
        if (seen.count(seed)) continue;
        std::vector<Cell> component;
        std::deque<Cell> frontier{seed};
        seen.insert(seed);
        while (!frontier.empty()) {
            const Cell cell = frontier.front();
            frontier.pop_front();
            component.push_back(cell);
            const auto [r, c] = cell;
            for (const Cell& n : {Cell{r - 1, c}, Cell{r + 1, c}, Cell{r, c - 1},
                                  Cell{r, c + 1}}) {
                if (cells.count(n) && !seen.count(n)) {
                    seen.insert(n);
                    frontier.push_back(n);
                }
            }
        }
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
    }
    return components;
}

}  // namespace

std::vector<geo::Polygon> union_polygons(std::span<const geo::Polygon> polygons,
                                         double cell_deg) {
    if (cell_deg <= 0.0) throw QuerygenError("union cell size must be positive");
    return trace_boundaries(marked_cells(polygons, cell_deg), cell_deg);
}

double RectilinearRegion::area_deg2() const {
    return static_cast<double>(cells.size()) * cell_deg * cell_deg;
}

std::vector<RectilinearRegion> rectilinear_cover(std::span<const geo::Polygon> polygons,
                                                 double grid_deg) {
    if (grid_deg <= 0.0) throw QuerygenError("cover grid size must be positive");
    std::vector<RectilinearRegion> regions;
    for (auto& component : connected_components(marked_cells(polygons, grid_deg))) {
        RectilinearRegion region;
        region.cell_deg = grid_deg;
        region.cells = std::move(component);
        regions.push_back(std::move(region));
    }
    return regions;
}

std::vector<geo::GeoRect> join_split_rectangles(
    std::span<const RectilinearRegion> regions, double max_span_deg) {
    if (max_span_deg <= 0.0) throw QuerygenError("max span must be positive");

    std::vector<geo::GeoRect> rects;
    for (const auto& region : regions) {
        const double g = region.cell_deg;

        // Row runs of consecutive cells.
        struct Run {
            std::int64_t row, c0, c1;
        };
        std::vector<Run> runs;
        for (const auto& [r, c] : region.cells) {
            if (!runs.empty() && runs.back().row == r && runs.back().c1 + 1 == c)
                ++runs.back().c1;
            else
                runs.push_back({r, c, c});
        }

        // Stack runs with identical column extents into taller rectangles.
        struct Open {
            std::int64_t c0, c1, row_first, row_last;
        };
        std::vector<Open> open;
        std::vector<Open> closed;
        std::size_t idx = 0;
        while (idx < runs.size()) {
            const std::int64_t row = runs[idx].row;
            for (; idx < runs.size() && runs[idx].row == row; ++idx) {
                const auto& run = runs[idx];
                bool extended = false;
                for (auto& o : open) {
                    if (o.c0 == run.c0 && o.c1 == run.c1 && o.row_last + 1 == row) {
                        o.row_last = row;
                        extended = true;
                        break;
                    }
                }
                if (!extended) open.push_back({run.c0, run.c1, row, row});
            }
            // Retire every rectangle this row failed to extend.
            std::erase_if(open, [&](const Open& o) {
                if (o.row_last == row) return false;
                closed.push_back(o);
                return true;
            });
        }
        closed.insert(closed.end(), open.begin(), open.end());

        // Split anything spanning more than max_span_deg into equal parts.
        for (const auto& o : closed) {
            const double lat_min = static_cast<double>(o.row_first) * g;
            const double lat_max = static_cast<double>(o.row_last + 1) * g;
            const double lon_min = static_cast<double>(o.c0) * g;
            const double lon_max = static_cast<double>(o.c1 + 1) * g;
            const auto pieces = [&](double span) {
                return std::max<std::int64_t>(
                    1, static_cast<std::int64_t>(
                           std::ceil(span / max_span_deg - 1e-9)));
            };
            const std::int64_t k_lat = pieces(lat_max - lat_min);
            const std::int64_t k_lon = pieces(lon_max - lon_min);
            for (std::int64_t i = 0; i < k_lat; ++i) {
                for (std::int64_t j = 0; j < k_lon; ++j) {
                    geo::GeoRect rect;
                    rect.lat_min = lat_min + (lat_max - lat_min) * static_cast<double>(i) /
                                                 static_cast<double>(k_lat);
                    rect.lat_max = lat_min + (lat_max - lat_min) *
                                                 static_cast<double>(i + 1) /
                                                 static_cast<double>(k_lat);
                    rect.lon_min = lon_min + (lon_max - lon_min) * static_cast<double>(j) /
                                                 static_cast<double>(k_lon);
                    rect.lon_max = lon_min + (lon_max - lon_min) *
                                                 static_cast<double>(j + 1) /
                                                 static_cast<double>(k_lon);
                    rects.push_back(rect);
                }
            }
        }
    }
    std::sort(rects.begin(), rects.end(), [](const geo::GeoRect& a, const geo::GeoRect& b) {
        if (a.lat_min != b.lat_min) return a.lat_min < b.lat_min;
        return a.lon_min < b.lon_min;
    });
    return rects;
}

}  // namespace trackforge::query
