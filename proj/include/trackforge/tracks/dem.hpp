#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

namespace trackforge::tracks {

struct TracksError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfCoverage : TracksError {
    using TracksError::TracksError;
};
struct DegenerateSegment : TracksError {
    using TracksError::TracksError;
};
struct CorruptArchive : TracksError {
    using TracksError::TracksError;
};

// Regular lat/lon elevation raster. Node (r, c) sits at
// (origin_lat + r*cell_deg, origin_lon + c*cell_deg); values are feet MSL,
// row-major, with `nodata` marking missing cells (treated as sea level).
class DemGrid {
public:
    DemGrid() = default;
    DemGrid(double origin_lat, double origin_lon, double cell_deg, int nrows,
            int ncols, double nodata, std::vector<double> values);

    // File format: two header lines
    //   nrows,ncols,origin_lat,origin_lon,cell_deg,nodata
    //   <values...>
    // followed by nrows comma-separated rows of ncols elevations.
    static DemGrid load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    bool covers(double lat_deg, double lon_deg) const;

    // Bilinear interpolation of the four surrounding nodes; nodata nodes
    // enter the blend as 0 ft. Throws OutOfCoverage outside the grid.
    double terrain_ft(double lat_deg, double lon_deg) const;

    double at(int row, int col) const;
    int nrows() const { return nrows_; }
    int ncols() const { return ncols_; }
    double origin_lat() const { return origin_lat_; }
    double origin_lon() const { return origin_lon_; }
    double cell_deg() const { return cell_deg_; }
    double nodata() const { return nodata_; }

private:
    double origin_lat_ = 0.0;
    double origin_lon_ = 0.0;
    double cell_deg_ = 1.0;
    int nrows_ = 0;
    int ncols_ = 0;
    double nodata_ = -9999.0;
    std::vector<double> values_;
};

}  // namespace trackforge::tracks
