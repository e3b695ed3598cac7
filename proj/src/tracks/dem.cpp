#include "trackforge/tracks/dem.hpp"

#include <cmath>
#include <string>

#include "trackforge/util/csv.hpp"

namespace trackforge::tracks {

DemGrid::DemGrid(double origin_lat, double origin_lon, double cell_deg, int nrows,
                 int ncols, double nodata, std::vector<double> values)
    : origin_lat_(origin_lat),
      origin_lon_(origin_lon),
      cell_deg_(cell_deg),
      nrows_(nrows),
      ncols_(ncols),
      nodata_(nodata),
      values_(std::move(values)) {
    if (cell_deg_ <= 0.0) throw TracksError("DEM cell size must be positive");
    if (nrows_ < 2 || ncols_ < 2) throw TracksError("DEM needs at least a 2x2 grid");
    if (values_.size() != static_cast<std::size_t>(nrows_) * static_cast<std::size_t>(ncols_))
        throw TracksError("DEM value count does not match nrows*ncols");
}

DemGrid DemGrid::load(const std::filesystem::path& path) {
    util::CsvFile csv;
    try {
        csv = util::read_csv(path);
    } catch (const std::exception& e) {
        throw TracksError(e.what());
    }
    const std::vector<std::string> expected = {"nrows",      "ncols",    "origin_lat",
                                               "origin_lon", "cell_deg", "nodata"};
    if (csv.header != expected || csv.rows.empty())
        throw TracksError("bad DEM header in " + path.string());

    const auto& meta = csv.rows[0];
    const auto nrows = util::parse_int(meta.at(0));
    const auto ncols = util::parse_int(meta.at(1));
    const auto olat = util::parse_double(meta.at(2));
    const auto olon = util::parse_double(meta.at(3));
    const auto cell = util::parse_double(meta.at(4));
    const auto nodata = util::parse_double(meta.at(5));
    if (!nrows || !ncols || !olat || !olon || !cell || !nodata)
        throw TracksError("bad DEM metadata in " + path.string());
    if (csv.rows.size() != static_cast<std::size_t>(*nrows) + 1)
        throw TracksError("DEM row count mismatch in " + path.string());

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(*nrows * *ncols));
    for (std::size_t r = 1; r < csv.rows.size(); ++r) {
        const auto& row = csv.rows[r];
        if (row.size() != static_cast<std::size_t>(*ncols))
            throw TracksError("DEM column count mismatch in " + path.string());
        for (const auto& field : row) {
            const auto v = util::parse_double(field);
            if (!v) throw TracksError("bad DEM value '" + field + "'");
            values.push_back(*v);
        }
    }
    return DemGrid(*olat, *olon, *cell, static_cast<int>(*nrows),
                   static_cast<int>(*ncols), *nodata, std::move(values));
}

void DemGrid::save(const std::filesystem::path& path) const {
    std::string out = "nrows,ncols,origin_lat,origin_lon,cell_deg,nodata\n";
    out += std::to_string(nrows_) + ',' + std::to_string(ncols_) + ',' +
           util::format_double(origin_lat_) + ',' + util::format_double(origin_lon_) +
           ',' + util::format_double(cell_deg_) + ',' + util::format_double(nodata_) +
           '\n';
    for (int r = 0; r < nrows_; ++r) {
        for (int c = 0; c < ncols_; ++c) {
            if (c > 0) out += ',';
            out += util::format_double(at(r, c));
        }
        out += '\n';
    }
    util::write_text_file(path, out);
}

double DemGrid::at(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * static_cast<std::size_t>(ncols_) +
                   static_cast<std::size_t>(col)];
}

bool DemGrid::covers(double lat_deg, double lon_deg) const {
    const double fr = (lat_deg - origin_lat_) / cell_deg_;
    const double fc = (lon_deg - origin_lon_) / cell_deg_;
    return fr >= 0.0 && fr <= static_cast<double>(nrows_ - 1) && fc >= 0.0 &&
           fc <= static_cast<double>(ncols_ - 1);
}

double DemGrid::terrain_ft(double lat_deg, double lon_deg) const {
    if (!covers(lat_deg, lon_deg))
        throw OutOfCoverage("point (" + util::format_double(lat_deg) + ", " +
                            util::format_double(lon_deg) + ") outside DEM");
    const double fr = (lat_deg - origin_lat_) / cell_deg_;
    const double fc = (lon_deg - origin_lon_) / cell_deg_;
    int r0 = static_cast<int>(std::floor(fr));
    int c0 = static_cast<int>(std::floor(fc));
    r0 = std::min(r0, nrows_ - 2);
    c0 = std::min(c0, ncols_ - 2);
    const double u = fr - r0;
    const double v = fc - c0;

    auto value = [&](int r, int c) {
        const double e = at(r, c);
        return e == nodata_ ? 0.0 : e;
    };
    const double v00 = value(r0, c0);
    const double v01 = value(r0, c0 + 1);
    const double v10 = value(r0 + 1, c0);
    const double v11 = value(r0 + 1, c0 + 1);
    return (1 - u) * ((1 - v) * v00 + v * v01) + u * ((1 - v) * v10 + v * v11);
}

}  // namespace trackforge::tracks
