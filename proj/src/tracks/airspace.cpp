#include "trackforge/tracks/airspace.hpp"

#include <fstream>

#include "json.hpp"
#include "trackforge/util/csv.hpp"

namespace trackforge::tracks {

using nlohmann::json;

const char* airspace_class_name(AirspaceClass cls) {
    switch (cls) {
        case AirspaceClass::B: return "B";
        case AirspaceClass::C: return "C";
        case AirspaceClass::D: return "D";
        case AirspaceClass::other: return "other";
    }
    return "other";
}

AirspaceClass airspace_class_from_name(const std::string& name) {
    if (name == "B") return AirspaceClass::B;
    if (name == "C") return AirspaceClass::C;
    if (name == "D") return AirspaceClass::D;
    return AirspaceClass::other;
}

std::vector<AirspaceVolume> load_airspace_geojson(const std::filesystem::path& path) {
    json root;
    try {
        root = json::parse(util::read_text_file(path));
    } catch (const std::exception& e) {
        throw TracksError("failed to parse airspace file " + path.string() + ": " +
                          e.what());
    }
    if (root.value("type", "") != "FeatureCollection" || !root.contains("features"))
        throw TracksError("airspace file is not a FeatureCollection: " + path.string());

    std::vector<AirspaceVolume> volumes;
    for (const auto& feature : root["features"]) {
        const auto& geometry = feature.at("geometry");
        if (geometry.value("type", "") != "Polygon")
            throw TracksError("airspace features must be Polygons: " + path.string());
        const auto& props = feature.at("properties");

        AirspaceVolume volume;
        volume.name = props.value("name", "");
        volume.cls = airspace_class_from_name(props.value("class", "other"));
        volume.floor_ft_agl = props.value("floor_ft_agl", 0.0);
        volume.ceiling_ft_agl = props.value("ceiling_ft_agl", 0.0);
        if (volume.floor_ft_agl >= volume.ceiling_ft_agl)
            throw TracksError("airspace volume with floor >= ceiling: " + volume.name);

        const auto& ring = geometry.at("coordinates").at(0);
        for (const auto& coord : ring) {
            // GeoJSON order: [lon, lat]
            volume.boundary.push_back({coord.at(1).get<double>(), coord.at(0).get<double>()});
        }
        // Drop the GeoJSON closing vertex.
        if (volume.boundary.size() > 1 &&
            volume.boundary.front().lat_deg == volume.boundary.back().lat_deg &&
            volume.boundary.front().lon_deg == volume.boundary.back().lon_deg)
            volume.boundary.pop_back();
        if (volume.boundary.size() < 3)
            throw TracksError("airspace polygon needs at least 3 vertices: " + volume.name);
        volumes.push_back(std::move(volume));
    }
    return volumes;
}

void save_airspace_geojson(const std::filesystem::path& path,
                           std::span<const AirspaceVolume> volumes) {
    json features = json::array();
    for (const auto& volume : volumes) {
        json ring = json::array();
        for (const auto& v : volume.boundary) ring.push_back({v.lon_deg, v.lat_deg});
        ring.push_back({volume.boundary.front().lon_deg, volume.boundary.front().lat_deg});
        features.push_back({
            {"type", "Feature"},
            {"properties",
             {{"name", volume.name},
              {"class", airspace_class_name(volume.cls)},
              {"floor_ft_agl", volume.floor_ft_agl},
              {"ceiling_ft_agl", volume.ceiling_ft_agl}}},
            {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({ring})}}},
        });
    }
    const json root = {{"type", "FeatureCollection"}, {"features", features}};
    util::write_text_file(path, root.dump(2) + "\n");
}

AirspaceClass classify_airspace(const geo::LatLon& point, double alt_agl_ft,
                                std::span<const AirspaceVolume> volumes) {
    AirspaceClass best = AirspaceClass::other;
    for (const auto& volume : volumes) {
        if (alt_agl_ft < volume.floor_ft_agl || alt_agl_ft > volume.ceiling_ft_agl)
            continue;
        if (!geo::point_in_polygon(point, volume.boundary)) continue;
        if (static_cast<int>(volume.cls) < static_cast<int>(best)) best = volume.cls;
    }
    return best;
}

}  // namespace trackforge::tracks
