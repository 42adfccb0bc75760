#include "scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tilefield_cli {

using nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMu0 = 4.0 * kPi * 1e-7;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SceneError("scene: " + where + ": " + what);
}

double get_num(const ordered_json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) fail(where, std::string("missing field '") + key + "'");
    if (!j[key].is_number()) fail(where, std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

std::array<double, 3> get_vec3(const ordered_json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) fail(where, std::string("missing field '") + key + "'");
    const auto& v = j[key];
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number())
        fail(where, std::string("field '") + key + "' must be an array of 3 numbers");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

struct Units {
    double length = 1.0;   // multiplier to meters
    double angle = kPi / 180.0;  // multiplier to radians (degrees by default)
    bool mag_is_mu0m = false;
};

Units parse_units(const ordered_json& root) {
    Units u;
    if (!root.contains("units")) return u;
    const auto& ju = root["units"];
    if (!ju.is_object()) fail("units", "must be an object");
    if (ju.contains("length")) {
        const std::string s = ju["length"].get<std::string>();
        if (s == "m") u.length = 1.0;
        else if (s == "mm") u.length = 1e-3;
        else fail("units.length", "expected 'm' or 'mm', got '" + s + "'");
    }
    if (ju.contains("angle")) {
        const std::string s = ju["angle"].get<std::string>();
        if (s == "deg") u.angle = kPi / 180.0;
        else if (s == "rad") u.angle = 1.0;
        else fail("units.angle", "expected 'deg' or 'rad', got '" + s + "'");
    }
    if (ju.contains("magnetization")) {
        const std::string s = ju["magnetization"].get<std::string>();
        if (s == "A_per_m") u.mag_is_mu0m = false;
        else if (s == "mu0M_tesla") u.mag_is_mu0m = true;
        else fail("units.magnetization", "expected 'A_per_m' or 'mu0M_tesla', got '" + s + "'");
    }
    return u;
}

}  // namespace

std::vector<std::array<double, 3>> Scene::expand_points() const {
    std::vector<std::array<double, 3>> pts;
    if (const auto* line = std::get_if<LineSampling>(&sampling)) {
        pts.reserve(line->count);
        for (std::size_t i = 0; i < line->count; ++i) {
            const double t = line->count > 1 ? double(i) / double(line->count - 1) : 0.0;
            pts.push_back({line->start[0] + t * (line->end[0] - line->start[0]),
                           line->start[1] + t * (line->end[1] - line->start[1]),
                           line->start[2] + t * (line->end[2] - line->start[2])});
        }
    } else if (const auto* grid = std::get_if<GridSampling>(&sampling)) {
        pts.reserve(grid->counts[0] * grid->counts[1] * grid->counts[2]);
        for (std::size_t i = 0; i < grid->counts[0]; ++i)
            for (std::size_t j = 0; j < grid->counts[1]; ++j)
                for (std::size_t k = 0; k < grid->counts[2]; ++k) {
                    std::array<double, 3> p{};
                    for (int d = 0; d < 3; ++d)
                        p[d] = grid->origin[d] + double(i) * grid->axes[0][d] +
                               double(j) * grid->axes[1][d] + double(k) * grid->axes[2][d];
                    pts.push_back(p);
                }
    } else {
        pts = std::get<PointsSampling>(sampling).points;
    }
    return pts;
}

Scene parse_scene(const std::string& json_text) {
    ordered_json root;
    try {
        root = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SceneError(std::string("scene: JSON parse error: ") + e.what());
    }
    if (!root.is_object()) fail("root", "must be a JSON object");

    Scene scene;
    if (root.contains("version")) {
        if (!root["version"].is_number_integer()) fail("version", "must be an integer");
        scene.version = root["version"].get<int>();
        if (scene.version != 1) fail("version", "unsupported schema version");
    }

    const Units units = parse_units(root);

    if (!root.contains("tiles") || !root["tiles"].is_array() || root["tiles"].empty())
        fail("tiles", "at least one tile is required");
    std::size_t idx = 0;
    for (const auto& jt : root["tiles"]) {
        const std::string where = "tiles[" + std::to_string(idx++) + "]";
        if (!jt.is_object()) fail(where, "must be an object");
        if (jt.contains("units")) fail(where, "units are declared once per scene, not per tile");
        tf_tile t{};
        t.r1 = get_num(jt, where, "r1") * units.length;
        t.r2 = get_num(jt, where, "r2") * units.length;
        t.theta1 = get_num(jt, where, "theta1") * units.angle;
        t.theta2 = get_num(jt, where, "theta2") * units.angle;
        t.z1 = get_num(jt, where, "z1") * units.length;
        t.z2 = get_num(jt, where, "z2") * units.length;
        const auto off = get_vec3(jt, where, "offset");
        const auto mag = get_vec3(jt, where, "magnetization");
        for (int d = 0; d < 3; ++d) {
            t.offset[d] = off[d] * units.length;
            t.magnetization[d] = units.mag_is_mu0m ? mag[d] / kMu0 : mag[d];
        }
        if (!(t.r1 >= 0.0 && t.r1 <= t.r2)) fail(where, "radii must satisfy 0 <= r1 <= r2");
        if (!(t.z1 <= t.z2)) fail(where, "axial extent must satisfy z1 <= z2");
        if (!(t.theta1 <= t.theta2)) fail(where, "angles must satisfy theta1 <= theta2");
        if (t.theta2 - t.theta1 > 2.0 * kPi + 1e-12) fail(where, "angular span exceeds 2*pi");
        scene.tiles.push_back(t);
    }

    if (!root.contains("sampling") || !root["sampling"].is_object())
        fail("sampling", "missing sampling object");
    const auto& js = root["sampling"];
    const int kinds = int(js.contains("line")) + int(js.contains("grid")) + int(js.contains("points"));
    if (kinds != 1) fail("sampling", "exactly one of 'line', 'grid', 'points' is required");

    if (js.contains("line")) {
        const auto& jl = js["line"];
        LineSampling line;
        const auto s = get_vec3(jl, "sampling.line", "start");
        const auto e = get_vec3(jl, "sampling.line", "end");
        for (int d = 0; d < 3; ++d) {
            line.start[d] = s[d] * units.length;
            line.end[d] = e[d] * units.length;
        }
        const double cnt = get_num(jl, "sampling.line", "count");
        if (!(cnt >= 1.0)) fail("sampling.line", "count must be >= 1");
        line.count = static_cast<std::size_t>(cnt);
        scene.sampling = line;
    } else if (js.contains("grid")) {
        const auto& jg = js["grid"];
        GridSampling grid;
        const auto o = get_vec3(jg, "sampling.grid", "origin");
        for (int d = 0; d < 3; ++d) grid.origin[d] = o[d] * units.length;
        if (!jg.contains("axes") || !jg["axes"].is_array() || jg["axes"].size() != 3)
            fail("sampling.grid", "axes must be an array of 3 step vectors");
        for (int a = 0; a < 3; ++a) {
            const auto& ja = jg["axes"][a];
            if (!ja.is_array() || ja.size() != 3)
                fail("sampling.grid", "each axis must be an array of 3 numbers");
            for (int d = 0; d < 3; ++d) grid.axes[a][d] = ja[d].get<double>() * units.length;
        }
        if (!jg.contains("counts") || !jg["counts"].is_array() || jg["counts"].size() != 3)
            fail("sampling.grid", "counts must be an array of 3 integers");
        for (int a = 0; a < 3; ++a) {
            const auto c = jg["counts"][a].get<long long>();
            if (c < 1) fail("sampling.grid", "counts must be >= 1");
            grid.counts[a] = static_cast<std::size_t>(c);
        }
        scene.sampling = grid;
    } else {
        const auto& jp = js["points"];
        if (!jp.is_array() || jp.empty()) fail("sampling.points", "must be a non-empty array");
        PointsSampling pt;
        for (const auto& p : jp) {
            if (!p.is_array() || p.size() != 3) fail("sampling.points", "each point must have 3 numbers");
            pt.points.push_back({p[0].get<double>() * units.length,
                                 p[1].get<double>() * units.length,
                                 p[2].get<double>() * units.length});
        }
        scene.sampling = pt;
    }

    if (root.contains("output")) {
        const auto& jo = root["output"];
        if (!jo.is_object()) fail("output", "must be an object");
        if (jo.contains("path")) scene.output_path = jo["path"].get<std::string>();
        if (jo.contains("format")) {
            scene.output_format = jo["format"].get<std::string>();
            if (scene.output_format != "csv" && scene.output_format != "jsonl")
                fail("output.format", "expected 'csv' or 'jsonl'");
        }
    }
    return scene;
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SceneError("scene: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str());
}

std::string serialize_scene(const Scene& scene) {
    ordered_json root;
    root["version"] = scene.version;
    root["units"] = {{"length", "m"}, {"angle", "rad"}, {"magnetization", "A_per_m"}};
    root["tiles"] = ordered_json::array();
    for (const auto& t : scene.tiles) {
        ordered_json jt;
        jt["r1"] = t.r1;
        jt["r2"] = t.r2;
        jt["theta1"] = t.theta1;
        jt["theta2"] = t.theta2;
        jt["z1"] = t.z1;
        jt["z2"] = t.z2;
        jt["offset"] = {t.offset[0], t.offset[1], t.offset[2]};
        jt["magnetization"] = {t.magnetization[0], t.magnetization[1], t.magnetization[2]};
        root["tiles"].push_back(jt);
    }
    if (const auto* line = std::get_if<LineSampling>(&scene.sampling)) {
        root["sampling"] = {{"line",
                             {{"start", {line->start[0], line->start[1], line->start[2]}},
                              {"end", {line->end[0], line->end[1], line->end[2]}},
                              {"count", line->count}}}};
    } else if (const auto* grid = std::get_if<GridSampling>(&scene.sampling)) {
        root["sampling"] = {{"grid",
                             {{"origin", {grid->origin[0], grid->origin[1], grid->origin[2]}},
                              {"axes",
                               {{grid->axes[0][0], grid->axes[0][1], grid->axes[0][2]},
                                {grid->axes[1][0], grid->axes[1][1], grid->axes[1][2]},
                                {grid->axes[2][0], grid->axes[2][1], grid->axes[2][2]}}},
                              {"counts", {grid->counts[0], grid->counts[1], grid->counts[2]}}}}};
    } else {
        const auto& pts = std::get<PointsSampling>(scene.sampling).points;
        ordered_json jp = ordered_json::array();
        for (const auto& p : pts) jp.push_back({p[0], p[1], p[2]});
        root["sampling"] = {{"points", jp}};
    }
    ordered_json jo;
    if (!scene.output_path.empty()) jo["path"] = scene.output_path;
    jo["format"] = scene.output_format;
    root["output"] = jo;
    return root.dump(2) + "\n";
}

bool scenes_equal(const Scene& a, const Scene& b) {
    return serialize_scene(a) == serialize_scene(b);
}

}  // namespace tilefield_cli
