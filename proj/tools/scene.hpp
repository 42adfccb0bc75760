#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tilefield/tilefield.h"

namespace tilefield_cli {

struct SceneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LineSampling {
    std::array<double, 3> start{}, end{};
    std::size_t count = 1;
};

struct GridSampling {
    std::array<double, 3> origin{};
    std::array<std::array<double, 3>, 3> axes{};  // step vectors
    std::array<std::size_t, 3> counts{1, 1, 1};
};

struct PointsSampling {
    std::vector<std::array<double, 3>> points;
};

using Sampling = std::variant<LineSampling, GridSampling, PointsSampling>;

// Scene description: tiles plus a sampling rule. Parsed scenes are always in
// SI (meters, radians, A/m); input files may declare mm / degrees / mu0*M in
// tesla in their units block.
struct Scene {
    int version = 1;
    std::vector<tf_tile> tiles;
    Sampling sampling;
    std::string output_path;           // optional default output target
    std::string output_format = "csv"; // "csv" or "jsonl"

    std::vector<std::array<double, 3>> expand_points() const;
};

// Throws SceneError with field diagnostics on malformed input.
Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::string& path);

// Canonical SI serialization; parse_scene(serialize_scene(s)) reproduces s.
std::string serialize_scene(const Scene& scene);

bool scenes_equal(const Scene& a, const Scene& b);

}  // namespace tilefield_cli
