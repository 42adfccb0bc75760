#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scene.hpp"
#include "tilefield/tilefield.h"

namespace {

using tilefield_cli::Scene;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitEvalFailed = 3;

struct AssemblyDeleter {
    void operator()(tf_assembly* a) const { tf_assembly_free(a); }
};
using AssemblyPtr = std::unique_ptr<tf_assembly, AssemblyDeleter>;

AssemblyPtr make_assembly(const Scene& scene) {
    tf_assembly* raw = nullptr;
    if (tf_assembly_create(&raw) != TF_OK) throw std::runtime_error(tf_last_error());
    AssemblyPtr assembly(raw);
    for (const auto& tile : scene.tiles)
        if (tf_assembly_add_tile(assembly.get(), &tile) != TF_OK)
            throw tilefield_cli::SceneError(std::string("tile rejected: ") + tf_last_error());
    return assembly;
}

std::string fmt17(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return {buf, buf + n};
}

const char* provenance_name(int p) {
    switch (p) {
        case TF_PROV_ANALYTIC: return "analytic";
        case TF_PROV_QUADRATURE_FALLBACK: return "quadrature_fallback";
        case TF_PROV_NUDGED: return "nudged";
    }
    return "unknown";
}

std::vector<tf_field_sample> evaluate(const tf_assembly* assembly,
                                      const std::vector<std::array<double, 3>>& pts,
                                      int threads) {
    std::vector<double> flat;
    flat.reserve(pts.size() * 3);
    for (const auto& p : pts) {
        flat.push_back(p[0]);
        flat.push_back(p[1]);
        flat.push_back(p[2]);
    }
    std::vector<tf_field_sample> samples(pts.size());
    const tf_status st =
        tf_eval_field(assembly, flat.data(), pts.size(), threads, samples.data());
    if (st != TF_OK) throw std::runtime_error(std::string("evaluation: ") + tf_last_error());
    return samples;
}

void write_rows(std::ostream& out, const std::vector<tf_field_sample>& samples,
                const std::string& format) {
    auto hnorm = [](const tf_field_sample& s) {
        return std::sqrt(s.h[0] * s.h[0] + s.h[1] * s.h[1] + s.h[2] * s.h[2]);
    };
    if (format == "jsonl") {
        for (const auto& s : samples) {
            out << "{\"x\":" << fmt17(s.point[0]) << ",\"y\":" << fmt17(s.point[1])
                << ",\"z\":" << fmt17(s.point[2]) << ",\"Bx\":" << fmt17(s.b[0])
                << ",\"By\":" << fmt17(s.b[1]) << ",\"Bz\":" << fmt17(s.b[2])
                << ",\"Hx\":" << fmt17(s.h[0]) << ",\"Hy\":" << fmt17(s.h[1])
                << ",\"Hz\":" << fmt17(s.h[2]) << ",\"Hnorm\":" << fmt17(hnorm(s))
                << ",\"inside\":" << (s.inside ? "true" : "false") << ",\"provenance\":\""
                << provenance_name(s.provenance) << "\",\"error\":\""
                << (s.status == TF_OK ? "" : tf_status_name(tf_status(s.status))) << "\"}\n";
        }
        return;
    }
    out << "x,y,z,Bx,By,Bz,Hx,Hy,Hz,Hnorm,inside,provenance,error\n";
    for (const auto& s : samples) {
        out << fmt17(s.point[0]) << ',' << fmt17(s.point[1]) << ',' << fmt17(s.point[2]) << ','
            << fmt17(s.b[0]) << ',' << fmt17(s.b[1]) << ',' << fmt17(s.b[2]) << ','
            << fmt17(s.h[0]) << ',' << fmt17(s.h[1]) << ',' << fmt17(s.h[2]) << ','
            << fmt17(hnorm(s)) << ',' << (s.inside ? 1 : 0) << ','
            << provenance_name(s.provenance) << ','
            << (s.status == TF_OK ? "" : tf_status_name(tf_status(s.status))) << '\n';
    }
}

int cmd_field(const std::string& scene_path, std::string out_path, int threads) {
    const Scene scene = tilefield_cli::load_scene(scene_path);
    const auto pts = scene.expand_points();
    const auto assembly = make_assembly(scene);
    const auto samples = evaluate(assembly.get(), pts, threads);

    if (out_path.empty()) out_path = scene.output_path;
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file '" + out_path + "'");
        out = &file;
    }
    write_rows(*out, samples, scene.output_format);

    for (const auto& s : samples)
        if (s.status != TF_OK) return kExitEvalFailed;
    return kExitOk;
}

int cmd_verify(const std::string& scene_path, const std::string& oracle, double tol,
               int threads) {
    const Scene scene = tilefield_cli::load_scene(scene_path);
    const auto pts = scene.expand_points();
    const auto assembly = make_assembly(scene);
    const auto samples = evaluate(assembly.get(), pts, threads);

    std::vector<tf_oracle_kind> kinds;
    if (oracle == "surface" || oracle == "both") kinds.push_back(TF_ORACLE_SURFACE);
    if (oracle == "charge" || oracle == "both") kinds.push_back(TF_ORACLE_CHARGE);
    if (kinds.empty()) {
        std::cerr << "verify: unknown oracle '" << oracle << "'\n";
        return kExitValidation;
    }

    bool eval_failed = false;
    size_t nudged = 0;
    for (const auto& kind : kinds) {
        std::vector<std::array<double, 3>> oracle_b(pts.size());
        double scale = 0.0;
        for (size_t i = 0; i < pts.size(); ++i) {
            double b[3];
            if (tf_eval_oracle(assembly.get(), kind, pts[i].data(), b) != TF_OK) {
                std::cerr << "verify: oracle failed at point " << i << ": " << tf_last_error()
                          << "\n";
                eval_failed = true;
                oracle_b[i] = {NAN, NAN, NAN};
                continue;
            }
            oracle_b[i] = {b[0], b[1], b[2]};
            for (double c : oracle_b[i]) scale = std::max(scale, std::fabs(c));
        }
        if (scale == 0.0) scale = 1.0;

        double max_err[3] = {0, 0, 0}, mean_err[3] = {0, 0, 0};
        size_t used = 0;
        for (size_t i = 0; i < pts.size(); ++i) {
            if (samples[i].status != TF_OK || !std::isfinite(oracle_b[i][0])) {
                eval_failed = true;
                continue;
            }
            if (samples[i].provenance == TF_PROV_NUDGED) ++nudged;
            ++used;
            for (int c = 0; c < 3; ++c) {
                const double e = std::fabs(samples[i].b[c] - oracle_b[i][c]) / scale;
                max_err[c] = std::max(max_err[c], e);
                mean_err[c] += e;
            }
        }
        if (used)
            for (double& m : mean_err) m /= double(used);

        const char* name = kind == TF_ORACLE_SURFACE ? "surface" : "charge";
        const double overall = std::max({max_err[0], max_err[1], max_err[2]});
        std::printf("oracle=%s points=%zu scale=%.6e\n", name, used, scale);
        for (int c = 0; c < 3; ++c)
            std::printf("  B%c: max_rel=%.3e mean_rel=%.3e\n", "xyz"[c], max_err[c], mean_err[c]);
        std::printf("  overall max_rel=%.3e tol=%.3e -> %s\n", overall, tol,
                    overall <= tol ? "PASS" : "FAIL");
        if (overall > tol) {
            if (nudged) std::printf("  (%zu nudged points included)\n", nudged);
            return eval_failed ? kExitEvalFailed : kExitVerifyFailed;
        }
    }
    if (nudged) std::printf("nudged points: %zu (all within tolerance)\n", nudged);
    return eval_failed ? kExitEvalFailed : kExitOk;
}

int cmd_bench(const std::string& scene_path, int repeat, int threads) {
    const Scene scene = tilefield_cli::load_scene(scene_path);
    const auto pts = scene.expand_points();
    const auto assembly = make_assembly(scene);

    auto run = [&](int nthreads) {
        std::vector<double> times;
        times.reserve(repeat);
        for (int r = 0; r < repeat; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            (void)evaluate(assembly.get(), pts, nthreads);
            const auto t1 = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double>(t1 - t0).count());
        }
        std::sort(times.begin(), times.end());
        return times[times.size() / 2];  // median
    };

    const double single = run(1);
    std::printf("points: %zu, repeats: %d (median)\n", pts.size(), repeat);
    std::printf("single-threaded: total %.6f s, per point %.3f us\n", single,
                1e6 * single / double(pts.size()));
    if (threads != 1) {
        const double par = run(threads);
        std::printf("parallel (%s threads): total %.6f s, per point %.3f us\n",
                    threads <= 0 ? "auto" : std::to_string(threads).c_str(), par,
                    1e6 * par / double(pts.size()));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Magnetic flux-density tensor and B/H fields of uniformly magnetized "
                 "cylindrical tiles"};
    app.require_subcommand(1);

    std::string scene_path, out_path, oracle = "both";
    double tol = 1e-6;
    int threads = 0, repeat = 5;

    auto* field = app.add_subcommand("field", "evaluate B/H along the scene sampling");
    field->add_option("scene", scene_path, "scene JSON file")->required();
    field->add_option("-o,--output", out_path, "output file (defaults to the scene's, else stdout)");
    field->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* verify = app.add_subcommand("verify", "compare the analytic field against brute-force quadrature");
    verify->add_option("scene", scene_path, "scene JSON file")->required();
    verify->add_option("--oracle", oracle, "surface | charge | both")->capture_default_str();
    verify->add_option("--tol", tol, "max relative error, normalized by max |B|")
        ->capture_default_str();
    verify->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* bench = app.add_subcommand("bench", "time the field evaluation");
    bench->add_option("scene", scene_path, "scene JSON file")->required();
    bench->add_option("--repeat", repeat, "repetitions, median reported")->capture_default_str();
    bench->add_option("--threads", threads, "worker threads for the parallel run (0 = auto)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(field)) return cmd_field(scene_path, out_path, threads);
        if (app.got_subcommand(verify)) return cmd_verify(scene_path, oracle, tol, threads);
        if (app.got_subcommand(bench)) return cmd_bench(scene_path, repeat, threads);
    } catch (const tilefield_cli::SceneError& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEvalFailed;
    }
    return kExitOk;
}
