#include "tilefield/tilefield.h"

#include <cstring>
#include <string>
#include <vector>

#include "core/geometry.hpp"
#include "core/oracle.hpp"
#include "core/tensor_field.hpp"
#include "core/types.hpp"

using namespace tilefield;

struct tf_assembly {
    std::vector<Tile> tiles;
    QuadratureSpec spec;
};

namespace {

thread_local std::string g_last_error;

tf_status fail(tf_status code, const char* what) {
    g_last_error = what;
    return code;
}

tf_status fail(const std::exception& e, tf_status code) {
    g_last_error = e.what();
    return code;
}

Tile to_tile(const tf_tile& t) {
    Tile tile;
    tile.r1 = t.r1;
    tile.r2 = t.r2;
    tile.theta1 = t.theta1;
    tile.theta2 = t.theta2;
    tile.z1 = t.z1;
    tile.z2 = t.z2;
    tile.offset = {t.offset[0], t.offset[1], t.offset[2]};
    tile.magnetization = {t.magnetization[0], t.magnetization[1], t.magnetization[2]};
    return tile;
}

tf_status status_of(const Error& e) {
    if (dynamic_cast<const DomainError*>(&e)) return TF_ERR_DOMAIN;
    if (dynamic_cast<const ConvergenceError*>(&e)) return TF_ERR_NO_CONVERGENCE;
    if (dynamic_cast<const ValidationError*>(&e)) return TF_ERR_INVALID_ARGUMENT;
    return TF_ERR_EVAL;
}

void store(const Vec3& v, double out[3]) {
    out[0] = v.x;
    out[1] = v.y;
    out[2] = v.z;
}

void store(const Tensor3& n, double out[9]) { std::memcpy(out, n.m.data(), 9 * sizeof(double)); }

int provenance_code(Provenance p) {
    switch (p) {
        case Provenance::analytic: return TF_PROV_ANALYTIC;
        case Provenance::quadrature_fallback: return TF_PROV_QUADRATURE_FALLBACK;
        case Provenance::nudged: return TF_PROV_NUDGED;
    }
    return TF_PROV_ANALYTIC;
}

}  // namespace

extern "C" {

const char* tf_version(void) { return "0.1.0"; }

const char* tf_status_name(tf_status status) {
    switch (status) {
        case TF_OK: return "ok";
        case TF_ERR_INVALID_ARGUMENT: return "invalid argument";
        case TF_ERR_DOMAIN: return "domain error";
        case TF_ERR_NO_CONVERGENCE: return "no convergence";
        case TF_ERR_EVAL: return "evaluation error";
    }
    return "unknown";
}

const char* tf_last_error(void) { return g_last_error.c_str(); }

tf_status tf_assembly_create(tf_assembly** out) {
    if (!out) return fail(TF_ERR_INVALID_ARGUMENT, "tf_assembly_create: null output pointer");
    *out = new (std::nothrow) tf_assembly();
    if (!*out) return fail(TF_ERR_EVAL, "tf_assembly_create: allocation failed");
    return TF_OK;
}

void tf_assembly_free(tf_assembly* assembly) { delete assembly; }

tf_status tf_assembly_add_tile(tf_assembly* assembly, const tf_tile* tile) {
    if (!assembly || !tile)
        return fail(TF_ERR_INVALID_ARGUMENT, "tf_assembly_add_tile: null pointer");
    try {
        Tile t = to_tile(*tile);
        t.validate();
        assembly->tiles.push_back(t);
        return TF_OK;
    } catch (const Error& e) {
        return fail(e, status_of(e));
    }
}

size_t tf_assembly_tile_count(const tf_assembly* assembly) {
    return assembly ? assembly->tiles.size() : 0;
}

tf_status tf_assembly_set_quadrature(tf_assembly* assembly, const tf_quadrature_spec* spec) {
    if (!assembly)
        return fail(TF_ERR_INVALID_ARGUMENT, "tf_assembly_set_quadrature: null assembly");
    if (!spec) {
        assembly->spec = QuadratureSpec{};
        return TF_OK;
    }
    QuadratureSpec s{spec->rel_tol, spec->abs_tol, spec->max_subdivisions};
    try {
        s.validate();
    } catch (const Error& e) {
        return fail(e, TF_ERR_INVALID_ARGUMENT);
    }
    assembly->spec = s;
    return TF_OK;
}

tf_status tf_eval_field(const tf_assembly* assembly, const double* points_xyz, size_t n_points,
                        int n_threads, tf_field_sample* out_samples) {
    if (!assembly || (!points_xyz && n_points) || (!out_samples && n_points))
        return fail(TF_ERR_INVALID_ARGUMENT, "tf_eval_field: null pointer");
    std::vector<EvalPoint> pts(n_points);
    for (size_t i = 0; i < n_points; ++i)
        pts[i] = {points_xyz[3 * i], points_xyz[3 * i + 1], points_xyz[3 * i + 2]};

    // Math failures at individual points are absorbed by the oracle fallback
    // inside tensor_at; anything that still escapes is recorded per point
    // rather than aborting the batch.
    std::vector<FieldSample> samples(n_points);
    std::vector<int> statuses(n_points, TF_OK);
    try {
        samples = field_at_batch(assembly->tiles, pts, assembly->spec, n_threads);
    } catch (const Error&) {
        for (size_t i = 0; i < n_points; ++i) {
            try {
                samples[i] = field_at(assembly->tiles, pts[i], assembly->spec);
            } catch (const Error& pe) {
                samples[i] = FieldSample{};
                samples[i].point = pts[i];
                statuses[i] = status_of(pe);
                g_last_error = pe.what();
            }
        }
    }
    for (size_t i = 0; i < n_points; ++i) {
        const FieldSample& s = samples[i];
        store(s.point, out_samples[i].point);
        store(s.n, out_samples[i].n);
        store(s.b, out_samples[i].b);
        store(s.h, out_samples[i].h);
        out_samples[i].inside = s.inside ? 1 : 0;
        out_samples[i].on_surface = s.on_surface ? 1 : 0;
        out_samples[i].provenance = provenance_code(s.provenance);
        out_samples[i].status = statuses[i];
    }
    return TF_OK;
}

tf_status tf_eval_tensor(const tf_assembly* assembly, size_t tile_index, const double point[3],
                         double n_out[9], tf_guard_report* report_out, int* provenance_out) {
    if (!assembly || !point || !n_out)
        return fail(TF_ERR_INVALID_ARGUMENT, "tf_eval_tensor: null pointer");
    if (tile_index >= assembly->tiles.size())
        return fail(TF_ERR_INVALID_ARGUMENT, "tf_eval_tensor: tile index out of range");
    try {
        const TensorResult res = tensor_at(assembly->tiles[tile_index],
                                           {point[0], point[1], point[2]}, assembly->spec);
        store(res.n, n_out);
        if (report_out) {
            report_out->triggered = res.guard.triggered ? 1 : 0;
            report_out->condition = static_cast<int>(res.guard.condition);
            store(res.guard.nudge_applied, report_out->nudge_applied);
        }
        if (provenance_out) *provenance_out = provenance_code(res.provenance);
        return TF_OK;
    } catch (const Error& e) {
        return fail(e, status_of(e));
    }
}

tf_status tf_eval_tensor_full(const tf_assembly* assembly, size_t tile_index,
                              const double point[3], double n_out[9]) {
    if (!assembly || !point || !n_out)
        return fail(TF_ERR_INVALID_ARGUMENT, "tf_eval_tensor_full: null pointer");
    if (tile_index >= assembly->tiles.size())
        return fail(TF_ERR_INVALID_ARGUMENT, "tf_eval_tensor_full: tile index out of range");
    try {
        const TensorResult res = tensor_at_full(assembly->tiles[tile_index],
                                                {point[0], point[1], point[2]}, assembly->spec);
        store(res.n, n_out);
        return TF_OK;
    } catch (const Error& e) {
        return fail(e, status_of(e));
    }
}

tf_status tf_eval_oracle(const tf_assembly* assembly, tf_oracle_kind kind,
                         const double point[3], double b_out[3]) {
    if (!assembly || !point || !b_out)
        return fail(TF_ERR_INVALID_ARGUMENT, "tf_eval_oracle: null pointer");
    try {
        Vec3 b;
        const EvalPoint p{point[0], point[1], point[2]};
        for (const Tile& tile : assembly->tiles)
            b += (kind == TF_ORACLE_CHARGE) ? oracle_b_charge(tile, p) : oracle_b_surface(tile, p);
        store(b, b_out);
        return TF_OK;
    } catch (const Error& e) {
        return fail(e, status_of(e));
    }
}

void tf_magnetization_from_mu0m(const double mu0_m[3], double m_out[3]) {
    const Vec3 m = magnetization_from_mu0m({mu0_m[0], mu0_m[1], mu0_m[2]});
    store(m, m_out);
}

}  // extern "C"
