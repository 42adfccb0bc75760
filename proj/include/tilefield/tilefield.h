/* tilefield - magnetic field of uniformly magnetized cylindrical tiles.
 *
 * C API of the shared library. All functions are thread-safe; the assembly
 * handle is immutable while evaluations run against it. Geometry is in
 * meters/radians, magnetization in A/m, B in tesla, H in A/m.
 */
#ifndef TILEFIELD_H
#define TILEFIELD_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tf_status {
    TF_OK = 0,
    TF_ERR_INVALID_ARGUMENT = 1, /* malformed tile/spec/pointer arguments */
    TF_ERR_DOMAIN = 2,           /* evaluation outside a mathematical domain */
    TF_ERR_NO_CONVERGENCE = 3,   /* adaptive integration hit its budget */
    TF_ERR_EVAL = 4              /* other evaluation failure */
} tf_status;

typedef enum tf_provenance {
    TF_PROV_ANALYTIC = 0,
    TF_PROV_QUADRATURE_FALLBACK = 1,
    TF_PROV_NUDGED = 2
} tf_provenance;

typedef enum tf_oracle_kind {
    TF_ORACLE_SURFACE = 0, /* direct quadrature of the surface-current integrals */
    TF_ORACLE_CHARGE = 1   /* magnetic-charge (scalar potential) model */
} tf_oracle_kind;

/* Angular section of a hollow finite cylinder with uniform magnetization. */
typedef struct tf_tile {
    double r1, r2;         /* inner/outer radius, m; 0 <= r1 <= r2    */
    double theta1, theta2; /* angular span, rad; theta2-theta1 <= 2pi */
    double z1, z2;         /* axial extent, m                         */
    double offset[3];      /* cylinder-axis origin, global frame, m   */
    double magnetization[3]; /* uniform M, A/m                        */
} tf_tile;

typedef struct tf_quadrature_spec {
    double rel_tol;       /* >= 1e-14 */
    double abs_tol;       /* >= 0     */
    int max_subdivisions; /* >= 1     */
} tf_quadrature_spec;

typedef struct tf_field_sample {
    double point[3];
    double n[9];   /* summed flux tensor, row-major */
    double b[3];   /* tesla */
    double h[3];   /* A/m   */
    int inside;      /* strictly inside any tile */
    int on_surface;  /* within tolerance of a tile surface */
    int provenance;  /* tf_provenance */
    int status;      /* tf_status, per-point */
} tf_field_sample;

typedef struct tf_guard_report {
    int triggered;
    int condition; /* 0 none, 1 theta_npi_z0, 2 theta_npi_r_eq_x, 3 x_zero, 4 r_zero */
    double nudge_applied[3];
} tf_guard_report;

/* Opaque tile-assembly handle. */
typedef struct tf_assembly tf_assembly;

const char* tf_version(void);
const char* tf_status_name(tf_status status);
/* Detail for the most recent failure on the calling thread. */
const char* tf_last_error(void);

tf_status tf_assembly_create(tf_assembly** out);
void tf_assembly_free(tf_assembly* assembly);
tf_status tf_assembly_add_tile(tf_assembly* assembly, const tf_tile* tile);
size_t tf_assembly_tile_count(const tf_assembly* assembly);
/* NULL restores the defaults (rel 1e-10, abs 1e-13, 200 subdivisions). */
tf_status tf_assembly_set_quadrature(tf_assembly* assembly, const tf_quadrature_spec* spec);

/* B, H, N at n_points points given as [x0,y0,z0, x1,y1,z1, ...].
 * Per-point failures are recorded in each sample's status field; the call
 * itself fails only on malformed arguments. n_threads <= 0 selects the
 * hardware concurrency; results are in input order. */
tf_status tf_eval_field(const tf_assembly* assembly, const double* points_xyz,
                        size_t n_points, int n_threads, tf_field_sample* out_samples);

/* Flux tensor of one tile (row-major n_out[9], global frame) plus the guard
 * report. provenance_out may be NULL. */
tf_status tf_eval_tensor(const tf_assembly* assembly, size_t tile_index,
                         const double point[3], double n_out[9],
                         tf_guard_report* report_out, int* provenance_out);

/* All nine tensor components evaluated independently (no symmetry fill). */
tf_status tf_eval_tensor_full(const tf_assembly* assembly, size_t tile_index,
                              const double point[3], double n_out[9]);

/* Brute-force B of the whole assembly by direct surface quadrature. */
tf_status tf_eval_oracle(const tf_assembly* assembly, tf_oracle_kind kind,
                         const double point[3], double b_out[3]);

/* mu0 * M [tesla] -> M [A/m], elementwise. */
void tf_magnetization_from_mu0m(const double mu0_m[3], double m_out[3]);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TILEFIELD_H */
