// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orthoreflect/orthoreflect.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "orthoreflect/config_io.hpp"
#include "orthoreflect/reflect.hpp"
#include "orthoreflect/reinsurance.hpp"

#ifndef ORTHOREFLECT_VERSION
#define ORTHOREFLECT_VERSION "0.0.0"
#endif

using namespace orthoreflect;

struct orf_matrix {
    ReflectionMatrix q;
};

struct orf_config {
    ScenarioConfig cfg;
};

struct orf_curves {
    RuinCurves rc;
};

namespace {

thread_local std::string g_last_error;

orf_status to_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return ORF_ERR_INVALID_ARGUMENT;
    case ErrorCode::NonSquare: return ORF_ERR_NON_SQUARE;
    case ErrorCode::NegativeEntry: return ORF_ERR_NEGATIVE_ENTRY;
    case ErrorCode::NonzeroDiagonal: return ORF_ERR_NONZERO_DIAGONAL;
    case ErrorCode::NoConvergence: return ORF_ERR_NO_CONVERGENCE;
    case ErrorCode::NumericalBreakdown: return ORF_ERR_NUMERICAL_BREAKDOWN;
    case ErrorCode::DimensionError: return ORF_ERR_DIMENSION;
    case ErrorCode::InvalidPath: return ORF_ERR_INVALID_PATH;
    case ErrorCode::ConfigError: return ORF_ERR_CONFIG;
    case ErrorCode::IoError: return ORF_ERR_IO;
    }
    return ORF_ERR_INTERNAL;
}

orf_status fail(orf_status s, std::string msg)
{
    g_last_error = std::move(msg);
    return s;
}

// Runs body and maps exceptions onto status codes.
template <typename F>
orf_status guarded(F&& body) noexcept
{
    try {
        g_last_error.clear();
        return body();
    } catch (const Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(ORF_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ORF_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ORF_ERR_INTERNAL, "unknown exception");
    }
}

#define ORF_REQUIRE(cond, msg)                                   \
    do {                                                         \
        if (!(cond)) {                                           \
            return fail(ORF_ERR_INVALID_ARGUMENT, (msg));        \
        }                                                        \
    } while (0)

std::span<const double> vec(const orf_matrix* q, const double* y)
{
    return {y, q->q.size()};
}

RuinEvent to_event(orf_ruin_event e)
{
    if (e < ORF_EVENT_T1 || e > ORF_EVENT_TAU) {
        throw Error(ErrorCode::InvalidArgument, "unknown ruin event");
    }
    return static_cast<RuinEvent>(e);
}

}  // namespace

extern "C" {

const char* orf_version(void) { return ORTHOREFLECT_VERSION; }

const char* orf_last_error(void) { return g_last_error.c_str(); }

const char* orf_status_name(orf_status status)
{
    switch (status) {
    case ORF_OK: return "ok";
    case ORF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ORF_ERR_NON_SQUARE: return "non-square matrix";
    case ORF_ERR_NEGATIVE_ENTRY: return "negative entry";
    case ORF_ERR_NONZERO_DIAGONAL: return "non-zero diagonal";
    case ORF_ERR_NO_CONVERGENCE: return "no convergence";
    case ORF_ERR_NUMERICAL_BREAKDOWN: return "numerical breakdown";
    case ORF_ERR_DIMENSION: return "dimension mismatch";
    case ORF_ERR_INVALID_PATH: return "invalid path";
    case ORF_ERR_CONFIG: return "config error";
    case ORF_ERR_IO: return "I/O error";
    case ORF_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case ORF_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

orf_status orf_matrix_create(size_t n, const double* q_row_major, orf_matrix** out)
{
    return guarded([&] {
        ORF_REQUIRE(out && (q_row_major || n == 0), "orf_matrix_create: null pointer");
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                m(i, j) = q_row_major[i * n + j];
            }
        }
        *out = new orf_matrix{validate_reflection_matrix(m)};
        return ORF_OK;
    });
}

void orf_matrix_destroy(orf_matrix* q) { delete q; }

size_t orf_matrix_size(const orf_matrix* q) { return q ? q->q.size() : 0; }

orf_status orf_spectral_radius(const orf_matrix* q, double tol, size_t max_iter, double* rho)
{
    return guarded([&] {
        ORF_REQUIRE(q && rho, "orf_spectral_radius: null pointer");
        *rho = spectral_radius(q->q, SpectralRadiusOptions{tol, max_iter});
        return ORF_OK;
    });
}

orf_status orf_cone_test(const orf_matrix* q, const double* y, double eps, int* member,
                         double* witness)
{
    return guarded([&] {
        ORF_REQUIRE(q && y && member, "orf_cone_test: null pointer");
        const ConeTestResult r = in_dual_cone(q->q, vec(q, y), eps);
        *member = is_member(r) ? 1 : 0;
        if (const auto* nm = std::get_if<ConeNotMember>(&r); nm && witness) {
            std::copy(nm->witness.begin(), nm->witness.end(), witness);
        }
        return ORF_OK;
    });
}

orf_status orf_minimal_jump(const orf_matrix* q, const double* y, double eps, int* member,
                            double* out)
{
    return guarded([&] {
        ORF_REQUIRE(q && y && member && out, "orf_minimal_jump: null pointer");
        const MinimalJumpResult r = minimal_jump(q->q, vec(q, y), eps);
        if (const auto* jump = std::get_if<ReflectionJump>(&r)) {
            *member = 1;
            std::copy(jump->dl.begin(), jump->dl.end(), out);
        } else {
            const auto& f = std::get<ReflectionFailure>(r);
            *member = 0;
            std::copy(f.witness.begin(), f.witness.end(), out);
        }
        return ORF_OK;
    });
}

orf_status orf_least_fixed_point(const orf_matrix* q, const double* y, double tol,
                                 size_t max_iter, double* z, int* converged,
                                 size_t* iterations)
{
    return guarded([&] {
        ORF_REQUIRE(q && y && z && converged, "orf_least_fixed_point: null pointer");
        FixedPointOptions opts;
        opts.tol = tol;
        opts.max_iter = max_iter;
        const FixedPointResult r = least_fixed_point(q->q, vec(q, y), opts);
        std::copy(r.z.begin(), r.z.end(), z);
        *converged = r.converged() ? 1 : 0;
        if (iterations) {
            *iterations = r.iterations;
        }
        return ORF_OK;
    });
}

orf_status orf_config_load(const char* path, orf_config** out)
{
    return guarded([&] {
        ORF_REQUIRE(path && out, "orf_config_load: null pointer");
        *out = new orf_config{load_config_file(path)};
        return ORF_OK;
    });
}

orf_status orf_config_parse(const char* json, orf_config** out)
{
    return guarded([&] {
        ORF_REQUIRE(json && out, "orf_config_parse: null pointer");
        *out = new orf_config{config_from_json(json)};
        return ORF_OK;
    });
}

void orf_config_destroy(orf_config* cfg) { delete cfg; }

orf_status orf_config_to_json(const orf_config* cfg, char* buf, size_t cap, size_t* len)
{
    return guarded([&] {
        ORF_REQUIRE(cfg && len, "orf_config_to_json: null pointer");
        const std::string s = config_to_json(cfg->cfg);
        *len = s.size();
        if (!buf || cap < s.size() + 1) {
            return fail(ORF_ERR_BUFFER_TOO_SMALL, "orf_config_to_json: buffer too small");
        }
        std::memcpy(buf, s.c_str(), s.size() + 1);
        return ORF_OK;
    });
}

void orf_config_set_seed(orf_config* cfg, uint64_t seed)
{
    if (cfg) {
        cfg->cfg.seed = seed;
    }
}

uint64_t orf_config_seed(const orf_config* cfg) { return cfg ? cfg->cfg.seed : 0; }

orf_status orf_ruin_curves(const orf_config* cfg, unsigned threads, orf_progress_fn progress,
                           void* user, orf_curves** out)
{
    return guarded([&] {
        ORF_REQUIRE(cfg && out, "orf_ruin_curves: null pointer");
        RunOptions run;
        run.threads = threads;
        if (progress) {
            run.progress = [progress, user](std::uint64_t d, std::uint64_t t) {
                progress(d, t, user);
            };
        }
        *out = new orf_curves{ruin_curves(cfg->cfg, run)};
        return ORF_OK;
    });
}

void orf_curves_destroy(orf_curves* rc) { delete rc; }

size_t orf_curves_grid_size(const orf_curves* rc) { return rc ? rc->rc.grid.size() : 0; }

orf_status orf_curves_point(const orf_curves* rc, orf_ruin_event event, size_t g, double* t,
                            double* p, double* ci_half_width)
{
    return guarded([&] {
        ORF_REQUIRE(rc, "orf_curves_point: null handle");
        ORF_REQUIRE(g < rc->rc.grid.size(), "orf_curves_point: grid index out of range");
        const auto e = static_cast<std::size_t>(to_event(event));
        if (t) {
            *t = rc->rc.grid[g];
        }
        if (p) {
            *p = rc->rc.curves[e][g];
        }
        if (ci_half_width) {
            *ci_half_width = rc->rc.ci_half_width[e][g];
        }
        return ORF_OK;
    });
}

orf_status orf_curves_write_csv(const orf_curves* rc, const char* path)
{
    return guarded([&] {
        ORF_REQUIRE(rc && path, "orf_curves_write_csv: null pointer");
        std::ofstream os(path, std::ios::binary);
        if (!os) {
            return fail(ORF_ERR_IO, std::string("cannot open '") + path + "' for writing");
        }
        write_ruin_curves_csv(os, rc->rc);
        if (!os.flush()) {
            return fail(ORF_ERR_IO, std::string("write failed for '") + path + "'");
        }
        return ORF_OK;
    });
}

orf_status orf_initial_intensity(const orf_config* cfg, orf_ruin_event event, double quad_tol,
                                 double* out)
{
    return guarded([&] {
        ORF_REQUIRE(cfg && out, "orf_initial_intensity: null pointer");
        *out = initial_intensity(to_event(event), cfg->cfg, quad_tol);
        return ORF_OK;
    });
}

orf_status orf_simulate_path(const orf_config* cfg, uint64_t seed, const char* path,
                             int* tau_star_hit)
{
    return guarded([&] {
        ORF_REQUIRE(cfg && path, "orf_simulate_path: null pointer");
        std::ofstream os(path, std::ios::binary);
        if (!os) {
            return fail(ORF_ERR_IO, std::string("cannot open '") + path + "' for writing");
        }
        const bool hit = write_trial_log(os, cfg->cfg, seed);
        if (!os.flush()) {
            return fail(ORF_ERR_IO, std::string("write failed for '") + path + "'");
        }
        if (tau_star_hit) {
            *tau_star_hit = hit ? 1 : 0;
        }
        return ORF_OK;
    });
}

}  // extern "C"
