// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orthoreflect/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "format.hpp"

namespace orthoreflect {

void validate_path(const DrivingPath& path)
{
    const std::size_t n = path.dimension();
    if (n == 0) {
        throw Error(ErrorCode::InvalidPath, "driving path has dimension 0");
    }
    if (path.c.size() != n) {
        throw Error(ErrorCode::DimensionError, "driving path: c and x0 differ in length");
    }
    if (!all_finite(path.x0) || !all_nonnegative(path.x0)) {
        throw Error(ErrorCode::InvalidPath, "driving path: x0 must be finite and >= 0");
    }
    if (!all_finite(path.c) || !all_nonnegative(path.c)) {
        throw Error(ErrorCode::InvalidPath, "driving path: c must be finite and >= 0");
    }
    if (!std::isfinite(path.horizon) || path.horizon < 0.0) {
        throw Error(ErrorCode::InvalidPath, "driving path: horizon must be finite and >= 0");
    }
    double prev = -1.0;
    for (std::size_t k = 0; k < path.events.size(); ++k) {
        const JumpEvent& ev = path.events[k];
        check_jump_event(ev, n);
        if (ev.t <= prev) {
            std::ostringstream os;
            os << "driving path: event " << k << " at t=" << ev.t
               << " is not strictly after the previous event";
            throw Error(ErrorCode::InvalidPath, os.str());
        }
        if (ev.t > path.horizon) {
            std::ostringstream os;
            os << "driving path: event " << k << " at t=" << ev.t << " is beyond the horizon";
            throw Error(ErrorCode::InvalidPath, os.str());
        }
        prev = ev.t;
    }
}

namespace {

Vector drift(const Vector& x, const Vector& c, double dt)
{
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] + c[i] * dt;
    }
    return out;
}

Vector apply_reflection(const ReflectionMatrix& q, const Vector& x_pre, const Vector& dl,
                        double eps)
{
    const std::size_t n = x_pre.size();
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = x_pre[i] + dl[i];
        double scale = std::abs(x_pre[i]) + dl[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                s -= q(i, j) * dl[j];
                scale += q(i, j) * dl[j];
            }
        }
        // LP feasibility holds to eps relative to the row scale.
        if (s < 0.0) {
            if (s < -eps * (1.0 + scale)) {
                std::ostringstream os;
                os << "solve_reflected: reflected state " << s << " in coordinate " << i
                   << " is negative beyond tolerance";
                throw Error(ErrorCode::NumericalBreakdown, os.str());
            }
            s = 0.0;
        }
        x[i] = s;
    }
    return x;
}

}  // namespace

ReflectedSolution solve_reflected(const ReflectionMatrix& q, const DrivingPath& path,
                                  ReflectOptions opts)
{
    validate_path(path);
    const std::size_t n = path.dimension();
    if (q.size() != n) {
        throw Error(ErrorCode::DimensionError, "solve_reflected: Q and path differ in dimension");
    }

    ReflectedSolution sol;
    Vector x = path.x0;
    Vector l(n, 0.0);
    double t_prev = 0.0;

    for (const JumpEvent& ev : path.events) {
        const Vector x_minus = drift(x, path.c, ev.t - t_prev);
        Vector x_pre(n);
        for (std::size_t i = 0; i < n; ++i) {
            x_pre[i] = x_minus[i] - ev.dz[i];
        }

        MinimalJumpResult jump = minimal_jump(q, x_pre, opts.eps);
        if (auto* fail = std::get_if<ReflectionFailure>(&jump)) {
            sol.tau_star = ev.t;
            if (opts.keep_records) {
                ReflectionRecord rec;
                rec.t = ev.t;
                rec.x_pre = x_pre;
                rec.dl.assign(n, 0.0);
                rec.x_post = x_pre;
                rec.l_cum = l;
                rec.continued = false;
                rec.witness = std::move(fail->witness);
                sol.records.push_back(std::move(rec));
            }
            sol.final_state = x_minus;
            sol.final_l = l;
            return sol;
        }

        Vector& dl = std::get<ReflectionJump>(jump).dl;
        Vector x_post = apply_reflection(q, x_pre, dl, opts.eps);
        for (std::size_t i = 0; i < n; ++i) {
            l[i] += dl[i];
        }
        if (opts.keep_records) {
            sol.records.push_back(ReflectionRecord{ev.t, std::move(x_pre), std::move(dl),
                                                   x_post, l, true, {}});
        }
        x = std::move(x_post);
        t_prev = ev.t;
    }

    sol.final_state = drift(x, path.c, path.horizon - t_prev);
    sol.final_l = l;
    return sol;
}

UnreflectedSolution solve_unreflected(const DrivingPath& path)
{
    validate_path(path);
    const std::size_t n = path.dimension();

    UnreflectedSolution sol;
    sol.ruin_times.assign(n, std::nullopt);
    for (std::size_t i = 0; i < n; ++i) {
        if (path.x0[i] <= 0.0) {
            sol.ruin_times[i] = 0.0;
        }
    }

    Vector x = path.x0;
    double t_prev = 0.0;
    for (const JumpEvent& ev : path.events) {
        x = drift(x, path.c, ev.t - t_prev);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] -= ev.dz[i];
            if (!sol.ruin_times[i] && x[i] <= 0.0) {
                sol.ruin_times[i] = ev.t;
            }
        }
        sol.records.push_back(UnreflectedRecord{ev.t, x});
        t_prev = ev.t;
    }
    sol.final_state = drift(x, path.c, path.horizon - t_prev);
    return sol;
}

void write_path_csv(std::ostream& os, const ReflectedSolution& sol)
{
    os << "t,i,x_pre_i,dl_i,x_post_i,l_cum_i\n";
    for (const ReflectionRecord& rec : sol.records) {
        for (std::size_t i = 0; i < rec.x_pre.size(); ++i) {
            os << detail::format_g(rec.t, 17) << ',' << i << ','
               << detail::format_g(rec.x_pre[i], 17) << ',' << detail::format_g(rec.dl[i], 17)
               << ',' << detail::format_g(rec.x_post[i], 17) << ','
               << detail::format_g(rec.l_cum[i], 17) << '\n';
        }
    }
}

}  // namespace orthoreflect
