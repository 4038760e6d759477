// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orthoreflect/reinsurance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "format.hpp"

namespace orthoreflect {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what)
{
    throw Error(ErrorCode::ConfigError, "config." + field + ": " + what);
}

void require(bool ok, const std::string& field, const std::string& what)
{
    if (!ok) {
        config_error(field, what);
    }
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void validate_config(const ScenarioConfig& cfg)
{
    for (std::size_t i = 0; i < 2; ++i) {
        const std::string idx = "[" + std::to_string(i) + "]";
        require(std::isfinite(cfg.x0[i]) && cfg.x0[i] > 0.0, "x0" + idx,
                "initial capital must be finite and > 0");
        require(finite_nonneg(cfg.c[i]), "c" + idx, "premium rate must be finite and >= 0");
        require(std::isfinite(cfg.claim_rate[i]) && cfg.claim_rate[i] > 0.0,
                "claim_rate" + idx, "exponential claim rate must be finite and > 0");
    }
    for (std::size_t k = 0; k < 3; ++k) {
        require(finite_nonneg(cfg.lambda[k]), "lambda[" + std::to_string(k) + "]",
                "Poisson intensity must be finite and >= 0");
    }
    require(finite_nonneg(cfg.alpha), "alpha", "friction must be finite and >= 0");
    require(finite_nonneg(cfg.horizon), "horizon", "must be finite and >= 0");
    require(cfg.n_trials >= 1, "n_trials", "must be >= 1");
    require(cfg.grid_points >= 1, "grid_points", "must be >= 1");
}

ReflectionMatrix reinsurance_matrix(const ScenarioConfig& cfg)
{
    return ReflectionMatrix::symmetric_pair(1.0 + cfg.alpha);
}

DrivingPath sample_driving(CounterRng& rng, const ScenarioConfig& cfg)
{
    DrivingPath path;
    path.x0 = {cfg.x0[0], cfg.x0[1]};
    path.c = {cfg.c[0], cfg.c[1]};
    path.horizon = cfg.horizon;

    const double total = cfg.lambda[0] + cfg.lambda[1] + cfg.lambda[2];
    if (!(total > 0.0)) {
        return path;
    }
    double t = 0.0;
    for (;;) {
        t += rng.exponential(total);
        if (t > cfg.horizon) {
            break;
        }
        const double u = rng.uniform_open() * total;
        Vector dz(2, 0.0);
        if (u < cfg.lambda[0]) {
            dz[0] = rng.exponential(cfg.claim_rate[0]);
        } else if (u < cfg.lambda[0] + cfg.lambda[1]) {
            dz[1] = rng.exponential(cfg.claim_rate[1]);
        } else {
            dz[0] = rng.exponential(cfg.claim_rate[0]);
            dz[1] = rng.exponential(cfg.claim_rate[1]);
        }
        // An inter-arrival below the ulp of t would give a repeated time;
        // merge it into the previous event.
        if (!path.events.empty() && t <= path.events.back().t) {
            path.events.back().dz[0] += dz[0];
            path.events.back().dz[1] += dz[1];
            continue;
        }
        path.events.push_back(JumpEvent{t, std::move(dz)});
    }
    return path;
}

TrialOutcome evaluate_trial(const DrivingPath& path, const ReflectionMatrix& q)
{
    const UnreflectedSolution base = solve_unreflected(path);
    const ReflectedSolution refl = solve_reflected(q, path, ReflectOptions{.keep_records = false});
    return TrialOutcome{base.ruin_times[0], base.ruin_times[1], refl.tau_star};
}

TrialOutcome run_trial(CounterRng& rng, const ScenarioConfig& cfg)
{
    return evaluate_trial(sample_driving(rng, cfg), reinsurance_matrix(cfg));
}

const char* to_string(RuinEvent e) noexcept
{
    switch (e) {
    case RuinEvent::FirstFirm: return "t1";
    case RuinEvent::SecondFirm: return "t2";
    case RuinEvent::Both: return "both";
    case RuinEvent::Either: return "either";
    case RuinEvent::Reinsured: return "tau";
    }
    return "unknown";
}

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z)
{
    if (n == 0) {
        return {0.0, 1.0};
    }
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    // The interval touches 0 (or 1) exactly when k = 0 (or n).
    const double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = k == n ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

Interval RuinCurves::band(RuinEvent e, std::size_t g) const
{
    return wilson_interval(counts[static_cast<std::size_t>(e)][g], n_trials);
}

Vector time_grid(const ScenarioConfig& cfg)
{
    const std::size_t g = cfg.grid_points;
    Vector grid(g);
    if (g == 1) {
        grid[0] = cfg.horizon;
        return grid;
    }
    for (std::size_t k = 0; k < g; ++k) {
        grid[k] = cfg.horizon * static_cast<double>(k) / static_cast<double>(g - 1);
    }
    grid.back() = cfg.horizon;
    return grid;
}

namespace {

// First grid index whose time is >= t, or grid.size() when t is past it.
std::size_t first_index_at_or_after(const Vector& grid, double t)
{
    return static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), t) - grid.begin());
}

using Histogram = std::array<std::vector<std::uint64_t>, kNumRuinEvents>;

void tally(Histogram& h, const Vector& grid, const TrialOutcome& out)
{
    auto add = [&](RuinEvent e, const std::optional<double>& t) {
        if (t) {
            const std::size_t g = first_index_at_or_after(grid, *t);
            if (g < grid.size()) {
                ++h[static_cast<std::size_t>(e)][g];
            }
        }
    };
    add(RuinEvent::FirstFirm, out.t1);
    add(RuinEvent::SecondFirm, out.t2);
    std::optional<double> both;
    std::optional<double> either;
    if (out.t1 && out.t2) {
        both = std::max(*out.t1, *out.t2);
    }
    if (out.t1 || out.t2) {
        either = std::min(out.t1.value_or(HUGE_VAL), out.t2.value_or(HUGE_VAL));
    }
    add(RuinEvent::Both, both);
    add(RuinEvent::Either, either);
    add(RuinEvent::Reinsured, out.tau_star);
}

}  // namespace

RuinCurves ruin_curves(const ScenarioConfig& cfg, const RunOptions& run)
{
    validate_config(cfg);
    if (!(cfg.horizon > 0.0)) {
        config_error("horizon", "ruin curves need a horizon > 0");
    }
    const Vector grid = time_grid(cfg);
    const ReflectionMatrix q = reinsurance_matrix(cfg);

    unsigned threads = run.threads;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, cfg.n_trials)));

    constexpr std::uint64_t kChunk = 256;
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mutex;
    std::vector<Histogram> partial(threads);
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&](unsigned id) {
        Histogram& h = partial[id];
        for (auto& v : h) {
            v.assign(grid.size(), 0);
        }
        try {
            for (;;) {
                const std::uint64_t begin = next.fetch_add(kChunk);
                if (begin >= cfg.n_trials) {
                    break;
                }
                const std::uint64_t end = std::min(cfg.n_trials, begin + kChunk);
                for (std::uint64_t i = begin; i < end; ++i) {
                    CounterRng rng(cfg.seed, i);
                    tally(h, grid, evaluate_trial(sample_driving(rng, cfg), q));
                }
                const std::uint64_t d = done.fetch_add(end - begin) + (end - begin);
                if (run.progress) {
                    std::lock_guard lock(progress_mutex);
                    run.progress(d, cfg.n_trials);
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next.store(cfg.n_trials);
        }
    };

    std::vector<std::thread> pool;
    for (unsigned id = 1; id < threads; ++id) {
        pool.emplace_back(worker, id);
    }
    worker(0);
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    RuinCurves rc;
    rc.grid = grid;
    rc.n_trials = cfg.n_trials;
    for (std::size_t e = 0; e < kNumRuinEvents; ++e) {
        auto& counts = rc.counts[e];
        counts.assign(grid.size(), 0);
        for (const Histogram& h : partial) {
            for (std::size_t g = 0; g < grid.size(); ++g) {
                counts[g] += h[e][g];
            }
        }
        for (std::size_t g = 1; g < grid.size(); ++g) {
            counts[g] += counts[g - 1];
        }
        rc.curves[e].resize(grid.size());
        rc.ci_half_width[e].resize(grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g) {
            rc.curves[e][g] = static_cast<double>(counts[g]) / static_cast<double>(rc.n_trials);
            rc.ci_half_width[e][g] = wilson_interval(counts[g], rc.n_trials).half_width();
        }
    }
    return rc;
}

void write_ruin_curves_csv(std::ostream& os, const RuinCurves& rc)
{
    os << "t,p_t1,ci_t1,p_t2,ci_t2,p_both,ci_both,p_either,ci_either,p_tau,ci_tau\n";
    for (std::size_t g = 0; g < rc.grid.size(); ++g) {
        os << detail::format_g(rc.grid[g], 10);
        for (std::size_t e = 0; e < kNumRuinEvents; ++e) {
            os << ',' << detail::format_g(rc.curves[e][g], 10) << ','
               << detail::format_g(rc.ci_half_width[e][g], 10);
        }
        os << '\n';
    }
}

double initial_intensity(RuinEvent e, const ScenarioConfig& cfg, double quad_tol)
{
    validate_config(cfg);
    if (!(quad_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "initial_intensity: quad_tol must be > 0");
    }
    const auto [l1, l2, l3] = cfg.lambda;
    const double x1 = cfg.x0[0];
    const double x2 = cfg.x0[1];
    const double r1 = cfg.claim_rate[0];
    const double r2 = cfg.claim_rate[1];
    const double tail1 = std::exp(-r1 * x1);
    const double tail2 = std::exp(-r2 * x2);

    switch (e) {
    case RuinEvent::FirstFirm: return (l1 + l3) * tail1;
    case RuinEvent::SecondFirm: return (l2 + l3) * tail2;
    case RuinEvent::Both: return l3 * tail1 * tail2;
    case RuinEvent::Either:
        return l1 * tail1 + l2 * tail2 + l3 * (tail1 + tail2 - tail1 * tail2);
    case RuinEvent::Reinsured: break;
    }

    const ReflectionMatrix q = reinsurance_matrix(cfg);
    if (!dual_cone_generators_2d(q)) {
        return 0.0;
    }
    const double q12 = q(0, 1);
    const double q21 = q(1, 0);

    // A lone claim leaves C* once it exceeds the smaller of the two
    // generator thresholds.
    const double p1 = std::exp(-r1 * (x1 + std::min(q12 * x2, x2 / q21)));
    const double p2 = std::exp(-r2 * (x2 + std::min(q21 * x1, x1 / q12)));

    // Common shock: given Y1 = a, the state stays in C* iff
    // Y2 <= h(a) = x2 + min((x1 - a) / q12, q21 (x1 - a)). h is piecewise
    // linear with a kink at a = x1 and reaches 0 at a0.
    const double a0 = x1 + std::min(q12 * x2, x2 / q21);
    auto h = [&](double a) { return x2 + std::min((x1 - a) / q12, q21 * (x1 - a)); };
    auto exit_density = [&](double a) { return r1 * std::exp(-r1 * a - r2 * std::max(h(a), 0.0)); };
    using boost::math::quadrature::gauss_kronrod;
    double p3 = std::exp(-r1 * a0);
    const double kink = std::min(x1, a0);
    if (kink > 0.0) {
        p3 += gauss_kronrod<double, 31>::integrate(exit_density, 0.0, kink, 15, quad_tol);
    }
    if (a0 > kink) {
        p3 += gauss_kronrod<double, 31>::integrate(exit_density, kink, a0, 15, quad_tol);
    }
    return l1 * p1 + l2 * p2 + l3 * p3;
}

SlopeEstimate empirical_initial_slope(const RuinCurves& rc, RuinEvent e, std::size_t h_index)
{
    const std::size_t idx2 = 2 * h_index;
    if (h_index == 0 || idx2 >= rc.grid.size() || rc.grid[0] != 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "empirical_initial_slope: need a grid starting at 0 with index 2h inside");
    }
    const double h = rc.grid[h_index];
    const auto& counts = rc.counts[static_cast<std::size_t>(e)];
    // Per trial W = 4 1{T <= h} - 1{T <= 2h} takes values 3, -1 or 0.
    const double n = static_cast<double>(rc.n_trials);
    const double k1 = static_cast<double>(counts[h_index]);
    const double k2 = static_cast<double>(counts[idx2]);
    const double mean = (4.0 * k1 - k2) / n;
    const double second = (9.0 * k1 + (k2 - k1)) / n;
    const double var = std::max(0.0, second - mean * mean);
    return SlopeEstimate{mean / (2.0 * h), std::sqrt(var / n) / (2.0 * h)};
}

bool write_trial_log(std::ostream& os, const ScenarioConfig& cfg, std::uint64_t seed)
{
    validate_config(cfg);
    CounterRng rng(seed, 0);
    const DrivingPath path = sample_driving(rng, cfg);
    const UnreflectedSolution base = solve_unreflected(path);
    const ReflectedSolution refl = solve_reflected(reinsurance_matrix(cfg), path);

    using detail::format_g;
    os << "system,t,i,x_pre_i,dl_i,x_post_i,l_cum_i,marker\n";
    for (const UnreflectedRecord& rec : base.records) {
        for (std::size_t i = 0; i < rec.x.size(); ++i) {
            const bool ruin = base.ruin_times[i] && *base.ruin_times[i] == rec.t;
            os << "base," << format_g(rec.t, 17) << ',' << i << ',' << format_g(rec.x[i], 17)
               << ",0," << format_g(rec.x[i], 17) << ",0," << (ruin ? "ruin" : "") << '\n';
        }
    }
    for (const ReflectionRecord& rec : refl.records) {
        for (std::size_t i = 0; i < rec.x_pre.size(); ++i) {
            os << "reflected," << format_g(rec.t, 17) << ',' << i << ','
               << format_g(rec.x_pre[i], 17) << ',' << format_g(rec.dl[i], 17) << ','
               << format_g(rec.x_post[i], 17) << ',' << format_g(rec.l_cum[i], 17) << ','
               << (rec.continued ? "" : "tau_star") << '\n';
        }
    }
    return refl.tau_star.has_value();
}

}  // namespace orthoreflect
