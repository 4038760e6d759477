// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#include "orthoreflect/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace orthoreflect {

namespace {

void check_problem(const LpProblem& p, const LpOptions& opts)
{
    if (!(opts.eps > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "solve_lp: eps must be positive");
    }
    if (p.a.rows() != p.b.size() || p.a.cols() != p.c.size()) {
        throw Error(ErrorCode::DimensionError, "solve_lp: inconsistent A, b, c dimensions");
    }
    if (!all_finite(p.b) || !all_finite(p.c)) {
        throw Error(ErrorCode::InvalidArgument, "solve_lp: non-finite b or c");
    }
    for (std::size_t j = 0; j < p.a.cols(); ++j) {
        if (!all_finite(p.a.column(j))) {
            throw Error(ErrorCode::InvalidArgument, "solve_lp: non-finite entry in A");
        }
    }
}

[[noreturn]] void breakdown(const std::string& what, std::size_t row)
{
    std::ostringstream os;
    os << "solve_lp: " << what << " (tableau row " << row << ")";
    throw Error(ErrorCode::NumericalBreakdown, os.str());
}

// Columns are laid out as [x (k) | surplus (m) | artificial (na)].
class Tableau {
public:
    Tableau(const LpProblem& p, const LpOptions& opts)
        : m_(p.a.rows()), k_(p.a.cols()), eps_(opts.eps), max_pivots_(opts.max_pivots)
    {
        sign_.resize(m_);
        std::size_t na = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            sign_[i] = p.b[i] > 0.0 ? 1.0 : -1.0;
            na += sign_[i] > 0.0 ? 1 : 0;
        }
        ncols_ = k_ + m_ + na;
        t_ = Matrix(m_, ncols_);
        rhs_.resize(m_);
        basis_.resize(m_);
        start_col_.resize(m_);

        std::size_t next_art = k_ + m_;
        for (std::size_t i = 0; i < m_; ++i) {
            const double s = sign_[i];
            for (std::size_t j = 0; j < k_; ++j) {
                t_(i, j) = s * p.a(i, j);
            }
            t_(i, k_ + i) = -s;
            rhs_[i] = s * p.b[i];
            if (s > 0.0) {
                t_(i, next_art) = 1.0;
                basis_[i] = next_art;
                start_col_[i] = next_art;
                ++next_art;
            } else {
                basis_[i] = k_ + i;
                start_col_[i] = k_ + i;
            }
        }
    }

    bool is_artificial(std::size_t j) const { return j >= k_ + m_; }

    // Runs the simplex loop. Returns false on an unbounded direction.
    bool optimize(const Vector& cost, bool allow_artificial)
    {
        for (;;) {
            const Vector d = reduced_costs(cost);
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (!allow_artificial && is_artificial(j)) {
                    continue;
                }
                if (d[j] < -eps_ && !is_basic(j)) {
                    enter = j;
                    break;
                }
            }
            if (!enter) {
                return true;
            }
            const std::size_t j = *enter;

            std::optional<std::size_t> leave;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double aij = t_(i, j);
                if (aij <= eps_) {
                    continue;
                }
                const double ratio = rhs_[i] / aij;
                const double tie = eps_ * (1.0 + std::abs(best));
                if (!leave || ratio < best - tie) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + tie && basis_[i] < basis_[*leave]) {
                    best = std::min(best, ratio);
                    leave = i;
                }
            }
            if (!leave) {
                return false;
            }
            pivot(*leave, j);
            if (++pivots_ > max_pivots_) {
                breakdown("pivot limit exceeded, possible cycling", *leave);
            }
        }
    }

    Vector reduced_costs(const Vector& cost) const
    {
        Vector d(ncols_);
        for (std::size_t j = 0; j < ncols_; ++j) {
            double z = 0.0;
            const auto col = t_.column(j);
            for (std::size_t i = 0; i < m_; ++i) {
                z += cost[basis_[i]] * col[i];
            }
            d[j] = cost[j] - z;
        }
        return d;
    }

    double objective(const Vector& cost) const
    {
        double z = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            z += cost[basis_[i]] * rhs_[i];
        }
        return z;
    }

    // Pivot remaining zero-level artificials out of the basis. Rows whose
    // non-artificial entries all vanish are redundant and keep their
    // artificial at zero; it is barred from re-entering in Phase II.
    void expel_artificials()
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_artificial(basis_[i])) {
                continue;
            }
            if (std::abs(rhs_[i]) > eps_) {
                breakdown("artificial variable basic at non-zero level after Phase I", i);
            }
            rhs_[i] = 0.0;
            for (std::size_t j = 0; j < k_ + m_; ++j) {
                if (!is_basic(j) && std::abs(t_(i, j)) > eps_) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    // Phase I duals: the start column of row i is a unit column, so its
    // reduced cost is cost - pi_i.
    Vector phase_one_certificate(const Vector& cost) const
    {
        const Vector d = reduced_costs(cost);
        Vector y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t j = start_col_[i];
            const double pi = cost[j] - d[j];
            y[i] = sign_[i] * pi;
        }
        return y;
    }

    Vector primal_x() const
    {
        Vector x(k_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < k_) {
                x[basis_[i]] = std::max(rhs_[i], 0.0);
            }
        }
        return x;
    }

    std::size_t ncols() const { return ncols_; }
    std::size_t num_x() const { return k_; }

private:
    bool is_basic(std::size_t j) const
    {
        return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
    }

    void pivot(std::size_t r, std::size_t c)
    {
        const double piv = t_(r, c);
        if (std::abs(piv) <= std::numeric_limits<double>::min()) {
            breakdown("zero pivot", r);
        }
        for (std::size_t j = 0; j < ncols_; ++j) {
            t_(r, j) /= piv;
        }
        rhs_[r] /= piv;
        t_(r, c) = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) {
                continue;
            }
            const double f = t_(i, c);
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < ncols_; ++j) {
                t_(i, j) -= f * t_(r, j);
            }
            t_(i, c) = 0.0;
            rhs_[i] -= f * rhs_[r];
            if (rhs_[i] < 0.0 && rhs_[i] > -eps_) {
                rhs_[i] = 0.0;
            }
        }
        basis_[r] = c;
    }

    std::size_t m_;
    std::size_t k_;
    std::size_t ncols_ = 0;
    double eps_;
    std::size_t max_pivots_;
    std::size_t pivots_ = 0;
    Matrix t_;
    Vector rhs_;
    Vector sign_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> start_col_;
};

}  // namespace

LpOutcome solve_lp(const LpProblem& p, LpOptions opts)
{
    check_problem(p, opts);
    Tableau tab(p, opts);

    Vector phase1(tab.ncols(), 0.0);
    for (std::size_t j = 0; j < tab.ncols(); ++j) {
        phase1[j] = tab.is_artificial(j) ? 1.0 : 0.0;
    }
    tab.optimize(phase1, true);

    if (tab.objective(phase1) > opts.eps) {
        Vector y = tab.phase_one_certificate(phase1);
        for (double& v : y) {
            if (v < 0.0 && v > -opts.eps) {
                v = 0.0;
            }
        }
        if (!is_farkas_certificate(p, y, opts.eps)) {
            breakdown("Phase I duals do not form a valid Farkas certificate", 0);
        }
        return LpInfeasible{std::move(y)};
    }

    tab.expel_artificials();
    Vector phase2(tab.ncols(), 0.0);
    std::copy(p.c.begin(), p.c.end(), phase2.begin());
    if (!tab.optimize(phase2, false)) {
        return LpUnbounded{};
    }

    LpOptimal out;
    out.x = tab.primal_x();
    out.objective = dot(p.c, out.x);

    const Vector ax = p.a.multiply(out.x);
    for (std::size_t i = 0; i < p.b.size(); ++i) {
        double scale = 1.0 + std::abs(p.b[i]);
        for (std::size_t j = 0; j < out.x.size(); ++j) {
            scale += std::abs(p.a(i, j) * out.x[j]);
        }
        if (ax[i] < p.b[i] - opts.eps * scale) {
            breakdown("optimal point violates a constraint", i);
        }
    }
    return out;
}

double lp_infeasibility(const LpProblem& p, std::span<const double> x)
{
    double worst = 0.0;
    const Vector ax = p.a.multiply(x);
    for (std::size_t i = 0; i < p.b.size(); ++i) {
        worst = std::max(worst, p.b[i] - ax[i]);
    }
    for (double v : x) {
        worst = std::max(worst, -v);
    }
    return worst;
}

bool is_farkas_certificate(const LpProblem& p, std::span<const double> y, double eps)
{
    if (y.size() != p.b.size()) {
        return false;
    }
    if (std::any_of(y.begin(), y.end(), [eps](double v) { return v < -eps; })) {
        return false;
    }
    const Vector ya = p.a.left_multiply(y);
    if (std::any_of(ya.begin(), ya.end(), [eps](double v) { return v > eps; })) {
        return false;
    }
    return dot(y, p.b) > eps;
}

}  // namespace orthoreflect
