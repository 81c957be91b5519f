// Two-phase dense simplex. The tableau carries structural columns (free
// variables split into positive/negative parts), slack/surplus columns, and
// artificial columns; artificials stay in the tableau after phase 1 so that
// row duals can be read off their reduced costs for every row kind.
#include "grmr/lp.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace grmr::lp {

namespace {

constexpr double kEnterTol = 1e-9;  // reduced cost must beat this to enter
constexpr double kPivotTol = 1e-9;  // minimum usable pivot magnitude

struct Tableau {
    int m = 0;                        // rows
    int ncols = 0;                    // columns excluding rhs
    std::vector<double> t;            // m x (ncols + 1), row-major
    std::vector<int> basis;           // basic column per row
    std::vector<double> zrow;         // reduced costs, size ncols
    std::vector<char> banned;         // columns barred from entering

    double& at(int i, int j) { return t[static_cast<std::size_t>(i) * (ncols + 1) + j]; }
    double& rhs(int i) { return at(i, ncols); }

    void pivot(int r, int jc) {
        const double piv = at(r, jc);
        const double inv = 1.0 / piv;
        for (int j = 0; j <= ncols; ++j) at(r, j) *= inv;
        at(r, jc) = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = at(i, jc);
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols; ++j) at(i, j) -= f * at(r, j);
            at(i, jc) = 0.0;
        }
        const double zf = zrow[jc];
        if (zf != 0.0) {
            for (int j = 0; j < ncols; ++j) zrow[j] -= zf * at(r, j);
            zrow[jc] = 0.0;
        }
        basis[r] = jc;
    }

    void reset_costs(const std::vector<double>& cost) {
        zrow = cost;
        for (int i = 0; i < m; ++i) {
            const double cb = cost[basis[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j < ncols; ++j) zrow[j] -= cb * at(i, j);
        }
    }

    // Primal simplex sweep. Dantzig pricing with a largest-pivot tie break
    // keeps the tableau numerically healthy; after a long run of degenerate
    // pivots the rules switch to Bland's (smallest index), which guarantees
    // escape from any cycle. Returns Optimal or Unbounded.
    Status run(int& iterations, int max_iter) {
        int stall = 0;
        for (;;) {
            const bool bland = stall >= 64;
            int enter = -1;
            if (bland) {
                for (int j = 0; j < ncols; ++j)
                    if (!banned[j] && zrow[j] < -kEnterTol) {
                        enter = j;
                        break;
                    }
            } else {
                double best = -kEnterTol;
                for (int j = 0; j < ncols; ++j)
                    if (!banned[j] && zrow[j] < best) {
                        best = zrow[j];
                        enter = j;
                    }
            }
            if (enter < 0) return Status::Optimal;

            int leave = -1;
            double best_ratio = 0.0, best_piv = 0.0;
            for (int i = 0; i < m; ++i) {
                const double a = at(i, enter);
                if (a <= kPivotTol) continue;
                const double ratio = std::max(rhs(i), 0.0) / a;
                bool take = false;
                if (leave < 0 || ratio < best_ratio - 1e-12) {
                    take = true;
                } else if (ratio <= best_ratio + 1e-12) {
                    take = bland ? basis[i] < basis[leave] : a > best_piv;
                }
                if (take) {
                    leave = i;
                    best_ratio = ratio;
                    best_piv = a;
                }
            }
            if (leave < 0) return Status::Unbounded;
            const bool degenerate = rhs(leave) <= 1e-12;
            pivot(leave, enter);
            stall = degenerate ? stall + 1 : 0;
            if (++iterations > max_iter)
                throw std::runtime_error("lp: simplex iteration limit exceeded");
        }
    }
};

// Dense LU with partial pivoting; solves A x = b for square A (row-major).
// Returns false when A is numerically singular.
bool lu_solve(std::vector<double> A, int n, const std::vector<double>& b,
              std::vector<double>& x) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::fabs(A[static_cast<std::size_t>(perm[k]) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::fabs(A[static_cast<std::size_t>(perm[i]) * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best < 1e-11) return false;
        std::swap(perm[k], perm[piv]);
        const double inv = 1.0 / A[static_cast<std::size_t>(perm[k]) * n + k];
        for (int i = k + 1; i < n; ++i) {
            const double f = A[static_cast<std::size_t>(perm[i]) * n + k] * inv;
            A[static_cast<std::size_t>(perm[i]) * n + k] = f;
            if (f == 0.0) continue;
            for (int j = k + 1; j < n; ++j)
                A[static_cast<std::size_t>(perm[i]) * n + j] -=
                    f * A[static_cast<std::size_t>(perm[k]) * n + j];
        }
    }
    x.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double v = b[perm[i]];
        for (int j = 0; j < i; ++j) v -= A[static_cast<std::size_t>(perm[i]) * n + j] * x[j];
        x[i] = v;
    }
    for (int i = n - 1; i >= 0; --i) {
        double v = x[i];
        for (int j = i + 1; j < n; ++j)
            v -= A[static_cast<std::size_t>(perm[i]) * n + j] * x[j];
        x[i] = v / A[static_cast<std::size_t>(perm[i]) * n + i];
    }
    return true;
}

}  // namespace

Solution solve(const Problem& p, double tol) {
    const int m = static_cast<int>(p.rows.size());
    const int nv = p.nvars;

    // Normalize rows to nonnegative right-hand sides, remembering the flip so
    // duals can be reported against the caller's original rows.
    std::vector<std::vector<double>> a(m);
    std::vector<double> b(m);
    std::vector<Rel> rel(m);
    std::vector<double> flip(m, 1.0);
    for (int i = 0; i < m; ++i) {
        a[i] = p.rows[i].a;
        b[i] = p.rows[i].b;
        rel[i] = p.rows[i].rel;
        if (b[i] < 0.0) {
            for (double& v : a[i]) v = -v;
            b[i] = -b[i];
            flip[i] = -1.0;
            if (rel[i] == Rel::LE)
                rel[i] = Rel::GE;
            else if (rel[i] == Rel::GE)
                rel[i] = Rel::LE;
        }
    }

    // Column layout: structural columns first (free variables contribute a
    // positive and a negative part), then slack/surplus, then artificials.
    std::vector<int> col_var;
    std::vector<double> col_sign;
    for (int j = 0; j < nv; ++j) {
        col_var.push_back(j);
        col_sign.push_back(1.0);
        const bool is_nonneg = j < static_cast<int>(p.nonneg.size()) && p.nonneg[j];
        if (!is_nonneg) {
            col_var.push_back(j);
            col_sign.push_back(-1.0);
        }
    }
    const int nstruct = static_cast<int>(col_var.size());

    int ncols = nstruct;
    std::vector<int> slack_col(m, -1), art_col(m, -1), unit_col(m, -1);
    for (int i = 0; i < m; ++i) {
        if (rel[i] == Rel::LE) {
            slack_col[i] = ncols++;
            unit_col[i] = slack_col[i];
        } else if (rel[i] == Rel::GE) {
            slack_col[i] = ncols++;  // surplus, coefficient -1
            art_col[i] = ncols++;
            unit_col[i] = art_col[i];
        } else {
            art_col[i] = ncols++;
            unit_col[i] = art_col[i];
        }
    }

    Tableau tb;
    tb.m = m;
    tb.ncols = ncols;
    tb.t.assign(static_cast<std::size_t>(m) * (ncols + 1), 0.0);
    tb.basis.assign(m, -1);
    tb.banned.assign(ncols, 0);
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k < nstruct; ++k) tb.at(i, k) = col_sign[k] * a[i][col_var[k]];
        if (slack_col[i] >= 0) tb.at(i, slack_col[i]) = rel[i] == Rel::LE ? 1.0 : -1.0;
        if (art_col[i] >= 0) tb.at(i, art_col[i]) = 1.0;
        tb.rhs(i) = b[i];
        tb.basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
    }

    Solution out;
    const int max_iter = 2000 + 60 * (ncols + m);

    // Phase 1: drive the artificials to zero.
    bool any_art = false;
    {
        std::vector<double> cost1(ncols, 0.0);
        for (int i = 0; i < m; ++i)
            if (art_col[i] >= 0) {
                cost1[art_col[i]] = 1.0;
                any_art = true;
            }
        if (any_art) {
            tb.reset_costs(cost1);
            tb.run(out.iterations, max_iter);  // phase 1 cannot be unbounded
            std::vector<char> is_art(ncols, 0);
            for (int i = 0; i < m; ++i)
                if (art_col[i] >= 0) is_art[art_col[i]] = 1;
            // Any artificial still basic (in whichever row) carries leftover
            // infeasibility.
            double infeas = 0.0;
            for (int i = 0; i < m; ++i)
                if (is_art[tb.basis[i]]) infeas += std::max(tb.rhs(i), 0.0);
            if (infeas > tol) {
                out.status = Status::Infeasible;
                return out;
            }
            // Pivot lingering zero-valued artificials out where possible
            // (rows where no non-artificial pivot exists are redundant and
            // simply ride along with their artificial basic at zero).
            for (int i = 0; i < m; ++i) {
                if (!is_art[tb.basis[i]]) continue;
                int best_j = -1;
                double best_a = 1e-7;  // refuse tiny pivots; leave row inert
                for (int j = 0; j < ncols; ++j) {
                    if (!is_art[j] && std::fabs(tb.at(i, j)) > best_a) {
                        best_a = std::fabs(tb.at(i, j));
                        best_j = j;
                    }
                }
                if (best_j >= 0) tb.pivot(i, best_j);
            }
        }
    }

    // Phase 2: the real objective, artificial columns barred from entering.
    std::vector<double> cost2(ncols, 0.0);
    const double osign = p.sense == Sense::Maximize ? -1.0 : 1.0;
    for (int k = 0; k < nstruct; ++k) cost2[k] = osign * col_sign[k] * p.c[col_var[k]];
    for (int i = 0; i < m; ++i)
        if (art_col[i] >= 0) tb.banned[art_col[i]] = 1;
    tb.reset_costs(cost2);
    const Status st = tb.run(out.iterations, max_iter);
    if (st == Status::Unbounded) {
        out.status = Status::Unbounded;
        return out;
    }

    // Extract the primal point. Values read off the pivoted tableau carry the
    // accumulated rounding of every pivot, so refactorize: rebuild the final
    // basis matrix from the original (sign-normalized) data and solve it
    // fresh, which reduces the error to that of one factorization.
    std::vector<int> slack_of(ncols, -1), art_of(ncols, -1);
    for (int i = 0; i < m; ++i) {
        if (slack_col[i] >= 0) slack_of[slack_col[i]] = i;
        if (art_col[i] >= 0) art_of[art_col[i]] = i;
    }
    const auto basis_column = [&](int jcol, int i) -> double {
        if (jcol < nstruct) return col_sign[jcol] * a[i][col_var[jcol]];
        if (slack_of[jcol] >= 0)
            return i == slack_of[jcol] ? (rel[i] == Rel::LE ? 1.0 : -1.0) : 0.0;
        return i == art_of[jcol] ? 1.0 : 0.0;
    };

    std::vector<double> colval(ncols, 0.0);
    std::vector<double> ydual;  // refactored duals (internal min sense)
    bool refactored = false;
    {
        std::vector<double> B(static_cast<std::size_t>(m) * m);
        for (int r = 0; r < m; ++r)
            for (int i = 0; i < m; ++i)
                B[static_cast<std::size_t>(i) * m + r] = basis_column(tb.basis[r], i);
        std::vector<double> xb;
        if (lu_solve(B, m, b, xb)) {
            // A clearly negative basic value means the basis itself is off
            // (not just the arithmetic); keep the tableau's numbers then.
            double worst = 0.0;
            for (double v : xb) worst = std::min(worst, v);
            if (worst >= -1e-6) {
                for (int r = 0; r < m; ++r) colval[tb.basis[r]] = xb[r];
                refactored = true;
                std::vector<double> bt(static_cast<std::size_t>(m) * m), cb(m);
                for (int r = 0; r < m; ++r) cb[r] = cost2[tb.basis[r]];
                for (int r = 0; r < m; ++r)
                    for (int i = 0; i < m; ++i)
                        bt[static_cast<std::size_t>(r) * m + i] =
                            basis_column(tb.basis[r], i);
                if (!lu_solve(bt, m, cb, ydual)) ydual.clear();
            }
        }
    }
    if (!refactored)
        for (int i = 0; i < m; ++i) colval[tb.basis[i]] = tb.rhs(i);

    out.x.assign(nv, 0.0);
    for (int k = 0; k < nstruct; ++k) out.x[col_var[k]] += col_sign[k] * colval[k];
    out.objective = 0.0;
    for (int j = 0; j < nv; ++j) out.objective += p.c[j] * out.x[j];

    // Verify feasibility of the returned point at the caller's tolerance,
    // relative to each row's own magnitude (backward-error criterion).
    for (int i = 0; i < m; ++i) {
        double lhs = 0.0, rowscale = 1.0 + std::fabs(p.rows[i].b);
        for (int j = 0; j < nv; ++j) {
            lhs += p.rows[i].a[j] * out.x[j];
            rowscale += std::fabs(p.rows[i].a[j] * out.x[j]);
        }
        const double resid = lhs - p.rows[i].b;
        const double bound = tol * rowscale;
        const bool bad = (p.rows[i].rel == Rel::LE && resid > bound) ||
                         (p.rows[i].rel == Rel::GE && resid < -bound) ||
                         (p.rows[i].rel == Rel::EQ && std::fabs(resid) > bound);
        if (bad) {
            out.status = Status::NumericalFailure;
            out.row_duals.clear();
            return out;
        }
    }

    // Row duals in the caller's sense: the reduced cost of each row's unit
    // column is -y for the internal minimization; undo the sense flip and any
    // right-hand-side negation.
    out.row_duals.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        const double y_min = ydual.empty() ? -tb.zrow[unit_col[i]] : ydual[i];
        out.row_duals[i] = flip[i] * (p.sense == Sense::Maximize ? -y_min : y_min);
    }

    out.status = Status::Optimal;
    return out;
}

}  // namespace grmr::lp
