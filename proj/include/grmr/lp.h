// Dense two-phase primal simplex for the small linear programs this project
// solves (tens of rows, up to a few thousand columns). Variables are free by
// default; rows mix <=, >= and ==. Bland's rule guarantees termination, and
// every solve also reports row duals so callers can read a primal solution
// off a hand-built dual. Deterministic: identical inputs take identical paths.
#pragma once

#include <cstdint>
#include <vector>

namespace grmr::lp {

enum class Sense { Minimize, Maximize };
enum class Rel { LE, GE, EQ };
// NumericalFailure: the simplex terminated, but even after refactorizing the
// final basis against the original data the point violates a row beyond the
// verification tolerance. The solution is unusable; callers choose a policy.
enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

struct Row {
    std::vector<double> a;
    Rel rel = Rel::LE;
    double b = 0.0;
};

struct Problem {
    Sense sense = Sense::Minimize;
    int nvars = 0;
    std::vector<double> c;           // size nvars
    std::vector<std::uint8_t> nonneg;  // size nvars; 0 = free variable
    std::vector<Row> rows;

    // Convenience: add a row from a coefficient vector.
    void add_row(std::vector<double> a, Rel rel, double b) {
        rows.push_back({std::move(a), rel, b});
    }
};

struct Solution {
    Status status = Status::Infeasible;
    double objective = 0.0;          // in the problem's stated sense
    std::vector<double> x;           // size nvars (empty unless Optimal)
    // Marginal value of each row's right-hand side on the stated objective:
    // row_duals[i] = d(objective) / d(b_i). Empty unless Optimal.
    std::vector<double> row_duals;
    int iterations = 0;
};

// Solves the problem. `tol` is the feasibility/optimality tolerance used for
// the final verification of the returned point; pivoting uses tighter
// internal thresholds. Throws std::runtime_error only on iteration blowup.
Solution solve(const Problem& p, double tol = 1e-7);

}  // namespace grmr::lp
