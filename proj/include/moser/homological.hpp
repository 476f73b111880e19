#pragma once

#include <cstdint>

#include "moser/mode.hpp"
#include "moser/series.hpp"

namespace moser {

struct HomologicalProblem {
    Mode mode = Mode::strong;
    PQSeries F;
    XSeries g; ///< dJ/dx with g(0, t) = omega; aperiodic mode only
    RateLattice lattice;
};

/// Solves c' + k omega c = f. For k > 0, c(0) = 0; otherwise c is the
/// solution bounded on the half line, -e^{-k omega t} int_t^inf e^{k omega s} f.
ExpPoly solve_linear_ode(const ExpPoly &f, int k, const RateLattice &lattice);

/// chi with L_chi(omega pq + eta) + F = 0.
PQSeries solve_strong(const PQSeries &F, const RateLattice &lattice);

/// chi with L_chi(J + eta) + F = 0 for mixed-only F, where g = dJ/dx.
PQSeries solve_general(const PQSeries &F, const XSeries &g, const RateLattice &lattice);

PQSeries solve(const HomologicalProblem &pb);

/// L_chi(J + eta) + F as a series, J = omega x in strong mode.
PQSeries residual_series(const PQSeries &chi, const HomologicalProblem &pb);

/// Max of |residual_series| over seeded random points with |p|, |q| <= R and
/// t in [0, 50], divided by the Taylor norm of F at R.
double residual(const PQSeries &chi, const HomologicalProblem &pb, double R, std::uint64_t seed = 0,
                int samples = 200);

/// Measured range of g on |x| <= R^2, t in [0, t_max] and t -> inf.
struct GHypothesis {
    double min_re = 0.0;
    double max_abs = 0.0;
    bool holds = false; ///< omega/2 <= Re g and |g| <= 3 omega / 2
};

GHypothesis check_g_hypotheses(const XSeries &g, double omega, double R, int x_points = 32, int t_points = 64,
                               double t_max = 50.0);

} // namespace moser
