#pragma once

#include <vector>

#include "moser/normalizer.hpp"
#include "moser/series.hpp"

namespace moser {

struct Trajectory {
    std::vector<double> t;
    std::vector<cplx> p, q, eta;
    bool escaped = false;
    double tol = 0.0;
    int accepted = 0, rejected = 0;

    std::size_t size() const { return t.size(); }
    PhasePoint at(std::size_t k) const { return {p[k], q[k], eta[k], t[k]}; }
};

/// Adaptive classical RK4 with step doubling for p' = -H_q, q' = H_p,
/// eta' = -H_t, local error <= tol per unit time. Stops early, flagging
/// escaped, once |p| or |q| exceeds escape_radius.
Trajectory integrate(const MoserHamiltonian &H, const PhasePoint &start, double T, double tol = 1e-10,
                     double escape_radius = 1.0);

/// Closed-form flow of J(x, t) + eta at the given times:
/// p = p0 e^{-A}, q = q0 e^{A}, A(x, t) = int_0^t dJ/dx(x, s) ds.
Trajectory normalform_flow(const XSeries &J, const PhasePoint &start, const std::vector<double> &times);

struct ConjugacyReport {
    double max_error = 0.0; ///< max over samples of the (p, q) distance
    double x_drift = 0.0;   ///< max |x(pulled back) - x0| along the true flow
    bool escaped = false;
    Trajectory original, mapped;
};

/// Compares the flow of H0 from start with forward map o normal-form flow o
/// inverse map, at the integrator's sample times.
ConjugacyReport conjugacy_error(const NormalFormResult &result, const MoserHamiltonian &H0, const PhasePoint &start,
                                double T, double tol = 1e-10, double escape_radius = 1.0);

struct ScalingFit {
    std::vector<double> radii, errors, drifts;
    double exponent = 0.0; ///< least-squares slope of log error against log r
    bool escaped = false;
};

/// conjugacy_error from r * direction for each r, run concurrently.
ScalingFit conjugacy_scaling(const NormalFormResult &result, const MoserHamiltonian &H0,
                             const std::vector<double> &radii, cplx p_dir, cplx q_dir, double T, double tol = 1e-10,
                             double escape_radius = 1.0);

} // namespace moser
