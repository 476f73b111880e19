#pragma once

#include <span>
#include <string>
#include <vector>

#include "moser/series.hpp"

namespace moser {

/// L_chi G = {G, chi} = G_q chi_p - G_p chi_q for eta-free G and chi.
PQSeries lie_derivative(const PQSeries &G, const PQSeries &chi);

/// L_chi eta = -d chi / dt.
PQSeries lie_eta_action(const PQSeries &chi);

/// L_chi^s G.
PQSeries lie_power(const PQSeries &G, const PQSeries &chi, int s);

/// exp(L_chi) G = sum_s L_chi^s G / s!, summed until the terms vanish at
/// truncation. chi must start at degree 3.
PQSeries exp_lie(const PQSeries &G, const PQSeries &chi);

/// exp(L_chi) eta - eta = sum_{s >= 1} L_chi^{s-1}(-chi_t) / s!.
PQSeries exp_lie_eta(const PQSeries &chi);

/// sum_{s >= 1} s / (s+1)! L_chi^s F: the perturbation left after a step
/// whose chi solves the homological equation for F.
PQSeries transformed_perturbation(const PQSeries &F, const PQSeries &chi);

/// Truncated Lie-series images of the coordinate functions for one step,
/// in both directions.
struct LieTransform {
    PQSeries chi;
    PQSeries p_image, q_image, eta_shift;             // old = image(new)
    PQSeries p_inverse, q_inverse, eta_inverse_shift; // new = image(old), from -chi

    static LieTransform build(const PQSeries &chi);
};

struct PhasePoint {
    cplx p, q, eta;
    double t = 0.0;
};

enum class Direction {
    forward, ///< normal-form coordinates to original ones
    inverse  ///< original coordinates to normal-form ones
};

/// Applies one step's map; t is left unchanged.
PhasePoint apply(const LieTransform &tr, const PhasePoint &pt, Direction dir);

/// Composes the per-step maps: forward applies the last step first, inverse
/// the first step first. Points with |p| or |q| above radius are still
/// mapped; a warning is appended when warnings is non-null.
PhasePoint transform_point(std::span<const LieTransform> steps, PhasePoint pt, Direction dir, double radius,
                           std::vector<std::string> *warnings = nullptr);

} // namespace moser
