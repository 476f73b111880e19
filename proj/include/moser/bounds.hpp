#pragma once

#include <optional>
#include <vector>

#include "moser/mode.hpp"

namespace moser {

/// 2^p2 3^p3 pi^ppi e^pe, evaluated in long double.
struct PowerProduct {
    int p2 = 0, p3 = 0, ppi = 0, pe = 0;
    long double value() const;
};

namespace constants {
/// 3^6 8^-7 pi^-12 e^-2: admissible eps0 per unit omega R*^2.
inline constexpr PowerProduct eps0_factor{-21, 6, -12, -2};
/// 3^6 2^-25 pi^-12 e^-2: radius threshold base.
inline constexpr PowerProduct r0_factor{-25, 6, -12, -2};
} // namespace constants

/// The step-by-step sequences of the quadratic scheme.
struct BoundSchedule {
    Mode mode = Mode::aperiodic;
    double eps0 = 0.0, R0 = 0.0, Rstar = 0.0, omega = 1.0;
    std::optional<double> a;
    std::vector<double> eps, d, R, m_lo, M_hi; ///< R, m_lo, M_hi have one more entry than eps and d
    double eps0_limit = 0.0;                   ///< largest admissible eps0
    bool condition_holds = false;
};

/// j = 0..steps-1. Strong mode requires a > 0.
BoundSchedule schedule(double eps0, double R0, double omega, Mode mode, std::optional<double> a, int steps);

/// 8 e^2 eps^2 / (omega [a] R*^2 d^6): the bound on the next perturbation.
double quadratic_bound(double eps, double d, double Rstar, double omega, Mode mode, std::optional<double> a);

struct Smallness {
    bool holds = true;
    double margin = 0.0; ///< left-hand side, compared with 1/2
};

/// 4 e^2 eps / (omega [a] R*^2 d^6) <= 1/2.
Smallness smallness_check(double eps, double d, double Rstar, double omega, Mode mode, std::optional<double> a);

/// 4 M / (omega delta^2) (aperiodic) or 4 M / (a delta^3) (strong).
double chi_bound(double M, double omega, double delta, Mode mode, std::optional<double> a);

/// s! (e^2 delta^-2 R^-2 |chi|)^s |G|. With R = 1 this is the unscaled
/// form, which on its own only holds for radii of order one.
double lie_bound(int s, double delta, double chi_norm, double g_norm, double R = 1.0);

/// min{(c omega [a] / M_F)^4, R^4}.
double r0_threshold(double M_F, double omega, double R, Mode mode, std::optional<double> a);

} // namespace moser
