#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moser/bounds.hpp"
#include "moser/homological.hpp"
#include "moser/lie.hpp"
#include "moser/mode.hpp"
#include "moser/series.hpp"

namespace moser {

struct NormalizerConfig {
    Mode mode = Mode::strong;
    RateLattice lattice;
    double R0 = 0.1;
    int max_steps = 10;
    std::optional<double> empirical_d; ///< fixed d_j; the certified schedule when empty
    int g_x_points = 32;
    int g_t_points = 64;
    double g_t_max = 50.0;
    std::uint64_t residual_seed = 0; ///< sample points of the homological residual
};

/// One normalization step as measured. Norms are rigorous upper bounds; in
/// strong mode eps_hat is the decay envelope (weight a) instead of the plain
/// Taylor norm.
struct LedgerRow {
    int j = 0;
    double R = 0.0, d = 0.0, R_next = 0.0;
    double eps_hat = 0.0;       ///< |F^(j)| at R_j (the full F before splitting)
    double eps_hat_mixed = 0.0; ///< |mixed part| at R_j; equals eps_hat in strong mode
    double eps_theory = 0.0;    ///< eps_j of the schedule started at eps_hat_0
    double m_hat = 0.0, M_hat = 0.0; ///< min Re g and max |g| on the working domain
    Smallness smallness;
    int min_degree = -1; ///< of F^(j); -1 when zero
    double chi_norm = 0.0, chi_dt_norm = 0.0, chi_bound = 0.0; ///< at (1 - d_j) R_j
    double residual = 0.0; ///< sampled homological residual, relative to |F|
    double lie_norm = 0.0;         ///< |L_chi F| at (1 - 2 d_j) R_j
    double lie_bound = 0.0;        ///< its estimate with the R_j^-2 Cauchy factor
    double lie_bound_literal = 0.0; ///< the same estimate without R_j^-2
    double eps_next_hat = 0.0;  ///< |F^(j+1)| at R_{j+1}
    double quad_bound = 0.0;    ///< 8 e^2 eps_hat^2 / (omega [a] R*^2 d^6)
    double p_displacement = 0.0; ///< max |p-image - p| on |p| = |q| = R_{j+1}, t in [0, 10]
};

struct NormalFormResult {
    Mode mode = Mode::strong;
    MoserHamiltonian H;
    std::vector<LieTransform> steps;
    std::vector<LedgerRow> ledger;
    double Rstar = 0.0;
    bool converged = false;
    std::vector<std::string> warnings;
};

struct StepResult {
    MoserHamiltonian H;
    PQSeries chi;
    LedgerRow row;
};

/// One cycle at radius R with width d. Throws HypothesisViolation when the
/// measured g leaves omega/2 <= Re g <= |g| <= 3 omega/2.
StepResult step(const MoserHamiltonian &H, const NormalizerConfig &cfg, int j, double R, double d,
                std::optional<double> eps_theory = std::nullopt);

/// Iterates until F vanishes at truncation or max_steps is reached.
NormalFormResult run(const MoserHamiltonian &H0, const NormalizerConfig &cfg);

/// Maps the point through the composed transformation at each time.
std::vector<PhasePoint> invert_and_compose(const NormalFormResult &result, const PhasePoint &point,
                                           const std::vector<double> &times, Direction dir,
                                           std::vector<std::string> *warnings = nullptr);

struct BoundCheck {
    int j = 0;
    std::string name; ///< "chi", "lie", "lie_literal", "smallness", "recurrent", "g_drift"
    double measured = 0.0, theoretical = 0.0;
    bool holds = true;
    bool gating = true; ///< counts toward the overall verdict
};

/// Measured-vs-theoretical rows derived from the ledger.
std::vector<BoundCheck> bound_checks(const NormalFormResult &result, const NormalizerConfig &cfg);

} // namespace moser
