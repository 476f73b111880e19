#include "moser/normalizer.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "moser/errors.hpp"

namespace moser {

namespace {

double measure(const PQSeries &F, double R, const NormalizerConfig &cfg)
{
    if (F.is_zero()) return 0.0;
    if (cfg.mode == Mode::strong) return decay_envelope(F, R, *cfg.lattice.a_value);
    return taylor_norm(F, R);
}

double max_p_displacement(const LieTransform &tr, double R)
{
    double worst = 0.0;
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            const cplx p = std::polar(R, 2 * std::numbers::pi * a / 8);
            const cplx q = std::polar(R, 2 * std::numbers::pi * (b + 0.5) / 8);
            for (int i = 0; i <= 20; ++i) {
                const double t = 0.5 * i;
                worst = std::max(worst, std::abs(tr.p_image(p, q, t) - p));
            }
        }
    }
    return worst;
}

} // namespace

StepResult step(const MoserHamiltonian &H, const NormalizerConfig &cfg, int j, double R, double d,
                std::optional<double> eps_theory)
{
    const int N = H.F.trunc_degree();
    const double omega = cfg.lattice.omega_value;
    const std::optional<double> a = cfg.lattice.a_value;
    const double Rstar = cfg.R0 / 2;

    StepResult out;
    out.H = H;
    LedgerRow &row = out.row;
    row.j = j;
    row.R = R;
    row.d = d;
    row.R_next = (1 - 2 * d) * R;
    row.eps_hat = measure(H.F, R, cfg);
    row.eps_theory = eps_theory.value_or(0.0);
    row.min_degree = H.F.min_degree().value_or(-1);
    row.m_hat = row.M_hat = omega;
    row.smallness = smallness_check(row.eps_hat, d, Rstar, omega, cfg.mode, a);
    if (H.F.is_zero()) {
        out.chi = PQSeries(N);
        return out;
    }

    PQSeries F = H.F;
    if (cfg.mode == Mode::aperiodic) {
        auto [mixed, diag] = split_mixed_diagonal(H.F);
        out.H.J += diag.truncated(out.H.J.max_power());
        const XSeries g = out.H.J.dx();
        const GHypothesis hyp = check_g_hypotheses(g, omega, R, cfg.g_x_points, cfg.g_t_points, cfg.g_t_max);
        row.m_hat = hyp.min_re;
        row.M_hat = hyp.max_abs;
        if (!hyp.holds) {
            std::ostringstream msg;
            msg << "step " << j << ": measured g leaves [omega/2, 3 omega/2] (min Re g = " << hyp.min_re
                << ", max |g| = " << hyp.max_abs << ", omega = " << omega << ")";
            throw HypothesisViolation(msg.str());
        }
        F = mixed;
        row.eps_hat_mixed = measure(F, R, cfg);
        out.chi = solve_general(F, g, cfg.lattice);
    } else {
        row.eps_hat_mixed = row.eps_hat;
        out.chi = solve_strong(F, cfg.lattice);
    }

    row.residual = residual(out.chi, {cfg.mode, F, out.H.J.dx(), cfg.lattice}, R, cfg.residual_seed);

    const double R1 = (1 - d) * R, R2 = (1 - 2 * d) * R;
    row.chi_norm = taylor_norm(out.chi, R1);
    row.chi_dt_norm = taylor_norm(out.chi.dt(), R1);
    row.chi_bound = chi_bound(cfg.mode == Mode::strong ? row.eps_hat : taylor_norm(F, R), omega, d, cfg.mode, a);
    row.lie_norm = taylor_norm(lie_derivative(F, out.chi), R2);
    const double f_norm = taylor_norm(F, R1);
    row.lie_bound = moser::lie_bound(1, d, row.chi_norm, f_norm, R);
    row.lie_bound_literal = moser::lie_bound(1, d, row.chi_norm, f_norm);

    out.H.F = transformed_perturbation(F, out.chi);
    return out;
}

NormalFormResult run(const MoserHamiltonian &H0, const NormalizerConfig &cfg)
{
    if (cfg.mode == Mode::strong && !cfg.lattice.a_value) throw ConfigurationError("strong mode needs a decay rate");
    NormalFormResult res;
    res.mode = cfg.mode;
    res.Rstar = cfg.R0 / 2;
    res.H = H0;

    const double omega = cfg.lattice.omega_value;
    const double eps0 = measure(H0.F, cfg.R0, cfg);
    std::optional<BoundSchedule> sched;
    if (eps0 > 0.0) {
        sched = schedule(eps0, cfg.R0, omega, cfg.mode, cfg.lattice.a_value, std::max(cfg.max_steps, 1));
        if (!sched->condition_holds) {
            std::ostringstream msg;
            msg << "eps0 = " << eps0 << " exceeds the admissible " << sched->eps0_limit;
            res.warnings.push_back(msg.str());
        }
    }

    double R = cfg.R0;
    for (int j = 0; j < cfg.max_steps && !res.H.F.is_zero(); ++j) {
        const double d = cfg.empirical_d ? *cfg.empirical_d : sched->d[j];
        if (!(d > 0.0 && d < 0.5)) {
            std::ostringstream msg;
            msg << "step " << j << ": d = " << d << " leaves no domain; stopping";
            res.warnings.push_back(msg.str());
            break;
        }
        StepResult sr = step(res.H, cfg, j, R, d, sched ? std::optional(sched->eps[j]) : std::nullopt);
        LedgerRow &row = sr.row;
        row.eps_next_hat = measure(sr.H.F, row.R_next, cfg);
        row.quad_bound = quadratic_bound(row.eps_hat, d, res.Rstar, omega, cfg.mode, cfg.lattice.a_value);
        res.steps.push_back(LieTransform::build(sr.chi));
        row.p_displacement = max_p_displacement(res.steps.back(), row.R_next);
        res.ledger.push_back(row);
        res.H = std::move(sr.H);
        R = row.R_next;
        if (R < res.Rstar && !res.H.F.is_zero()) {
            std::ostringstream msg;
            msg << "step " << j << ": radius " << R << " fell below R* = " << res.Rstar;
            res.warnings.push_back(msg.str());
        }
    }
    res.converged = res.H.F.is_zero();
    if (!res.converged) res.warnings.push_back("perturbation not removed within max_steps");
    return res;
}

std::vector<PhasePoint> invert_and_compose(const NormalFormResult &result, const PhasePoint &point,
                                           const std::vector<double> &times, Direction dir,
                                           std::vector<std::string> *warnings)
{
    std::vector<PhasePoint> out;
    out.reserve(times.size());
    for (double t : times) {
        PhasePoint pt = point;
        pt.t = t;
        out.push_back(transform_point(result.steps, pt, dir, result.Rstar, warnings));
    }
    return out;
}

std::vector<BoundCheck> bound_checks(const NormalFormResult &result, const NormalizerConfig &cfg)
{
    std::vector<BoundCheck> rows;
    const auto &L = result.ledger;
    for (std::size_t k = 0; k < L.size(); ++k) {
        const LedgerRow &r = L[k];
        const int j = r.j;
        rows.push_back({j, "chi", std::max(r.chi_norm, r.chi_dt_norm), r.chi_bound,
                        std::max(r.chi_norm, r.chi_dt_norm) <= r.chi_bound});
        rows.push_back({j, "lie", r.lie_norm, r.lie_bound, r.lie_norm <= r.lie_bound});
        rows.push_back({j, "lie_literal", r.lie_norm, r.lie_bound_literal, r.lie_norm <= r.lie_bound_literal, false});
        rows.push_back({j, "smallness", r.smallness.margin, 0.5, r.smallness.holds});
        rows.push_back({j, "recurrent", r.eps_next_hat, r.quad_bound, r.eps_next_hat <= r.quad_bound});
        if (cfg.mode == Mode::aperiodic && k + 1 < L.size()) {
            const double drift = r.m_hat - L[k + 1].m_hat;
            const double allowed = r.eps_hat / std::pow(result.Rstar * r.d, 2);
            rows.push_back({j, "g_drift", drift, allowed, drift <= allowed});
        }
    }
    return rows;
}

} // namespace moser
