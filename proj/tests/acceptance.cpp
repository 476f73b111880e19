// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "moser/bounds.hpp"
#include "moser/errors.hpp"
#include "moser/flow.hpp"
#include "moser/homological.hpp"
#include "moser/lie.hpp"
#include "moser/normalizer.hpp"
#include "test_util.hpp"

using namespace moser;
using moser::testing::random_general_problem;
using moser::testing::random_series;
using moser::testing::random_strong_problem;

namespace {

constexpr double kPi = std::numbers::pi;
const double kE2 = std::exp(2.0);

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok) { pass = pass && ok; }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

PQSeries mono(int N, int a1, int a2, ExpPoly c = ExpPoly(1.0)) { return PQSeries::monomial(N, a1, a2, std::move(c)); }

const RateLattice unit = make_lattice(1.0, 1.0);

MoserHamiltonian desk_hamiltonian(int N = 10)
{
    PQSeries F(N);
    const ExpPoly c = ExpPoly::term(unit.basis, 0.01, 0, unit.from_user(1, 0));
    F.set(3, 0, c);
    F.set(0, 3, c);
    F.set(2, 1, c);
    return MoserHamiltonian::standard(1.0, F);
}

NormalizerConfig desk_config()
{
    NormalizerConfig cfg;
    cfg.mode = Mode::strong;
    cfg.lattice = unit;
    cfg.R0 = 0.1;
    cfg.empirical_d = 0.1;
    return cfg;
}

// 1. Homological exactness
void homological_exactness(Verdict &v)
{
    std::mt19937_64 rng(1001);
    double worst_ode = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const HomologicalProblem pb = random_strong_problem(rng);
        const PQSeries chi = solve(pb);
        pb.F.for_each([&](int a1, int a2, const ExpPoly &f) {
            const ExpPoly &c = chi.coeff(a1, a2);
            const ExpPoly lhs = ep_derivative(c) + c * (pb.lattice.omega_value * (a2 - a1));
            const double scale = std::max(f.max_amplitude(), lhs.max_amplitude());
            worst_ode = std::max(worst_ode, (lhs - f).max_amplitude() / scale);
        });
    }
    double worst_general = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const HomologicalProblem pb = random_general_problem(rng);
        worst_general = std::max(worst_general, residual(solve(pb), pb, 0.5, trial));
    }
    v.require(worst_ode <= 1e-12);
    v.require(worst_general <= 1e-10);
    v.detail << "strong ODE residual (relative, per term) " << worst_ode << " <= 1e-12; general sampled residual "
             << worst_general << " <= 1e-10";
}

// 2. Degree doubling
void degree_doubling(Verdict &v)
{
    const NormalFormResult r = run(desk_hamiltonian(), desk_config());
    v.detail << "min degrees";
    for (int j = 0; j <= 3; ++j) {
        const int deg = j < static_cast<int>(r.ledger.size()) ? r.ledger[j].min_degree : -1;
        v.detail << " " << (deg < 0 ? std::string("zero") : std::to_string(deg));
        v.require(deg < 0 || deg >= (1 << j) + 2);
    }
    v.detail << "; F = 0 after " << r.ledger.size() << " steps (need <= 3)";
    v.require(r.converged && r.H.F.is_zero());
    v.require(r.ledger.size() <= 3);
}

// 3. Quadratic decay where smallness holds
void quadratic_decay(Verdict &v)
{
    const NormalizerConfig cfg = desk_config();
    const NormalFormResult r = run(desk_hamiltonian(), cfg);
    const double Rs = 0.05, omega = 1.0, d = *cfg.empirical_d;
    int checked = 0;
    v.detail << "ratio eps_next / bound:";
    for (const LedgerRow &row : r.ledger) {
        const double margin = 4 * kE2 * row.eps_hat / (omega * Rs * Rs * std::pow(d, 6));
        if (margin > 0.5) {
            v.detail << " j=" << row.j << " skipped (smallness " << margin << ")";
            continue;
        }
        const double bound = 8 * kE2 * row.eps_hat * row.eps_hat / (omega * Rs * Rs * std::pow(d, 6));
        ++checked;
        v.require(row.eps_next_hat <= bound);
        v.detail << " j=" << row.j << " " << row.eps_next_hat / bound;
    }
    v.require(checked > 0);
    v.detail << "; " << checked << " steps checked";
}

// 4. chi bounds
void chi_bounds(Verdict &v)
{
    std::mt19937_64 rng(1004);
    const double R = 0.5;
    double worst_general = 0.0, worst_strong = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const HomologicalProblem pb = random_general_problem(rng);
        const double omega = pb.lattice.omega_value;
        v.require(check_g_hypotheses(pb.g, omega, R).holds);
        const PQSeries chi = solve(pb);
        const double M = taylor_norm(pb.F, R);
        for (double delta : {0.1, 0.25, 0.5})
            worst_general = std::max(worst_general, taylor_norm(chi, (1 - delta) * R) / (4 * M / (omega * delta * delta)));
    }
    for (int trial = 0; trial < 20; ++trial) {
        const HomologicalProblem pb = random_strong_problem(rng);
        const double a = *pb.lattice.a_value;
        const PQSeries chi = solve(pb);
        const double M = decay_envelope(pb.F, R, a);
        for (double delta : {0.1, 0.25, 0.5})
            worst_strong = std::max(worst_strong, taylor_norm(chi, (1 - delta) * R) / (4 * M / (a * std::pow(delta, 3))));
    }
    v.require(worst_general <= 1.0);
    v.require(worst_strong <= 1.0);
    v.detail << "max measured/bound: general " << worst_general << ", strong " << worst_strong;
}

// 5. Lie estimate
void lie_estimate(Verdict &v)
{
    std::mt19937_64 rng(1005);
    double worst_literal = 0.0, worst_scaled = 0.0;
    for (double R : {0.5, 1.0}) {
        for (int trial = 0; trial < 20; ++trial) {
            const PQSeries G = random_series(rng, 14, 0, 4, 0.5);
            const PQSeries chi = random_series(rng, 14, 3, 4, 0.5);
            for (double delta : {0.1, 0.2}) {
                const double chi_n = taylor_norm(chi, (1 - delta) * R);
                const double g_n = taylor_norm(G, (1 - delta) * R);
                double fact = 1.0;
                for (int s = 1; s <= 4; ++s) {
                    fact *= s;
                    const double lhs = taylor_norm(lie_power(G, chi, s), (1 - 2 * delta) * R);
                    const double literal = fact * std::pow(kE2 * chi_n / (delta * delta), s) * g_n;
                    const double scaled = fact * std::pow(kE2 * chi_n / (delta * delta * R * R), s) * g_n;
                    worst_literal = std::max(worst_literal, lhs / literal);
                    worst_scaled = std::max(worst_scaled, lhs / scaled);
                }
            }
        }
    }
    v.require(worst_literal <= 1.0);
    v.require(worst_scaled <= 1.0);
    v.detail << "R in {0.5, 1}: max measured/bound " << worst_literal << " (as stated), " << worst_scaled
             << " (with R^-2 per bracket)";
}

// 6. Schedule identities
void schedule_identities(Verdict &v)
{
    double worst_rec = 0.0, worst_margin = 0.0;
    for (Mode mode : {Mode::aperiodic, Mode::strong}) {
        const std::optional<double> a = mode == Mode::strong ? std::optional(0.4) : std::nullopt;
        const BoundSchedule s = schedule(1e-13, 0.2, 0.8, mode, a, 22);
        for (int j = 0; j <= 20; ++j) {
            worst_rec = std::max(worst_rec, rel(quadratic_bound(s.eps[j], s.d[j], s.Rstar, s.omega, mode, a), s.eps[j + 1]));
            const double expect = 0.5 * std::pow((j + 1.0) / (j + 2.0), 12);
            worst_margin = std::max(worst_margin, rel(smallness_check(s.eps[j], s.d[j], s.Rstar, s.omega, mode, a).margin, expect));
        }
    }
    const double omega = 1.0, R0 = 0.2, Rs = R0 / 2;
    const double eps0 = 729.0 * std::pow(8.0, -7) * std::pow(kPi, -12) * std::exp(-2.0) * omega * Rs * Rs;
    const BoundSchedule b = schedule(eps0, R0, omega, Mode::aperiodic, std::nullopt, 1001);
    double dsum = 0.0;
    for (int j = 0; j <= 1000; ++j) dsum += b.d[j];
    const double r1 = r0_threshold(1.0, 1.0, 0.5, Mode::strong, 1.0);
    double worst_a4 = 0.0;
    for (double a : {1.0, 0.5, 0.25})
        worst_a4 = std::max(worst_a4, rel(r0_threshold(1.0, 1.0, 0.5, Mode::strong, a) / r1, std::pow(a, 4)));
    v.require(worst_rec <= 1e-12);
    v.require(worst_margin <= 1e-12);
    v.require(dsum <= 0.25);
    v.require(worst_a4 <= 1e-12);
    v.detail << "recurrence " << worst_rec << ", margin " << worst_margin << ", sum d " << dsum << " <= 0.25, a^4 "
             << worst_a4;
}

// 7. Conjugacy scaling
void conjugacy(Verdict &v)
{
    const int N = 10;
    const MoserHamiltonian H = desk_hamiltonian(N);
    const NormalFormResult r = run(H, desk_config());
    const ScalingFit fit = conjugacy_scaling(r, H, {0.02, 0.01, 0.005}, 1.0, 1.0, 3.0, 1e-10, 0.2);
    v.require(fit.exponent >= N - 2);
    v.require(fit.drifts[1] <= 1e-6);
    v.detail << "errors";
    for (double e : fit.errors) v.detail << " " << e;
    v.detail << "; exponent " << fit.exponent << " (need >= " << N - 2 << "); x drift at r = 0.01 " << fit.drifts[1]
             << (fit.escaped ? "; a trajectory left 2 R0" : "");
}

// 8. Canonicity
void canonicity(Verdict &v)
{
    std::mt19937_64 rng(1008);
    const int N = 10;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const PQSeries chi = random_series(rng, N, 3, 6, 0.4, 0.5);
        const PQSeries P = exp_lie(mono(N, 1, 0), chi), Q = exp_lie(mono(N, 0, 1), chi);
        worst = std::max(worst, (lie_derivative(P, Q) + mono(N, 0, 0)).degree_slice(0, N - 2).max_amplitude());
    }
    const PhasePoint pt{cplx(0.1, 0.02), cplx(-0.05, 0.03), cplx(0.2), 0.8};
    double worst_trip = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<LieTransform> steps;
        steps.push_back(LieTransform::build(random_series(rng, 12, 3, 4, 0.5, 0.3)));
        steps.push_back(LieTransform::build(random_series(rng, 12, 4, 6, 0.5, 0.3)));
        const PhasePoint back =
            transform_point(steps, transform_point(steps, pt, Direction::forward, 0.5), Direction::inverse, 0.5);
        worst_trip = std::max({worst_trip, std::abs(back.p - pt.p), std::abs(back.q - pt.q)});
    }
    v.require(worst <= 1e-11);
    v.require(worst_trip <= 1e-9);
    v.detail << "{P,Q} - 1 below order " << N - 1 << ": " << worst << "; round trip " << worst_trip;
}

// 9. Strong-mode asymptotics
void asymptotic_identity(Verdict &v)
{
    std::mt19937_64 rng(1009);
    int coeffs = 0, slow = 0, problems_slow = 0;
    double min_ratio = INFINITY;
    for (int trial = 0; trial < 50; ++trial) {
        const HomologicalProblem pb = random_strong_problem(rng);
        const double a = *pb.lattice.a_value;
        min_ratio = std::min(min_ratio, pb.lattice.omega_value / a);
        const PQSeries chi = solve(pb);
        bool any = false;
        chi.for_each([&](int, int, const ExpPoly &c) {
            ++coeffs;
            bool ok = true;
            try {
                const double K = ep_sup_tight(c, a / 2);
                for (double T : {5.0, 10.0, 20.0}) ok = ok && ep_sup_tight(c, 0.0, T) <= K * std::exp(-a * T / 2) * (1 + 1e-9);
            } catch (const UnboundedOnHalfLine &) {
                ok = false;
            }
            if (!ok) ++slow;
            any = any || !ok;
        });
        if (any) ++problems_slow;
    }
    v.require(slow == 0);
    v.detail << slow << " of " << coeffs << " coefficients (" << problems_slow
             << " of 50 problems) decay slower than e^{-aT/2}";
}

// 10. Trivial gates
void trivial_gates(Verdict &v)
{
    const MoserHamiltonian H = MoserHamiltonian::standard(0.7, PQSeries(8));
    const NormalFormResult r = run(H, desk_config());
    bool exact = r.steps.empty() && r.H.F.is_zero() && r.H.J.coeff(1).same_terms(ExpPoly(0.7), 0.0);
    for (int k = 0; k <= r.H.J.max_power(); ++k)
        if (k != 1) exact = exact && r.H.J.coeff(k).is_zero();
    const PhasePoint pt{cplx(0.03, 0.01), cplx(0.02), cplx(0.5), 2.0};
    const PhasePoint img = transform_point(r.steps, pt, Direction::forward, 0.1);
    exact = exact && img.p == pt.p && img.q == pt.q && img.eta == pt.eta;

    PQSeries ones(60);
    for (std::size_t i = 0; i < ones.size(); ++i) ones.at(i) = ExpPoly(1.0);
    const double partial = taylor_norm(ones, 0.5);
    v.require(exact);
    v.require(std::abs(partial - 4.0) <= 1e-6);
    v.detail << "identity " << (exact ? "exact" : "inexact") << "; partial sum " << partial;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<void(Verdict &)>>> criteria = {
        {"homological exactness", homological_exactness},
        {"degree doubling", degree_doubling},
        {"quadratic decay", quadratic_decay},
        {"chi bound", chi_bounds},
        {"Lie estimate", lie_estimate},
        {"schedule identities", schedule_identities},
        {"conjugacy scaling", conjugacy},
        {"canonicity", canonicity},
        {"strong asymptotics", asymptotic_identity},
        {"trivial gates", trivial_gates},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[k].second(v);
        } catch (const std::exception &e) {
            v.pass = false;
            v.detail << " threw: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > 60.0) {
            v.pass = false;
            v.detail << "; over the one-minute budget";
        }
        if (!v.pass) ++failed;
        std::printf("%s %2zu %s: %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                    v.detail.str().c_str(), secs);
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
