#include "moser/homological.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>

#include "moser/errors.hpp"
#include "moser/kernels.hpp"

namespace moser {

namespace {

// Constants carry no base-rate list; give them the lattice's before shifting.
ExpPoly on_lattice(const ExpPoly &f, const RateLattice &lattice)
{
    if (f.basis() || f.is_zero()) return f;
    return ExpPoly::from_terms(lattice.basis, {f.terms().begin(), f.terms().end()});
}

struct Job {
    int a1, a2;
    const ExpPoly *f;
};

std::vector<Job> collect(const PQSeries &F)
{
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (F.at(i).is_zero()) continue;
        auto [a1, a2] = PQSeries::exponents(i);
        jobs.push_back({a1, a2, &F.at(i)});
    }
    return jobs;
}

template <class Out, class Fn>
std::vector<Out> run_jobs(const std::vector<Job> &jobs, Fn fn)
{
    std::vector<Out> out(jobs.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        try {
            out[k] = fn(jobs[k]);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

} // namespace

ExpPoly solve_linear_ode(const ExpPoly &f, int k, const RateLattice &lattice)
{
    if (f.is_zero()) return {};
    const RateVector shift = k * lattice.omega;
    const ExpPoly inner = on_lattice(f, lattice).shifted(shift);
    if (k > 0) return ep_integrate(inner).shifted(-shift);
    return (-ep_tail_integral(inner)).shifted(-shift);
}

PQSeries solve_strong(const PQSeries &F, const RateLattice &lattice)
{
    const auto jobs = collect(F);
    const auto cs = run_jobs<ExpPoly>(jobs, [&](const Job &j) { return solve_linear_ode(*j.f, j.a2 - j.a1, lattice); });
    PQSeries chi(F.trunc_degree());
    for (std::size_t k = 0; k < jobs.size(); ++k) chi.set(jobs[k].a1, jobs[k].a2, cs[k]);
    return chi;
}

PQSeries solve_general(const PQSeries &F, const XSeries &g, const RateLattice &lattice)
{
    const int N = F.trunc_degree();
    if (!g.coeff(0).same_terms(ExpPoly(lattice.omega_value)))
        throw PreconditionViolation("g(0, t) must equal omega");
    XSeries gt = g;
    gt.set(0, ExpPoly());
    const XSeries Atilde = gt.integrate_t();

    const auto jobs = collect(F);
    for (const auto &j : jobs)
        if (j.a1 == j.a2) throw PreconditionViolation("diagonal monomial in the aperiodic homological equation");

    const auto parts = run_jobs<XSeries>(jobs, [&](const Job &j) {
        const int lam = j.a2 - j.a1;
        const int m = (N - j.a1 - j.a2) / 2;
        const RateVector shift = lam * lattice.omega;
        XSeries At = Atilde.truncated(m);
        const XSeries ep = xseries_exp(At * cplx(lam));
        const XSeries em = xseries_exp(At * cplx(-lam));
        const ExpPoly f = on_lattice(*j.f, lattice);
        XSeries integral(m);
        for (int k = 0; k <= m; ++k) {
            const ExpPoly inner = on_lattice(ep.coeff(k) * f, lattice).shifted(shift);
            integral.set(k, lam > 0 ? ep_integrate(inner) : -ep_tail_integral(inner));
        }
        XSeries out = em * integral;
        for (int k = 0; k <= m; ++k) out.set(k, on_lattice(out.coeff(k), lattice).shifted(-shift));
        return out;
    });

    PQSeries chi(N);
    for (std::size_t k = 0; k < jobs.size(); ++k)
        for (int m = 0; m <= parts[k].max_power(); ++m)
            if (!parts[k].coeff(m).is_zero()) chi.add_to(jobs[k].a1 + m, jobs[k].a2 + m, parts[k].coeff(m));
    return chi;
}

PQSeries solve(const HomologicalProblem &pb)
{
    return pb.mode == Mode::strong ? solve_strong(pb.F, pb.lattice) : solve_general(pb.F, pb.g, pb.lattice);
}

PQSeries residual_series(const PQSeries &chi, const HomologicalProblem &pb)
{
    const int N = pb.F.trunc_degree();
    PQSeries J(N);
    if (pb.mode == Mode::strong) {
        J.set(1, 1, ExpPoly(pb.lattice.omega_value));
    } else {
        // J = int g dx, J(0, t) = 0
        for (int k = 0; k <= pb.g.max_power(); ++k) J.set(k + 1, k + 1, pb.g.coeff(k) * (1.0 / (k + 1)));
    }
    return kernels::bracket(J, chi.truncated(N)) - chi.truncated(N).dt() + pb.F;
}

double residual(const PQSeries &chi, const HomologicalProblem &pb, double R, std::uint64_t seed, int samples)
{
    const PQSeries res = residual_series(chi, pb);
    const double scale = taylor_norm(pb.F, R);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double r1 = R * unit(rng), r2 = R * unit(rng);
        const double th1 = 2 * std::numbers::pi * unit(rng), th2 = 2 * std::numbers::pi * unit(rng);
        // half the points early, where transients live
        const double t = (k % 2 ? 5.0 : 50.0) * unit(rng);
        worst = std::max(worst, std::abs(res(std::polar(r1, th1), std::polar(r2, th2), t)));
    }
    return scale > 0.0 ? worst / scale : worst;
}

GHypothesis check_g_hypotheses(const XSeries &g, double omega, double R, int x_points, int t_points, double t_max)
{
    GHypothesis h;
    h.min_re = INFINITY;
    const int rings = 4, angles = std::max(1, x_points / rings);
    std::vector<std::optional<cplx>> limits;
    for (int k = 0; k <= g.max_power(); ++k) limits.push_back(ep_limit(g.coeff(k)));
    bool bounded = std::all_of(limits.begin(), limits.end(), [](const auto &l) { return l.has_value(); });

    auto visit = [&](cplx v) {
        h.min_re = std::min(h.min_re, v.real());
        h.max_abs = std::max(h.max_abs, std::abs(v));
    };
    for (int r = 1; r <= rings; ++r) {
        for (int a = 0; a < angles; ++a) {
            const cplx x = std::polar(R * R * r / rings, 2 * std::numbers::pi * a / angles);
            for (int i = 0; i < t_points; ++i) visit(g(x, t_max * i / std::max(1, t_points - 1)));
            if (bounded) {
                cplx v = 0.0, xp = 1.0;
                for (const auto &l : limits) {
                    v += *l * xp;
                    xp *= x;
                }
                visit(v);
            }
        }
    }
    h.holds = bounded && h.min_re >= omega / 2 && h.max_abs <= 1.5 * omega;
    return h;
}

} // namespace moser
