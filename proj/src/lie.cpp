#include "moser/lie.hpp"

#include <cmath>
#include <sstream>

#include "moser/errors.hpp"
#include "moser/kernels.hpp"

namespace moser {

namespace {

void require_generating(const PQSeries &chi)
{
    const auto d = chi.min_degree();
    if (d && *d < 3) throw PreconditionViolation("generating function must start at degree 3");
}

} // namespace

PQSeries lie_derivative(const PQSeries &G, const PQSeries &chi) { return kernels::bracket(G, chi); }

PQSeries lie_eta_action(const PQSeries &chi) { return -chi.dt(); }

PQSeries lie_power(const PQSeries &G, const PQSeries &chi, int s)
{
    PQSeries r = G;
    for (int i = 0; i < s && !r.is_zero(); ++i) r = lie_derivative(r, chi);
    return r;
}

PQSeries exp_lie(const PQSeries &G, const PQSeries &chi)
{
    require_generating(chi);
    PQSeries sum = G;
    PQSeries term = G;
    // each application raises the minimal degree by at least one
    for (int s = 1; s <= G.trunc_degree() + 2; ++s) {
        term = lie_derivative(term, chi) * (1.0 / s);
        if (term.is_zero()) break;
        sum += term;
    }
    return sum;
}

PQSeries exp_lie_eta(const PQSeries &chi)
{
    require_generating(chi);
    PQSeries term = lie_eta_action(chi); // s = 1
    PQSeries sum = term;
    double fact = 1.0;
    PQSeries power = term;
    for (int s = 2; s <= chi.trunc_degree() + 2; ++s) {
        power = lie_derivative(power, chi);
        if (power.is_zero()) break;
        fact *= s;
        sum += power * (1.0 / fact);
    }
    return sum;
}

PQSeries transformed_perturbation(const PQSeries &F, const PQSeries &chi)
{
    require_generating(chi);
    PQSeries sum(F.trunc_degree());
    PQSeries power = F;
    double fact = 1.0; // (s+1)!
    for (int s = 1; s <= F.trunc_degree() + 2; ++s) {
        power = lie_derivative(power, chi);
        if (power.is_zero()) break;
        fact *= (s + 1);
        sum += power * (s / fact);
    }
    return sum;
}

LieTransform LieTransform::build(const PQSeries &chi)
{
    const int N = chi.trunc_degree();
    LieTransform tr;
    tr.chi = chi;
    const PQSeries p = PQSeries::monomial(N, 1, 0);
    const PQSeries q = PQSeries::monomial(N, 0, 1);
    tr.p_image = exp_lie(p, chi);
    tr.q_image = exp_lie(q, chi);
    tr.eta_shift = exp_lie_eta(chi);
    const PQSeries minus = -chi;
    tr.p_inverse = exp_lie(p, minus);
    tr.q_inverse = exp_lie(q, minus);
    tr.eta_inverse_shift = exp_lie_eta(minus);
    return tr;
}

PhasePoint apply(const LieTransform &tr, const PhasePoint &pt, Direction dir)
{
    PhasePoint out = pt;
    if (dir == Direction::forward) {
        out.p = tr.p_image(pt.p, pt.q, pt.t);
        out.q = tr.q_image(pt.p, pt.q, pt.t);
        out.eta = pt.eta + tr.eta_shift(pt.p, pt.q, pt.t);
    } else {
        out.p = tr.p_inverse(pt.p, pt.q, pt.t);
        out.q = tr.q_inverse(pt.p, pt.q, pt.t);
        out.eta = pt.eta + tr.eta_inverse_shift(pt.p, pt.q, pt.t);
    }
    return out;
}

PhasePoint transform_point(std::span<const LieTransform> steps, PhasePoint pt, Direction dir, double radius,
                           std::vector<std::string> *warnings)
{
    if (warnings && (std::abs(pt.p) > radius || std::abs(pt.q) > radius)) {
        std::ostringstream msg;
        msg << "point (" << std::abs(pt.p) << ", " << std::abs(pt.q) << ") outside radius " << radius;
        warnings->push_back(msg.str());
    }
    if (dir == Direction::forward) {
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) pt = apply(*it, pt, dir);
    } else {
        for (const auto &tr : steps) pt = apply(tr, pt, dir);
    }
    return pt;
}

} // namespace moser
