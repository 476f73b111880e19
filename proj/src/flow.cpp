#include "moser/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>

#include "moser/errors.hpp"

namespace moser {

namespace {

using State = std::array<cplx, 3>;

struct Field {
    PQSeries Fp, Fq, Ft;
    XSeries g, Jt;

    explicit Field(const MoserHamiltonian &H) : Fp(H.F.dp()), Fq(H.F.dq()), Ft(H.F.dt()), g(H.J.dx()), Jt(H.J.dt()) {}

    State operator()(double t, const State &y) const
    {
        const cplx p = y[0], q = y[1];
        const cplx x = p * q;
        const cplx gx = g(x, t);
        return {-(gx * p + Fq(p, q, t)), gx * q + Fp(p, q, t), -(Jt(x, t) + Ft(p, q, t))};
    }
};

State axpy(const State &y, double h, const State &k)
{
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

State rk4(const Field &f, double t, const State &y, double h)
{
    const State k1 = f(t, y);
    const State k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const State k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const State k4 = f(t + h, axpy(y, h, k3));
    State out;
    for (int i = 0; i < 3; ++i) out[i] = y[i] + h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

void push(Trajectory &tr, double t, const State &y)
{
    tr.t.push_back(t);
    tr.p.push_back(y[0]);
    tr.q.push_back(y[1]);
    tr.eta.push_back(y[2]);
}

} // namespace

Trajectory integrate(const MoserHamiltonian &H, const PhasePoint &start, double T, double tol, double escape_radius)
{
    if (!(tol > 0.0)) throw PreconditionViolation("integrator tolerance must be positive");
    const Field f(H);
    Trajectory tr;
    tr.tol = tol;
    State y{start.p, start.q, start.eta};
    double t = start.t;
    const double t_end = start.t + T;
    push(tr, t, y);
    double h = std::min(0.01, T);
    while (t < t_end) {
        const bool last = t + h >= t_end;
        if (last) h = t_end - t;
        const State full = rk4(f, t, y, h);
        const State half = rk4(f, t + h / 2, rk4(f, t, y, h / 2), h / 2);
        double err = 0.0;
        for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(half[i] - full[i]) / 15);
        if (err <= tol * h) {
            ++tr.accepted;
            t = last ? t_end : t + h;
            y = half;
            push(tr, t, y);
            if (std::abs(y[0]) > escape_radius || std::abs(y[1]) > escape_radius) {
                tr.escaped = true;
                break;
            }
        } else {
            ++tr.rejected;
        }
        const double factor = err > 0.0 ? 0.9 * std::pow(tol * h / err, 0.25) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (h < 1e-12 * std::max(1.0, std::abs(t))) throw std::runtime_error("integrator step size underflow");
    }
    return tr;
}

Trajectory normalform_flow(const XSeries &J, const PhasePoint &start, const std::vector<double> &times)
{
    const XSeries A = J.dx().integrate_t();
    const cplx x0 = start.p * start.q;
    const cplx J0 = J(x0, 0.0);
    Trajectory tr;
    for (double t : times) {
        const cplx e = std::exp(A(x0, t));
        push(tr, t, {start.p / e, start.q * e, start.eta - (J(x0, t) - J0)});
    }
    return tr;
}

ConjugacyReport conjugacy_error(const NormalFormResult &result, const MoserHamiltonian &H0, const PhasePoint &start,
                                double T, double tol, double escape_radius)
{
    ConjugacyReport rep;
    rep.original = integrate(H0, start, T, tol, escape_radius);
    rep.escaped = rep.original.escaped;

    const PhasePoint w0 = transform_point(result.steps, start, Direction::inverse, result.Rstar);
    const cplx x0 = w0.p * w0.q;
    const Trajectory nf = normalform_flow(result.H.J, w0, rep.original.t);
    for (std::size_t k = 0; k < nf.size(); ++k) {
        const PhasePoint z = transform_point(result.steps, nf.at(k), Direction::forward, result.Rstar);
        push(rep.mapped, z.t, {z.p, z.q, z.eta});
        const cplx dp = z.p - rep.original.p[k], dq = z.q - rep.original.q[k];
        rep.max_error = std::max(rep.max_error, std::sqrt(std::norm(dp) + std::norm(dq)));
        const PhasePoint back = transform_point(result.steps, rep.original.at(k), Direction::inverse, result.Rstar);
        rep.x_drift = std::max(rep.x_drift, std::abs(back.p * back.q - x0));
    }
    return rep;
}

ScalingFit conjugacy_scaling(const NormalFormResult &result, const MoserHamiltonian &H0,
                             const std::vector<double> &radii, cplx p_dir, cplx q_dir, double T, double tol,
                             double escape_radius)
{
    ScalingFit fit;
    fit.radii = radii;
    const std::size_t n = radii.size();
    std::vector<ConjugacyReport> reps(n);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < n; ++k) {
        try {
            reps[k] = conjugacy_error(result, H0, {radii[k] * p_dir, radii[k] * q_dir, 0.0, 0.0}, T, tol, escape_radius);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        fit.errors.push_back(reps[k].max_error);
        fit.drifts.push_back(reps[k].x_drift);
        fit.escaped = fit.escaped || reps[k].escaped;
        const double x = std::log(radii[k]), y = std::log(std::max(reps[k].max_error, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    fit.exponent = n >= 2 && denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    return fit;
}

} // namespace moser
