#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "moser/errors.hpp"
#include "moser/exp_poly.hpp"

namespace moser {

namespace {

// amp * t^k * e^{nu t} with nu the weighted rate value.
struct Wterm {
    cplx amp;
    int k;
    double nu;
};

// max of t^j e^{nu t} over [l, u], 0 <= l <= u (u may be +inf when nu < 0).
double power_exp_max(int j, double nu, double l, double u)
{
    auto val = [&](double t) {
        if (j == 0) return std::exp(nu * t);
        if (t <= 0.0) return 0.0;
        if (std::isinf(t)) return 0.0;
        return std::exp(j * std::log(t) + nu * t);
    };
    if (j == 0) return nu <= 0.0 ? val(l) : val(u);
    if (nu >= 0.0) return val(u);
    const double peak = j / (-nu);
    if (peak >= l && peak <= u) return val(peak);
    return std::max(val(l), val(u));
}

struct Weighted {
    std::vector<Wterm> terms;

    cplx value(double t) const
    {
        cplx s{};
        for (const auto &w : terms) {
            double e = std::exp(w.nu * t);
            if (w.k > 0) e *= std::pow(t, w.k);
            s += w.amp * e;
        }
        return s;
    }

    cplx deriv(double t) const
    {
        cplx s{};
        for (const auto &w : terms) {
            const double e = std::exp(w.nu * t);
            double d = w.nu * (w.k > 0 ? std::pow(t, w.k) : 1.0);
            if (w.k > 0) d += w.k * (w.k > 1 ? std::pow(t, w.k - 1) : 1.0);
            s += w.amp * (d * e);
        }
        return s;
    }

    // Triangle bound of |h| over [l, u].
    double bound(double l, double u) const
    {
        double b = 0.0;
        for (const auto &w : terms) b += std::abs(w.amp) * power_exp_max(w.k, w.nu, l, u);
        return b;
    }

    // Triangle bound of |h''| over [l, u].
    double second_bound(double l, double u) const
    {
        double b = 0.0;
        for (const auto &w : terms) {
            double s = w.nu * w.nu * power_exp_max(w.k, w.nu, l, u);
            if (w.k >= 1) s += 2.0 * w.k * std::abs(w.nu) * power_exp_max(w.k - 1, w.nu, l, u);
            if (w.k >= 2) s += double(w.k) * (w.k - 1) * power_exp_max(w.k - 2, w.nu, l, u);
            b += std::abs(w.amp) * s;
        }
        return b;
    }

    // Triangle bound over [from, inf) of the decaying part plus the exact constant part.
    double tail(double from) const
    {
        double b = 0.0;
        cplx c{};
        for (const auto &w : terms) {
            if (w.nu == 0.0)
                c += w.amp;
            else
                b += std::abs(w.amp) * power_exp_max(w.k, w.nu, from, INFINITY);
        }
        return std::abs(c) + b;
    }

    double decaying_tail(double from) const
    {
        double b = 0.0;
        for (const auto &w : terms)
            if (w.nu != 0.0) b += std::abs(w.amp) * power_exp_max(w.k, w.nu, from, INFINITY);
        return b;
    }
};

Weighted weigh(const ExpPoly &f, double weight)
{
    Weighted h;
    for (const auto &t : f.terms()) {
        const double mu = f.rate_value(t.rate);
        double nu = mu + weight;
        if (std::abs(nu) <= 1e-12 * (std::abs(mu) + std::abs(weight))) nu = 0.0;
        if (nu > 0.0 || (nu == 0.0 && t.tpow > 0))
            throw UnboundedOnHalfLine("coefficient grows on the half line");
        h.terms.push_back({t.amp, t.tpow, nu});
    }
    return h;
}

// Interval end of the region that still needs refinement.
double horizon(const Weighted &h, double from, double floor)
{
    double end = from + 1.0;
    for (const auto &w : h.terms)
        if (w.nu < 0.0 && w.k > 0) end = std::max(end, from + w.k / (-w.nu));
    const double target = std::max(floor, 1e-300) * 1e-12;
    for (int i = 0; i < 200 && h.decaying_tail(end) > target; ++i) end = from + 2.0 * (end - from);
    return end;
}

struct Interval {
    double l, u, upper;
    bool operator<(const Interval &o) const { return upper < o.upper; }
};

double tight_bound(const Weighted &h, double from)
{
    if (h.terms.empty()) return 0.0;
    const double certified = h.bound(from, INFINITY);
    double lower = std::abs(h.value(from));
    const double end = horizon(h, from, certified);
    const double tail = h.tail(end);

    auto upper_of = [&](double l, double u, double &lower_io) {
        const double m = 0.5 * (l + u);
        const double half = 0.5 * (u - l);
        const cplx v = h.value(m);
        const cplx d = h.deriv(m);
        lower_io = std::max(lower_io, std::abs(v));
        const double lin = std::max(std::abs(v + d * half), std::abs(v - d * half));
        const double quad = lin + 0.5 * half * half * h.second_bound(l, u);
        return std::min(quad, h.bound(l, u));
    };

    std::priority_queue<Interval> heap;
    constexpr int kInitial = 64;
    for (int i = 0; i < kInitial; ++i) {
        const double l = from + (end - from) * i / kInitial;
        const double u = from + (end - from) * (i + 1) / kInitial;
        heap.push({l, u, upper_of(l, u, lower)});
    }
    constexpr double kRtol = 1e-10;
    constexpr int kMaxPops = 20000;
    for (int pops = 0; pops < kMaxPops; ++pops) {
        const Interval top = heap.top();
        if (top.upper <= lower * (1.0 + kRtol) || top.u - top.l < 1e-14 * (1.0 + top.u)) break;
        heap.pop();
        const double m = 0.5 * (top.l + top.u);
        heap.push({top.l, m, upper_of(top.l, m, lower)});
        heap.push({m, top.u, upper_of(m, top.u, lower)});
    }
    return std::min(certified, std::max(heap.top().upper, tail));
}

double golden_max(const Weighted &h, double a, double b)
{
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = std::abs(h.value(x1)), f2 = std::abs(h.value(x2));
    for (int i = 0; i < 80; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = std::abs(h.value(x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = std::abs(h.value(x1));
        }
    }
    return std::max(f1, f2);
}

double sampled_max(const Weighted &h, double from)
{
    if (h.terms.empty()) return 0.0;
    const double end = horizon(h, from, h.bound(from, INFINITY));
    constexpr int kGrid = 2000;
    double best = std::abs(h.value(from));
    int arg = 0;
    for (int i = 1; i <= kGrid; ++i) {
        const double t = from + (end - from) * i / kGrid;
        const double v = std::abs(h.value(t));
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    const double step = (end - from) / kGrid;
    const double a = std::max(from, from + (arg - 1) * step);
    const double b = from + (arg + 1) * step;
    best = std::max(best, golden_max(h, a, b));
    // The limit at infinity is part of the supremum.
    cplx c{};
    for (const auto &w : h.terms)
        if (w.nu == 0.0) c += w.amp;
    return std::max(best, std::abs(c));
}

} // namespace

SupBound ep_sup_bound(const ExpPoly &f, double weight, double from)
{
    if (from < 0.0) throw PreconditionViolation("sup bound on t >= from requires from >= 0");
    const Weighted h = weigh(f, weight);
    SupBound r;
    r.certified = h.bound(from, INFINITY);
    r.tight = tight_bound(h, from);
    r.sampled = sampled_max(h, from);
    return r;
}

double ep_sup_tight(const ExpPoly &f, double weight, double from)
{
    if (from < 0.0) throw PreconditionViolation("sup bound on t >= from requires from >= 0");
    return tight_bound(weigh(f, weight), from);
}

} // namespace moser
