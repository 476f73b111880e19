#include "moser/bounds.hpp"

#include <cmath>
#include <numbers>

#include "moser/errors.hpp"

namespace moser {

namespace {

constexpr long double kE2 = std::numbers::e_v<long double> * std::numbers::e_v<long double>;

long double ipow(long double b, int n)
{
    long double r = 1.0L;
    for (int i = 0; i < std::abs(n); ++i) r *= b;
    return n < 0 ? 1.0L / r : r;
}

// omega or omega * a
long double rate_scale(double omega, Mode mode, std::optional<double> a)
{
    if (mode == Mode::aperiodic) return omega;
    if (!a || *a <= 0.0) throw ConfigurationError("strong mode needs a decay rate a > 0");
    return static_cast<long double>(omega) * *a;
}

} // namespace

long double PowerProduct::value() const
{
    return ipow(2.0L, p2) * ipow(3.0L, p3) * ipow(std::numbers::pi_v<long double>, ppi) *
           ipow(std::numbers::e_v<long double>, pe);
}

BoundSchedule schedule(double eps0, double R0, double omega, Mode mode, std::optional<double> a, int steps)
{
    if (eps0 < 0.0 || R0 <= 0.0 || omega <= 0.0) throw ConfigurationError("schedule needs eps0 >= 0, R0 > 0, omega > 0");
    BoundSchedule s;
    s.mode = mode;
    s.eps0 = eps0;
    s.R0 = R0;
    s.Rstar = R0 / 2;
    s.omega = omega;
    s.a = a;
    const long double w = rate_scale(omega, mode, a);
    const long double Rs2 = static_cast<long double>(s.Rstar) * s.Rstar;
    s.eps0_limit = static_cast<double>(constants::eps0_factor.value() * w * Rs2);
    s.condition_holds = eps0 <= s.eps0_limit;

    const long double dscale = std::pow(8.0L * kE2 * eps0 / (Rs2 * w), 1.0L / 6.0L);
    s.R.push_back(R0);
    s.m_lo.push_back(0.75 * omega);
    s.M_hi.push_back(1.25 * omega);
    for (int j = 0; j < steps; ++j) {
        const long double jp1 = j + 1, jp2 = j + 2;
        const long double eps = eps0 * ipow(jp1, -12);
        const long double d = dscale * jp2 * jp2 / (jp1 * jp1 * jp1 * jp1);
        s.eps.push_back(static_cast<double>(eps));
        s.d.push_back(static_cast<double>(d));
        s.R.push_back(static_cast<double>((1.0L - 2.0L * d) * s.R.back()));
        const long double drift = d > 0 ? eps / (Rs2 * d * d) : 0.0L;
        s.m_lo.push_back(static_cast<double>(s.m_lo.back() - drift));
        s.M_hi.push_back(static_cast<double>(s.M_hi.back() + drift));
    }
    return s;
}

double quadratic_bound(double eps, double d, double Rstar, double omega, Mode mode, std::optional<double> a)
{
    const long double w = rate_scale(omega, mode, a);
    const long double e = eps;
    return static_cast<double>(8.0L * kE2 * e * e / (w * Rstar * Rstar * ipow(d, 6)));
}

Smallness smallness_check(double eps, double d, double Rstar, double omega, Mode mode, std::optional<double> a)
{
    const long double w = rate_scale(omega, mode, a);
    Smallness s;
    s.margin = static_cast<double>(4.0L * kE2 * eps / (w * Rstar * Rstar * ipow(d, 6)));
    s.holds = s.margin <= 0.5;
    return s;
}

double chi_bound(double M, double omega, double delta, Mode mode, std::optional<double> a)
{
    if (mode == Mode::aperiodic) return 4 * M / (omega * delta * delta);
    if (!a || *a <= 0.0) throw ConfigurationError("strong mode needs a decay rate a > 0");
    return 4 * M / (*a * delta * delta * delta);
}

double lie_bound(int s, double delta, double chi_norm, double g_norm, double R)
{
    long double fact = 1.0L;
    for (int i = 2; i <= s; ++i) fact *= i;
    const long double dR = static_cast<long double>(delta) * R;
    return static_cast<double>(fact * ipow(kE2 * chi_norm / (dR * dR), s) * g_norm);
}

double r0_threshold(double M_F, double omega, double R, Mode mode, std::optional<double> a)
{
    const long double w = rate_scale(omega, mode, a);
    const long double base = constants::r0_factor.value() * w / M_F;
    return static_cast<double>(std::min(ipow(base, 4), ipow(static_cast<long double>(R), 4)));
}

} // namespace moser
