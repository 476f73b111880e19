#include "moser/series.hpp"

#include <cmath>
#include <stdexcept>

#include "moser/errors.hpp"
#include "moser/kernels.hpp"

namespace moser {

// ---------------------------------------------------------------- PQSeries

PQSeries::PQSeries(int trunc_degree) : degree_(trunc_degree)
{
    if (trunc_degree < 0) throw PreconditionViolation("negative truncation degree");
    coeffs_.resize(count(trunc_degree));
}

std::pair<int, int> PQSeries::exponents(std::size_t idx)
{
    int d = 0;
    while (count(d) <= idx) ++d;
    const int a2 = static_cast<int>(idx - static_cast<std::size_t>(d) * (d + 1) / 2);
    return {d - a2, a2};
}

PQSeries PQSeries::monomial(int trunc_degree, int a1, int a2, ExpPoly c)
{
    PQSeries s(trunc_degree);
    s.set(a1, a2, std::move(c));
    return s;
}

const ExpPoly &PQSeries::coeff(int a1, int a2) const
{
    static const ExpPoly zero;
    if (a1 < 0 || a2 < 0 || a1 + a2 > degree_) return zero;
    return coeffs_[index(a1, a2)];
}

void PQSeries::set(int a1, int a2, ExpPoly c)
{
    if (a1 < 0 || a2 < 0) throw PreconditionViolation("negative exponent");
    if (a1 + a2 > degree_) return;
    coeffs_[index(a1, a2)] = std::move(c);
}

void PQSeries::add_to(int a1, int a2, const ExpPoly &c)
{
    if (a1 < 0 || a2 < 0) throw PreconditionViolation("negative exponent");
    if (a1 + a2 > degree_ || c.is_zero()) return;
    coeffs_[index(a1, a2)] += c;
}

bool PQSeries::is_zero() const
{
    for (const auto &c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

std::optional<int> PQSeries::min_degree() const
{
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) {
            auto [a1, a2] = exponents(i);
            return a1 + a2;
        }
    return std::nullopt;
}

std::size_t PQSeries::nonzero_count() const
{
    std::size_t n = 0;
    for (const auto &c : coeffs_) n += c.is_zero() ? 0 : 1;
    return n;
}

void PQSeries::for_each(const std::function<void(int, int, const ExpPoly &)> &fn) const
{
    for (int d = 0; d <= degree_; ++d)
        for (int a2 = 0; a2 <= d; ++a2) {
            const auto &c = coeffs_[index(d - a2, a2)];
            if (!c.is_zero()) fn(d - a2, a2, c);
        }
}

cplx PQSeries::operator()(cplx p, cplx q, double t) const
{
    // powers once, then a plain sum
    std::vector<cplx> pp(degree_ + 1, 1.0), qp(degree_ + 1, 1.0);
    for (int i = 1; i <= degree_; ++i) {
        pp[i] = pp[i - 1] * p;
        qp[i] = qp[i - 1] * q;
    }
    cplx s{};
    for (int d = 0; d <= degree_; ++d)
        for (int a2 = 0; a2 <= d; ++a2) {
            const auto &c = coeffs_[index(d - a2, a2)];
            if (!c.is_zero()) s += c(t) * pp[d - a2] * qp[a2];
        }
    return s;
}

PQSeries PQSeries::dp() const
{
    PQSeries r(degree_);
    for_each([&](int a1, int a2, const ExpPoly &c) {
        if (a1 > 0) r.set(a1 - 1, a2, c * double(a1));
    });
    return r;
}

PQSeries PQSeries::dq() const
{
    PQSeries r(degree_);
    for_each([&](int a1, int a2, const ExpPoly &c) {
        if (a2 > 0) r.set(a1, a2 - 1, c * double(a2));
    });
    return r;
}

PQSeries PQSeries::dt() const
{
    PQSeries r(degree_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = ep_derivative(coeffs_[i]);
    return r;
}

PQSeries PQSeries::truncated(int degree) const
{
    PQSeries r(degree);
    const std::size_t n = std::min(coeffs_.size(), r.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) r.coeffs_[i] = coeffs_[i];
    return r;
}

PQSeries PQSeries::degree_slice(int min_deg, int max_deg) const
{
    PQSeries r(degree_);
    for_each([&](int a1, int a2, const ExpPoly &c) {
        if (a1 + a2 >= min_deg && a1 + a2 <= max_deg) r.set(a1, a2, c);
    });
    return r;
}

PQSeries PQSeries::operator-() const
{
    PQSeries r = *this;
    for (auto &c : r.coeffs_) c = -c;
    return r;
}

PQSeries &PQSeries::operator+=(const PQSeries &o)
{
    if (o.degree_ > degree_) *this = truncated(o.degree_);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        if (!o.coeffs_[i].is_zero()) coeffs_[i] += o.coeffs_[i];
    return *this;
}

PQSeries &PQSeries::operator-=(const PQSeries &o) { return *this += -o; }

PQSeries &PQSeries::operator*=(cplx s)
{
    for (auto &c : coeffs_) c *= s;
    return *this;
}

double PQSeries::max_amplitude() const
{
    double m = 0.0;
    for (const auto &c : coeffs_) m = std::max(m, c.max_amplitude());
    return m;
}

// ---------------------------------------------------------------- XSeries

XSeries::XSeries(int max_power)
{
    if (max_power < 0) throw PreconditionViolation("negative x truncation");
    coeffs_.resize(max_power + 1);
}

void XSeries::set(int k, ExpPoly c)
{
    if (k < 0) throw PreconditionViolation("negative x power");
    if (k > max_power()) return;
    coeffs_[k] = std::move(c);
}

bool XSeries::is_zero() const
{
    for (const auto &c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

cplx XSeries::operator()(cplx x, double t) const
{
    cplx s{};
    for (int k = max_power(); k >= 0; --k) s = s * x + coeffs_[k](t);
    return s;
}

XSeries XSeries::truncated(int max_power) const
{
    XSeries r(max_power);
    for (int k = 0; k <= std::min(max_power, this->max_power()); ++k) r.coeffs_[k] = coeffs_[k];
    return r;
}

XSeries XSeries::dx() const
{
    XSeries r(max_power());
    for (int k = 1; k <= max_power(); ++k) r.coeffs_[k - 1] = coeffs_[k] * double(k);
    return r;
}

XSeries XSeries::integrate_t() const
{
    XSeries r(max_power());
    for (int k = 0; k <= max_power(); ++k) r.coeffs_[k] = ep_integrate(coeffs_[k]);
    return r;
}

XSeries XSeries::dt() const
{
    XSeries r(max_power());
    for (int k = 0; k <= max_power(); ++k) r.coeffs_[k] = ep_derivative(coeffs_[k]);
    return r;
}

XSeries XSeries::shifted(const RateVector &shift) const
{
    XSeries r = *this;
    for (auto &c : r.coeffs_) c = c.shifted(shift);
    return r;
}

PQSeries XSeries::to_pq(int trunc_degree) const
{
    PQSeries r(trunc_degree);
    for (int k = 0; k <= max_power(); ++k)
        if (!coeffs_[k].is_zero()) r.set(k, k, coeffs_[k]);
    return r;
}

XSeries XSeries::operator-() const
{
    XSeries r = *this;
    for (auto &c : r.coeffs_) c = -c;
    return r;
}

XSeries &XSeries::operator+=(const XSeries &o)
{
    if (o.max_power() > max_power()) *this = truncated(o.max_power());
    for (int k = 0; k <= o.max_power(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

XSeries &XSeries::operator-=(const XSeries &o) { return *this += -o; }

XSeries &XSeries::operator*=(cplx s)
{
    for (auto &c : coeffs_) c *= s;
    return *this;
}

XSeries operator*(const XSeries &a, const XSeries &b)
{
    const int K = std::min(a.max_power(), b.max_power());
    XSeries r(K);
    for (int i = 0; i <= K; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (int j = 0; i + j <= K; ++j)
            if (!b.coeffs_[j].is_zero()) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
}

// ---------------------------------------------------------------- Hamiltonian

MoserHamiltonian MoserHamiltonian::standard(double omega, PQSeries F)
{
    if (!(omega > 0.0)) throw ConfigurationError("omega must be positive");
    MoserHamiltonian h;
    h.omega = omega;
    h.J = XSeries(F.trunc_degree() / 2);
    h.J.set(1, ExpPoly(omega));
    h.F = std::move(F);
    return h;
}

cplx MoserHamiltonian::operator()(cplx p, cplx q, cplx eta, double t) const
{
    return J(p * q, t) + eta + F(p, q, t);
}

// ---------------------------------------------------------------- norms

double taylor_norm(const PQSeries &G, double R, SupMode mode)
{
    const auto sups = kernels::coefficient_sups(G, 0.0, mode);
    double s = 0.0;
    for (std::size_t i = 0; i < sups.size(); ++i) {
        if (sups[i] == 0.0) continue;
        auto [a1, a2] = PQSeries::exponents(i);
        s += sups[i] * std::pow(R, a1 + a2);
    }
    return s;
}

double decay_envelope(const PQSeries &G, double R, double a, SupMode mode)
{
    if (!(a > 0.0)) throw PreconditionViolation("decay rate must be positive");
    const auto sups = kernels::coefficient_sups(G, a, mode);
    double s = 0.0;
    for (std::size_t i = 0; i < sups.size(); ++i) {
        if (sups[i] == 0.0) continue;
        auto [a1, a2] = PQSeries::exponents(i);
        s += sups[i] * std::pow(R, a1 + a2);
    }
    return s;
}

double taylor_norm(const XSeries &S, double R, SupMode mode)
{
    double s = 0.0;
    for (int k = 0; k <= S.max_power(); ++k) {
        const auto &c = S.coeff(k);
        if (c.is_zero()) continue;
        const double sup = mode == SupMode::tight ? ep_sup_tight(c) : ep_sup_bound(c).certified;
        s += sup * std::pow(R, 2 * k);
    }
    return s;
}

MixedDiagonal split_mixed_diagonal(const PQSeries &G)
{
    MixedDiagonal r{PQSeries(G.trunc_degree()), XSeries(G.trunc_degree() / 2)};
    G.for_each([&](int a1, int a2, const ExpPoly &c) {
        if (a1 == a2)
            r.diag.set(a1, c);
        else
            r.mixed.set(a1, a2, c);
    });
    return r;
}

XSeries xseries_exp(const XSeries &S)
{
    if (!S.coeff(0).is_zero()) throw PreconditionViolation("xseries_exp: nonzero constant term");
    const int K = S.max_power();
    XSeries result(K);
    result.set(0, ExpPoly(1.0));
    XSeries power(K);
    power.set(0, ExpPoly(1.0));
    double fact = 1.0;
    for (int m = 1; m <= K; ++m) {
        power = power * S;
        if (power.is_zero()) break;
        fact *= m;
        result += power * cplx(1.0 / fact);
    }
    return result;
}

} // namespace moser
