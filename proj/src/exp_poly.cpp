#include "moser/exp_poly.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "moser/errors.hpp"

namespace moser {

namespace {

bool term_less(const ExpTerm &a, const ExpTerm &b)
{
    return std::tie(a.rate, a.tpow) < std::tie(b.rate, b.tpow);
}

double max_abs(std::span<const ExpTerm> terms)
{
    double m = 0.0;
    for (const auto &t : terms) m = std::max(m, std::abs(t.amp));
    return m;
}

// k! / (k - i)!
double falling(int k, int i)
{
    double r = 1.0;
    for (int j = 0; j < i; ++j) r *= (k - j);
    return r;
}

} // namespace

BasisPtr common_basis(const BasisPtr &a, const BasisPtr &b)
{
    if (!a) return b;
    if (!b || a == b) return a;
    if (*a == *b) return a;
    throw ConfigurationError("exponential polynomials over different base-rate lists");
}

ExpPoly canonical(BasisPtr basis, std::vector<ExpTerm> terms, double scale)
{
    std::sort(terms.begin(), terms.end(), term_less);
    std::vector<ExpTerm> out;
    out.reserve(terms.size());
    for (auto &t : terms) {
        if (!out.empty() && out.back().rate == t.rate && out.back().tpow == t.tpow)
            out.back().amp += t.amp;
        else
            out.push_back(t);
    }
    const double cut = ExpPoly::kCleanup * scale;
    std::erase_if(out, [cut](const ExpTerm &t) { return std::abs(t.amp) <= cut || t.amp == cplx{}; });
    for (const auto &t : out)
        if (!t.rate.is_zero() && !basis) throw ConfigurationError("nonzero rate without a base-rate list");
    ExpPoly r;
    r.basis_ = std::move(basis);
    r.terms_ = std::move(out);
    return r;
}

ExpPoly::ExpPoly(cplx c)
{
    if (c != cplx{}) terms_.push_back({c, 0, {}});
}

ExpPoly ExpPoly::term(BasisPtr basis, cplx amp, int tpow, RateVector rate)
{
    if (tpow < 0) throw PreconditionViolation("negative power of t");
    return canonical(std::move(basis), {{amp, tpow, rate}}, 0.0);
}

ExpPoly ExpPoly::from_terms(BasisPtr basis, std::vector<ExpTerm> terms)
{
    for (const auto &t : terms)
        if (t.tpow < 0) throw PreconditionViolation("negative power of t");
    return canonical(std::move(basis), std::move(terms), 0.0);
}

double ExpPoly::rate_value(const RateVector &r) const
{
    if (r.is_zero()) return 0.0;
    return basis_->value(r);
}

double ExpPoly::max_amplitude() const { return max_abs(terms_); }

cplx ExpPoly::operator()(double t) const
{
    cplx s{};
    for (const auto &term : terms_) {
        const double mu = rate_value(term.rate);
        double w = std::exp(mu * t);
        if (term.tpow > 0) w *= std::pow(t, term.tpow);
        s += term.amp * w;
    }
    return s;
}

ExpPoly ExpPoly::shifted(const RateVector &shift) const
{
    if (shift.is_zero() || terms_.empty()) return *this;
    if (!basis_) throw ConfigurationError("rate shift of a value without a base-rate list");
    ExpPoly r = *this;
    for (auto &t : r.terms_) t.rate += shift;
    return r; // uniform shift keeps the order
}

ExpPoly ExpPoly::operator-() const
{
    ExpPoly r = *this;
    for (auto &t : r.terms_) t.amp = -t.amp;
    return r;
}

ExpPoly &ExpPoly::operator+=(const ExpPoly &o)
{
    if (o.terms_.empty()) return *this;
    auto basis = common_basis(basis_, o.basis_);
    const double scale = std::max(max_amplitude(), o.max_amplitude());
    std::vector<ExpTerm> all;
    all.reserve(terms_.size() + o.terms_.size());
    all.insert(all.end(), terms_.begin(), terms_.end());
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    *this = canonical(std::move(basis), std::move(all), scale);
    return *this;
}

ExpPoly &ExpPoly::operator-=(const ExpPoly &o) { return *this += -o; }

ExpPoly &ExpPoly::operator*=(cplx s)
{
    if (s == cplx{}) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) t.amp *= s;
    return *this;
}

ExpPoly operator*(const ExpPoly &a, const ExpPoly &b)
{
    if (a.is_zero() || b.is_zero()) return {};
    auto basis = common_basis(a.basis_, b.basis_);
    std::vector<ExpTerm> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &x : a.terms_)
        for (const auto &y : b.terms_) prod.push_back({x.amp * y.amp, x.tpow + y.tpow, x.rate + y.rate});
    return canonical(std::move(basis), std::move(prod), a.max_amplitude() * b.max_amplitude());
}

bool ExpPoly::same_terms(const ExpPoly &o, double rtol) const
{
    if (terms_.size() != o.terms_.size()) return false;
    const double scale = std::max(max_amplitude(), o.max_amplitude());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto &x = terms_[i];
        const auto &y = o.terms_[i];
        if (x.rate != y.rate || x.tpow != y.tpow) return false;
        if (std::abs(x.amp - y.amp) > rtol * scale) return false;
    }
    return true;
}

ExpPoly ep_combine(const ExpPoly &a, const ExpPoly &b, CombineOp op)
{
    return op == CombineOp::add ? a + b : a * b;
}

cplx ep_eval(const ExpPoly &f, double t) { return f(t); }

ExpPoly ep_derivative(const ExpPoly &f)
{
    std::vector<ExpTerm> out;
    out.reserve(2 * f.size());
    for (const auto &t : f.terms()) {
        const double mu = f.rate_value(t.rate);
        if (mu != 0.0) out.push_back({t.amp * mu, t.tpow, t.rate});
        if (t.tpow > 0) out.push_back({t.amp * double(t.tpow), t.tpow - 1, t.rate});
    }
    return canonical(f.basis(), std::move(out), max_abs(out));
}

ExpPoly ep_integrate(const ExpPoly &f)
{
    std::vector<ExpTerm> out;
    for (const auto &t : f.terms()) {
        const double mu = f.rate_value(t.rate);
        const int k = t.tpow;
        if (mu == 0.0) {
            out.push_back({t.amp / double(k + 1), k + 1, t.rate});
            continue;
        }
        // G(s) = c e^{mu s} sum_i (-1)^i k!/(k-i)! s^{k-i} / mu^{i+1}
        double sign = 1.0;
        double mupow = mu;
        for (int i = 0; i <= k; ++i) {
            out.push_back({t.amp * (sign * falling(k, i) / mupow), k - i, t.rate});
            sign = -sign;
            mupow *= mu;
        }
        // -G(0)
        const double g0 = (k % 2 == 0 ? 1.0 : -1.0) * falling(k, k) / std::pow(mu, k + 1);
        out.push_back({-t.amp * g0, 0, RateVector{}});
    }
    return canonical(f.basis(), std::move(out), max_abs(out));
}

namespace {

void require_decay(const ExpPoly &f, const char *what)
{
    for (const auto &t : f.terms())
        if (!(f.rate_value(t.rate) < 0.0))
            throw DivergentImproperIntegral(std::string(what) + ": integrand has a non-decaying term");
}

} // namespace

cplx ep_improper_integral(const ExpPoly &f)
{
    require_decay(f, "improper integral");
    cplx s{};
    for (const auto &t : f.terms()) {
        const double nmu = -f.rate_value(t.rate);
        s += t.amp * (falling(t.tpow, t.tpow) / std::pow(nmu, t.tpow + 1));
    }
    return s;
}

ExpPoly ep_tail_integral(const ExpPoly &f)
{
    require_decay(f, "tail integral");
    std::vector<ExpTerm> out;
    for (const auto &t : f.terms()) {
        const double mu = f.rate_value(t.rate);
        const int k = t.tpow;
        // -G(t) with G as in ep_integrate
        double sign = 1.0;
        double mupow = mu;
        for (int i = 0; i <= k; ++i) {
            out.push_back({-t.amp * (sign * falling(k, i) / mupow), k - i, t.rate});
            sign = -sign;
            mupow *= mu;
        }
    }
    return canonical(f.basis(), std::move(out), max_abs(out));
}

std::optional<cplx> ep_limit(const ExpPoly &f)
{
    cplx c{};
    for (const auto &t : f.terms()) {
        const double mu = f.rate_value(t.rate);
        if (mu > 0.0 || (mu == 0.0 && t.tpow > 0)) return std::nullopt;
        if (mu == 0.0) c += t.amp;
    }
    return c;
}

} // namespace moser
