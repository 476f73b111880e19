#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "moser/rate.hpp"

namespace moser {

using cplx = std::complex<double>;

/// One term amp * t^tpow * exp(rate * t).
struct ExpTerm {
    cplx amp;
    int tpow = 0;
    RateVector rate;
};

/// Exponential polynomial f(t) = sum_k amp_k t^{n_k} e^{mu_k t} on t >= 0.
///
/// Terms are kept sorted by (rate, tpow) with no duplicates and no zero
/// amplitudes. A null basis is allowed as long as every rate is the zero
/// vector; such values combine with any basis.
class ExpPoly {
public:
    /// Relative amplitude below which a term produced by arithmetic is dropped.
    static constexpr double kCleanup = 1e-14;

    ExpPoly() = default;
    ExpPoly(cplx c); // NOLINT: constants convert implicitly
    ExpPoly(double c) : ExpPoly(cplx(c)) {}

    static ExpPoly term(BasisPtr basis, cplx amp, int tpow, RateVector rate);
    static ExpPoly from_terms(BasisPtr basis, std::vector<ExpTerm> terms);

    const BasisPtr &basis() const { return basis_; }
    std::span<const ExpTerm> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    double rate_value(const RateVector &r) const;
    double max_amplitude() const;

    cplx operator()(double t) const;

    /// Multiply by e^{shift * t}; exact lattice shift.
    ExpPoly shifted(const RateVector &shift) const;

    ExpPoly operator-() const;
    ExpPoly &operator+=(const ExpPoly &o);
    ExpPoly &operator-=(const ExpPoly &o);
    ExpPoly &operator*=(cplx s);
    friend ExpPoly operator+(ExpPoly a, const ExpPoly &b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly &b) { return a -= b; }
    friend ExpPoly operator*(const ExpPoly &a, const ExpPoly &b);
    friend ExpPoly operator*(ExpPoly a, cplx s) { return a *= s; }
    friend ExpPoly operator*(cplx s, ExpPoly a) { return a *= s; }
    friend ExpPoly operator*(ExpPoly a, double s) { return a *= cplx(s); }
    friend ExpPoly operator*(double s, ExpPoly a) { return a *= cplx(s); }

    /// Identical term sets (same rates and powers) with amplitudes within
    /// rtol relative to the larger maximum amplitude.
    bool same_terms(const ExpPoly &o, double rtol = 1e-14) const;

private:
    friend ExpPoly canonical(BasisPtr basis, std::vector<ExpTerm> terms, double scale);

    BasisPtr basis_;
    std::vector<ExpTerm> terms_;
};

enum class CombineOp { add, mul };

BasisPtr common_basis(const BasisPtr &a, const BasisPtr &b);

/// Sort, merge equal (rate, tpow) pairs, drop amplitudes <= kCleanup * scale.
ExpPoly canonical(BasisPtr basis, std::vector<ExpTerm> terms, double scale);

ExpPoly ep_combine(const ExpPoly &a, const ExpPoly &b, CombineOp op);
ExpPoly ep_derivative(const ExpPoly &f);

/// Antiderivative F with F(0) = 0.
ExpPoly ep_integrate(const ExpPoly &f);

/// Integral over [0, inf). Requires every rate value < 0.
cplx ep_improper_integral(const ExpPoly &f);

/// g(t) = integral of f over [t, inf). Requires every rate value < 0.
ExpPoly ep_tail_integral(const ExpPoly &f);

cplx ep_eval(const ExpPoly &f, double t);

/// lim f(t) as t -> inf, or nullopt when f grows.
std::optional<cplx> ep_limit(const ExpPoly &f);

/// Bounds on sup_{t >= from} |f(t)| e^{weight t}.
struct SupBound {
    double certified = 0.0; ///< triangle inequality over exact per-term maxima
    double tight = 0.0;     ///< rigorous branch-and-bound upper bound, <= certified
    double sampled = 0.0;   ///< grid plus golden-section estimate, a lower bound
};

/// Throws UnboundedOnHalfLine when any weighted term grows.
SupBound ep_sup_bound(const ExpPoly &f, double weight = 0.0, double from = 0.0);

/// Rigorous upper bound only (no sampling pass); what norms use.
double ep_sup_tight(const ExpPoly &f, double weight = 0.0, double from = 0.0);

} // namespace moser
