#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "moser/exp_poly.hpp"

namespace moser {

/// Truncated Taylor series sum_alpha g_alpha(t) p^a1 q^a2 with |alpha| <= N.
///
/// Coefficients are stored densely in graded order: degree d occupies the
/// block starting at d(d+1)/2, ordered by a2.
class PQSeries {
public:
    PQSeries() = default;
    explicit PQSeries(int trunc_degree);

    static std::size_t index(int a1, int a2)
    {
        const int d = a1 + a2;
        return static_cast<std::size_t>(d) * (d + 1) / 2 + a2;
    }
    static std::pair<int, int> exponents(std::size_t idx);
    static std::size_t count(int degree) { return static_cast<std::size_t>(degree + 1) * (degree + 2) / 2; }

    static PQSeries monomial(int trunc_degree, int a1, int a2, ExpPoly c = ExpPoly(1.0));

    int trunc_degree() const { return degree_; }
    std::size_t size() const { return coeffs_.size(); }

    const ExpPoly &coeff(int a1, int a2) const;
    const ExpPoly &at(std::size_t idx) const { return coeffs_[idx]; }
    ExpPoly &at(std::size_t idx) { return coeffs_[idx]; }

    /// Stores c at alpha; silently dropped when |alpha| > N.
    void set(int a1, int a2, ExpPoly c);
    void add_to(int a1, int a2, const ExpPoly &c);

    bool is_zero() const;
    std::optional<int> min_degree() const;
    std::size_t nonzero_count() const;

    /// Calls fn(a1, a2, coeff) for every nonzero coefficient in graded order.
    void for_each(const std::function<void(int, int, const ExpPoly &)> &fn) const;

    cplx operator()(cplx p, cplx q, double t) const;

    PQSeries dp() const;
    PQSeries dq() const;
    PQSeries dt() const;

    /// Copy at another truncation degree (drops or pads).
    PQSeries truncated(int degree) const;
    /// Keeps only monomials with min_deg <= |alpha| <= max_deg.
    PQSeries degree_slice(int min_deg, int max_deg) const;

    PQSeries operator-() const;
    PQSeries &operator+=(const PQSeries &o);
    PQSeries &operator-=(const PQSeries &o);
    PQSeries &operator*=(cplx s);
    friend PQSeries operator+(PQSeries a, const PQSeries &b) { return a += b; }
    friend PQSeries operator-(PQSeries a, const PQSeries &b) { return a -= b; }
    friend PQSeries operator*(PQSeries a, cplx s) { return a *= s; }
    friend PQSeries operator*(cplx s, PQSeries a) { return a *= s; }
    friend PQSeries operator*(PQSeries a, double s) { return a *= cplx(s); }
    friend PQSeries operator*(double s, PQSeries a) { return a *= cplx(s); }

    /// Largest coefficient amplitude (any term, any monomial).
    double max_amplitude() const;

private:
    int degree_ = 0;
    std::vector<ExpPoly> coeffs_;
};

/// Truncated series sum_k c_k(t) x^k in x = pq, k <= max_power.
class XSeries {
public:
    XSeries() = default;
    explicit XSeries(int max_power);

    int max_power() const { return static_cast<int>(coeffs_.size()) - 1; }
    const ExpPoly &coeff(int k) const { return coeffs_.at(k); }
    ExpPoly &coeff(int k) { return coeffs_.at(k); }
    void set(int k, ExpPoly c);

    bool is_zero() const;
    cplx operator()(cplx x, double t) const;

    XSeries truncated(int max_power) const;
    XSeries dx() const;
    /// Coefficient-wise antiderivative in t from 0.
    XSeries integrate_t() const;
    XSeries dt() const;
    /// Multiply every coefficient by e^{shift t}.
    XSeries shifted(const RateVector &shift) const;

    /// Embeds sum c_k x^k as sum c_k p^k q^k.
    PQSeries to_pq(int trunc_degree) const;

    XSeries operator-() const;
    XSeries &operator+=(const XSeries &o);
    XSeries &operator-=(const XSeries &o);
    XSeries &operator*=(cplx s);
    friend XSeries operator+(XSeries a, const XSeries &b) { return a += b; }
    friend XSeries operator-(XSeries a, const XSeries &b) { return a -= b; }
    friend XSeries operator*(XSeries a, cplx s) { return a *= s; }
    friend XSeries operator*(cplx s, XSeries a) { return a *= s; }
    /// Cauchy product truncated at the smaller max_power.
    friend XSeries operator*(const XSeries &a, const XSeries &b);

private:
    std::vector<ExpPoly> coeffs_;
};

/// H = J(x, t) + eta + F(p, q, t), eta entering with unit coefficient.
struct MoserHamiltonian {
    XSeries J;
    PQSeries F;
    double omega = 1.0;

    /// omega * x + eta + F with the x-series sized for F's truncation.
    static MoserHamiltonian standard(double omega, PQSeries F);

    cplx operator()(cplx p, cplx q, cplx eta, double t) const;
};

/// Which sup-in-time estimate a norm uses.
enum class SupMode { tight, certified };

/// sum_alpha |g_alpha|_+ R^|alpha| with certified sup-in-time bounds.
double taylor_norm(const PQSeries &G, double R, SupMode mode = SupMode::tight);

/// Smallest certified M with sum_alpha |g_alpha(t)| R^|alpha| <= M e^{-a t}.
double decay_envelope(const PQSeries &G, double R, double a, SupMode mode = SupMode::tight);

/// x-series norm sum_k |c_k|_+ R^{2k}, matching the embedding into (p, q).
double taylor_norm(const XSeries &S, double R, SupMode mode = SupMode::tight);

struct MixedDiagonal {
    PQSeries mixed;
    XSeries diag;
};

MixedDiagonal split_mixed_diagonal(const PQSeries &G);

/// exp(S) truncated at S.max_power(); S must have a zero x^0 coefficient.
XSeries xseries_exp(const XSeries &S);

} // namespace moser
