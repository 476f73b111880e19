#include <cmath>
#include <random>

#include "doctest.h"
#include "moser/errors.hpp"
#include "moser/kernels.hpp"
#include "moser/lie.hpp"
#include "test_util.hpp"

using namespace moser;
using moser::testing::random_series;

namespace {

const BasisPtr unit_decay = std::make_shared<RateBasis>(std::vector<double>{-1.0});

ExpPoly e(double amp, int tpow, int k) { return ExpPoly::term(unit_decay, amp, tpow, RateVector{k}); }

PQSeries mono(int N, int a1, int a2, ExpPoly c = ExpPoly(1.0)) { return PQSeries::monomial(N, a1, a2, std::move(c)); }

// {G, chi} from derivative series and the serial product, sharing no code with the gather kernel
PQSeries bracket_oracle(const PQSeries &G, const PQSeries &chi)
{
    const int N = G.trunc_degree();
    return kernels::serial::product(G.dq(), chi.dp(), N) - kernels::serial::product(G.dp(), chi.dq(), N);
}

// exp(L) G with a fixed, generous number of terms
PQSeries exp_oracle(const PQSeries &G, const PQSeries &chi)
{
    PQSeries sum = G, term = G;
    double fact = 1.0;
    for (int s = 1; s <= 3 * G.trunc_degree(); ++s) {
        fact *= s;
        term = bracket_oracle(term, chi);
        sum += term * (1.0 / fact);
    }
    return sum;
}

void check_close(const PQSeries &a, const PQSeries &b, double tol)
{
    const PQSeries d = a - b;
    CHECK(d.max_amplitude() <= tol);
}

} // namespace

TEST_CASE("lie derivative examples")
{
    const int N = 8;
    // L_{p^2 q^2} q = q_q chi_p = 2 p q^2
    CHECK(lie_derivative(mono(N, 0, 1), mono(N, 2, 2)).nonzero_count() == 1);
    CHECK(lie_derivative(mono(N, 0, 1), mono(N, 2, 2)).coeff(1, 2).same_terms(ExpPoly(2.0)));
    CHECK(lie_derivative(mono(N, 0, 0, ExpPoly(3.0)), mono(N, 3, 1)).is_zero());
    // L_{p^3} (pq) = p * 3p^2
    const PQSeries l = lie_derivative(mono(N, 1, 1), mono(N, 3, 0));
    CHECK(l.nonzero_count() == 1);
    CHECK(l.coeff(3, 0).same_terms(ExpPoly(3.0)));
}

TEST_CASE("eta action is minus the time derivative")
{
    const int N = 8;
    CHECK(lie_eta_action(mono(N, 3, 0, e(1, 0, 1))).coeff(3, 0).same_terms(e(1, 0, 1)));
    CHECK(lie_eta_action(mono(N, 2, 2, ExpPoly(4.0))).is_zero());
    const PQSeries chi = mono(N, 2, 5, ExpPoly(1.0) - e(1, 0, 1));
    CHECK(lie_eta_action(chi).coeff(2, 5).same_terms(e(-1, 0, 1)));
}

TEST_CASE("exp_lie")
{
    const int N = 6;
    const PQSeries p = mono(N, 1, 0);
    CHECK(exp_lie(p, PQSeries(N)).coeff(1, 0).same_terms(ExpPoly(1.0)));
    CHECK(exp_lie(p, PQSeries(N)).nonzero_count() == 1);

    // chi = p^2 q^2: L p = -2 p^2 q, L^2 p = 0 since {p^2 q, p^2 q^2} = 0
    const PQSeries chi = mono(N, 2, 2);
    const PQSeries img = exp_lie(p, chi);
    CHECK(img.coeff(2, 1).same_terms(ExpPoly(-2.0)));
    check_close(img, exp_oracle(p, chi), 1e-15);

    CHECK_THROWS_AS(exp_lie(p, mono(N, 1, 1)), PreconditionViolation);
}

TEST_CASE("exp_lie matches the brute-force series on random inputs")
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const PQSeries G = random_series(rng, 10, 1, 5, 0.5);
        const PQSeries chi = random_series(rng, 10, 3, 6, 0.4, 0.5);
        check_close(exp_lie(G, chi), exp_oracle(G, chi), 1e-11);
        check_close(lie_derivative(G, chi), bracket_oracle(G, chi), 1e-13);
    }
}

TEST_CASE("grading: each application raises the minimal degree")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const PQSeries G = random_series(rng, 14, 2, 4);
        const PQSeries chi = random_series(rng, 14, 4, 5);
        for (int s = 1; s <= 4; ++s) {
            const PQSeries l = lie_power(G, chi, s);
            if (!l.is_zero()) CHECK(*l.min_degree() >= *G.min_degree() + s * (*chi.min_degree() - 2));
        }
    }
}

TEST_CASE("property: antisymmetry and Jacobi identity")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        // degrees <= 4: triple brackets stay below degree 8 < N
        const PQSeries f = random_series(rng, 12, 0, 4, 0.5);
        const PQSeries g = random_series(rng, 12, 0, 4, 0.5);
        const PQSeries h = random_series(rng, 12, 0, 4, 0.5);
        check_close(lie_derivative(f, g), -lie_derivative(g, f), 1e-13);
        const PQSeries jac = lie_derivative(lie_derivative(g, h), f) + lie_derivative(lie_derivative(h, f), g) +
                             lie_derivative(lie_derivative(f, g), h);
        CHECK(jac.max_amplitude() <= 1e-12);
    }
}

TEST_CASE("property: the truncated Lie transform is canonical below truncation")
{
    std::mt19937_64 rng(10);
    const int N = 10;
    for (int trial = 0; trial < 10; ++trial) {
        const PQSeries chi = random_series(rng, N, 3, 6, 0.4, 0.5);
        const PQSeries P = exp_lie(mono(N, 1, 0), chi);
        const PQSeries Q = exp_lie(mono(N, 0, 1), chi);
        // {P, Q} - {p, q}, where {p, q} = -1 in this convention
        const PQSeries disc = lie_derivative(P, Q) + mono(N, 0, 0);
        CHECK(disc.degree_slice(0, N - 2).max_amplitude() <= 1e-11);
    }
}

TEST_CASE("property: exp(L_chi) then exp(L_-chi) is the identity below truncation")
{
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const PQSeries G = random_series(rng, 10, 1, 6, 0.5);
        const PQSeries chi = random_series(rng, 10, 3, 6, 0.4, 0.5);
        const PQSeries img = exp_lie(G, chi);
        // relative to the largest intermediate coefficient
        check_close(exp_lie(img, -chi), G, 1e-11 * std::max(1.0, img.max_amplitude()));
    }
}

TEST_CASE("property: Lie operator norm estimate")
{
    std::mt19937_64 rng(16);
    const double R = 0.5;
    for (int trial = 0; trial < 6; ++trial) {
        const PQSeries G = random_series(rng, 14, 0, 4, 0.5);
        const PQSeries chi = random_series(rng, 14, 3, 4, 0.5);
        for (double delta : {0.1, 0.2}) {
            const double chi_n = taylor_norm(chi, (1 - delta) * R);
            const double g_n = taylor_norm(G, (1 - delta) * R);
            double fact = 1.0;
            for (int s = 1; s <= 4; ++s) {
                fact *= s;
                const double lhs = taylor_norm(lie_power(G, chi, s), (1 - 2 * delta) * R);
                const double rhs = fact * std::pow(std::exp(2.0) * chi_n / (delta * delta), s) * g_n;
                CHECK(lhs <= rhs);
            }
        }
    }
}

TEST_CASE("transformed perturbation")
{
    const int N = 6;
    CHECK(transformed_perturbation(PQSeries(N), mono(N, 3, 0)).is_zero());

    // omega = a = 1, F = e^{-t} p^3 alone commutes with its chi, so add q^3.
    // The homological equation L_chi(pq + eta) + F = 0 for chi = c p^3 reads
    // c' - 3c = e^{-t}, with bounded solution c = -e^{-t}/4; for c q^3 it reads
    // c' + 3c = e^{-t}, c(0) = 0, so c = (e^{-t} - e^{-3t})/2.
    CHECK(transformed_perturbation(mono(N, 3, 0, e(1, 0, 1)), mono(N, 3, 0, e(-0.25, 0, 1))).is_zero());
    const PQSeries F = mono(N, 3, 0, e(1, 0, 1)) + mono(N, 0, 3, e(1, 0, 1));
    const PQSeries chi = mono(N, 3, 0, e(-0.25, 0, 1)) + mono(N, 0, 3, e(0.5, 0, 1) - e(0.5, 0, 3));
    const PQSeries h0 = mono(N, 1, 1);
    const PQSeries hom = lie_derivative(h0, chi) + lie_eta_action(chi) + F;
    CHECK(hom.max_amplitude() <= 1e-15);

    // exp(L)(pq + eta + F) - (pq + eta), with eta's image taken from the eta action
    const PQSeries full = exp_oracle(h0 + F, chi) - h0 + exp_lie_eta(chi);
    const PQSeries tf = transformed_perturbation(F, chi);
    check_close(tf, full, 1e-14);
    REQUIRE(tf.min_degree().has_value());
    CHECK(*tf.min_degree() >= 4);
    CHECK(tf.coeff(3, 0).is_zero());
    CHECK(tf.coeff(0, 3).is_zero());
}

TEST_CASE("eta image of a time-independent chi is trivial")
{
    CHECK(exp_lie_eta(mono(8, 2, 3, ExpPoly(0.7))).is_zero());
}

TEST_CASE("transform_point")
{
    const int N = 12;
    const PhasePoint pt{cplx(0.1, 0.02), cplx(-0.05, 0.03), cplx(0.2), 0.8};
    {
        const PhasePoint out = transform_point({}, pt, Direction::forward, 0.5);
        CHECK(out.p == pt.p);
        CHECK(out.q == pt.q);
        CHECK(out.eta == pt.eta);
    }
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<LieTransform> steps;
        steps.push_back(LieTransform::build(random_series(rng, N, 3, 4, 0.5, 0.3)));
        steps.push_back(LieTransform::build(random_series(rng, N, 4, 6, 0.5, 0.3)));
        const PhasePoint fwd = transform_point(steps, pt, Direction::forward, 0.5);
        const PhasePoint back = transform_point(steps, fwd, Direction::inverse, 0.5);
        CHECK(std::abs(back.p - pt.p) < 1e-9);
        CHECK(std::abs(back.q - pt.q) < 1e-9);
        CHECK(std::abs(back.eta - pt.eta) < 1e-9);
        CHECK(back.t == pt.t);
    }

    std::vector<std::string> warnings;
    transform_point({}, PhasePoint{cplx(2.0), cplx(0.0), cplx(0.0), 0.0}, Direction::forward, 0.5, &warnings);
    CHECK(warnings.size() == 1);
}
