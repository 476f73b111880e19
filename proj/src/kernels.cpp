#include "moser/kernels.hpp"

#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace moser::kernels {

namespace {

struct Nonzero {
    int a1, a2;
    const ExpPoly *c;
};

std::vector<Nonzero> nonzeros(const PQSeries &s)
{
    std::vector<Nonzero> out;
    s.for_each([&](int a1, int a2, const ExpPoly &c) { out.push_back({a1, a2, &c}); });
    return out;
}

double sup_of(const ExpPoly &c, double weight, SupMode mode)
{
    if (c.is_zero()) return 0.0;
    return mode == SupMode::tight ? ep_sup_tight(c, weight) : ep_sup_bound(c, weight).certified;
}

} // namespace

PQSeries product(const PQSeries &a, const PQSeries &b, int trunc_degree)
{
    PQSeries out(trunc_degree);
    const auto lhs = nonzeros(a);
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < n; ++idx) {
        const auto [g1, g2] = PQSeries::exponents(static_cast<std::size_t>(idx));
        ExpPoly acc;
        for (const auto &x : lhs) {
            const int b1 = g1 - x.a1, b2 = g2 - x.a2;
            if (b1 < 0 || b2 < 0) continue;
            const ExpPoly &y = b.coeff(b1, b2);
            if (!y.is_zero()) acc += *x.c * y;
        }
        out.at(static_cast<std::size_t>(idx)) = std::move(acc);
    }
    return out;
}

PQSeries bracket(const PQSeries &G, const PQSeries &chi)
{
    PQSeries out(G.trunc_degree());
    const auto lhs = nonzeros(G);
    const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(dynamic)
    for (long idx = 0; idx < n; ++idx) {
        const auto [g1, g2] = PQSeries::exponents(static_cast<std::size_t>(idx));
        ExpPoly acc;
        for (const auto &x : lhs) {
            // p^{a1+b1-1} q^{a2+b2-1} = p^g1 q^g2
            const int b1 = g1 + 1 - x.a1, b2 = g2 + 1 - x.a2;
            if (b1 < 0 || b2 < 0) continue;
            const int w = x.a2 * b1 - x.a1 * b2;
            if (w == 0) continue;
            const ExpPoly &y = chi.coeff(b1, b2);
            if (!y.is_zero()) acc += (*x.c * y) * double(w);
        }
        out.at(static_cast<std::size_t>(idx)) = std::move(acc);
    }
    return out;
}

std::vector<double> coefficient_sups(const PQSeries &G, double weight, SupMode mode)
{
    std::vector<double> sups(G.size(), 0.0);
    const long n = static_cast<long>(G.size());
    // Exceptions cannot cross the parallel region; collect and rethrow.
    std::vector<std::exception_ptr> errors(G.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            sups[i] = sup_of(G.at(static_cast<std::size_t>(i)), weight, mode);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
    return sups;
}

namespace serial {

PQSeries product(const PQSeries &a, const PQSeries &b, int trunc_degree)
{
    PQSeries out(trunc_degree);
    a.for_each([&](int a1, int a2, const ExpPoly &x) {
        b.for_each([&](int b1, int b2, const ExpPoly &y) { out.add_to(a1 + b1, a2 + b2, x * y); });
    });
    return out;
}

PQSeries bracket(const PQSeries &G, const PQSeries &chi)
{
    PQSeries out(G.trunc_degree());
    G.for_each([&](int a1, int a2, const ExpPoly &x) {
        chi.for_each([&](int b1, int b2, const ExpPoly &y) {
            const int w = a2 * b1 - a1 * b2;
            if (w != 0) out.add_to(a1 + b1 - 1, a2 + b2 - 1, (x * y) * double(w));
        });
    });
    return out;
}

std::vector<double> coefficient_sups(const PQSeries &G, double weight, SupMode mode)
{
    std::vector<double> sups(G.size(), 0.0);
    for (std::size_t i = 0; i < G.size(); ++i) sups[i] = sup_of(G.at(i), weight, mode);
    return sups;
}

} // namespace serial

} // namespace moser::kernels
