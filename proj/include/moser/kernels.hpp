#pragma once

#include <vector>

#include "moser/series.hpp"

// Monomial-level kernels. The default versions parallelise over output
// monomials with OpenMP and sum contributions in a fixed order, so results
// do not depend on the thread count. The serial:: versions are the
// straightforward scatter loops kept as the reference for tests and
// benchmarks.
namespace moser::kernels {

/// a * b truncated at trunc_degree.
PQSeries product(const PQSeries &a, const PQSeries &b, int trunc_degree);

/// L_chi G = G_q chi_p - G_p chi_q, truncated at G's degree.
PQSeries bracket(const PQSeries &G, const PQSeries &chi);

/// sup_t |g_alpha(t)| e^{weight t} for every stored monomial, in index order.
std::vector<double> coefficient_sups(const PQSeries &G, double weight, SupMode mode);

namespace serial {

PQSeries product(const PQSeries &a, const PQSeries &b, int trunc_degree);
PQSeries bracket(const PQSeries &G, const PQSeries &chi);
std::vector<double> coefficient_sups(const PQSeries &G, double weight, SupMode mode);

} // namespace serial

} // namespace moser::kernels
