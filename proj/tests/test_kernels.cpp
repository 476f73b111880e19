// The parallel kernels must agree with the serial scatter loops.

#include <random>

#include "doctest.h"
#include "moser/kernels.hpp"
#include "test_util.hpp"

using namespace moser;
using moser::testing::random_series;

namespace {

void check_equal(const PQSeries &a, const PQSeries &b)
{
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.at(i).size() == b.at(i).size());
        CHECK(a.at(i).same_terms(b.at(i), 1e-13));
    }
}

} // namespace

TEST_CASE("product: parallel gather matches serial scatter")
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const PQSeries a = random_series(rng, 10, 0, 6);
        const PQSeries b = random_series(rng, 10, 1, 7);
        check_equal(kernels::product(a, b, 10), kernels::serial::product(a, b, 10));
    }
}

TEST_CASE("bracket: parallel gather matches serial scatter")
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        const PQSeries g = random_series(rng, 10, 1, 8);
        const PQSeries chi = random_series(rng, 10, 3, 6);
        check_equal(kernels::bracket(g, chi), kernels::serial::bracket(g, chi));
    }
}

TEST_CASE("coefficient sups: parallel matches serial")
{
    std::mt19937_64 rng(3);
    const PQSeries g = random_series(rng, 8, 0, 8);
    for (auto mode : {SupMode::tight, SupMode::certified}) {
        const auto a = kernels::coefficient_sups(g, 0.0, mode);
        const auto b = kernels::serial::coefficient_sups(g, 0.0, mode);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("bracket of a monomial with itself vanishes")
{
    PQSeries m = PQSeries::monomial(8, 2, 3);
    CHECK(kernels::bracket(m, m).is_zero());
}
