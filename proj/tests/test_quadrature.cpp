#include <doctest.h>

#include <cmath>

#include "mazer/quadrature.hpp"

using mazer::gauss_legendre;

namespace {

double integrate(int rule_n, int power) {
    const auto& rule = gauss_legendre(rule_n);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * std::pow(rule.nodes[i], power);
    return sum;
}

} // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly up to degree 2n-1") {
    for (int n : {4, 16, 64}) {
        CHECK(integrate(n, 0) == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(integrate(n, 1) == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(integrate(n, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
        CHECK(integrate(n, 7) == doctest::Approx(0.0).epsilon(1e-13));
        CHECK(integrate(n, 6) == doctest::Approx(2.0 / 7.0).epsilon(1e-13));
    }
    // degree 2n-2 is the highest even power a rule of size n must nail
    CHECK(integrate(4, 6) == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
    CHECK(integrate(4, 8) != doctest::Approx(2.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("weights are positive and sum to the interval length") {
    const auto& rule = gauss_legendre(64);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.weights.size(); ++i) {
        CHECK(rule.weights[i] > 0.0);
        sum += rule.weights[i];
        if (i > 0)
            CHECK(rule.nodes[i] > rule.nodes[i - 1]); // ascending
    }
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("smooth integrand converges") {
    const auto& rule = gauss_legendre(64);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * std::exp(rule.nodes[i]);
    CHECK(sum == doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-14));
}
