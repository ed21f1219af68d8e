#include <doctest.h>

#include <cmath>

#include "burstkit/distribution.hpp"
#include "burstkit/errors.hpp"

using namespace burstkit;

TEST_SUITE("distribution") {

TEST_CASE("moments of a small distribution") {
    const DiscreteDistribution d({0.25, 0.5, 0.25}, 0.0);
    CHECK(d.mean() == doctest::Approx(1.0));
    CHECK(d.variance() == doctest::Approx(0.5));
    CHECK(d.fano() == doctest::Approx(0.5));
    CHECK(d[7] == 0.0);
    CHECK(d.n_max() == 2);
}

TEST_CASE("construction checks normalization and signs") {
    CHECK_THROWS_AS(DiscreteDistribution({0.5, 0.4}, 0.0), NumericalError);
    CHECK_NOTHROW(DiscreteDistribution({0.5, 0.4}, 0.1));
    CHECK_THROWS_AS(DiscreteDistribution({1.1, -0.1}, 0.0), NumericalError);
    CHECK_THROWS_AS(DiscreteDistribution({NAN, 1.0}, 0.0), NumericalError);
    CHECK_THROWS_AS(DiscreteDistribution({}, 1.0), NumericalError);
    CHECK_NOTHROW(DiscreteDistribution({1.0 - 5e-10}, 0.0));
}

TEST_CASE("point mass and Poisson") {
    CHECK(point_mass(3)[3] == 1.0);
    CHECK(point_mass(3).fano() == 0.0);
    CHECK(point_mass(0).fano() == 1.0);
    const DiscreteDistribution p = poisson(1000.0);
    CHECK(p.mean() == doctest::Approx(1000.0).epsilon(1e-9));
    CHECK(p.fano() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(p.tail_mass_bound() <= 1e-10);
    CHECK(poisson(0.0)[0] == 1.0);
    CHECK_THROWS_AS(poisson(-1.0), ValidationError);
}

TEST_CASE("total variation distance") {
    const DiscreteDistribution a({0.5, 0.5}, 0.0);
    const DiscreteDistribution b({0.0, 0.5, 0.5}, 0.0);
    CHECK(tv_distance(a, a) == 0.0);
    CHECK(tv_distance(a, b) == doctest::Approx(0.5));
    CHECK(tv_distance(a, b) == tv_distance(b, a));
    CHECK(tv_distance(point_mass(0), point_mass(4)) == 1.0);
    // the truncated tails count as one extra point
    const DiscreteDistribution c({0.5, 0.4}, 0.1);
    CHECK(tv_distance(a, c) == doctest::Approx(0.1));
}

}
