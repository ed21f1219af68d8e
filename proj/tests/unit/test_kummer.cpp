#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "burstkit/errors.hpp"
#include "burstkit/kummer.hpp"

using namespace burstkit;

namespace {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<600>>;

// Plain alternating/positive series in 600-digit arithmetic, log|M| returned.
// Independent of the library code: no transformation, no rescaling.
double reference_log_m(double a, double b, double z) {
    Big term = 1;
    Big sum = 1;
    const Big A = a;
    const Big B = b;
    const Big Z = z;
    for (int k = 0; k < 20000; ++k) {
        term *= (A + k) * Z / ((B + k) * (k + 1));
        sum += term;
        if (k > std::abs(z) + 50 && abs(term) < abs(sum) * Big("1e-40")) break;
    }
    return static_cast<double>(log(abs(sum)));
}

struct Golden {
    double a, b, z;
    double log_magnitude;
    int sign;
};

}  // namespace

TEST_SUITE("kummer") {

TEST_CASE("golden values") {
    // Values computed to 20 digits with an arbitrary-precision library.
    const Golden goldens[] = {
        {1, 100, -1000, -2.4062071908396361601, 1},
        {0.5, 3.25, -40, std::log(0.24520660550287817071), 1},
        {2, 1.5, -7.5, -4.7919661935325134203, -1},
        {10, 1000, -999, std::log(0.00096801424059461123769), 1},
        {1001, 1100, -1000, -842.01866446791602745, 1},
        {1, 2, 1, std::log(1.7182818284590452354), 1},
        {3, 5, 200, 191.86822225888622324, 1},
        {0.1, 0.2, 700, 698.61637189282926196, 1},
        {1000, 2000, -900, -400.59984194160481456, 1},
        {1.5, 1.25, -30, std::log(0.0012032995424357318531), -1},
        {7, 4.5, -60, -25.694800479370361073, -1},
    };
    for (const Golden& g : goldens) {
        CAPTURE(g.a);
        CAPTURE(g.b);
        CAPTURE(g.z);
        const LogScaledValue m = kummer_m(g.a, g.b, g.z);
        CHECK(m.sign == g.sign);
        CHECK(std::abs(m.log_magnitude - g.log_magnitude) <=
              1e-12 * std::max(1.0, std::abs(g.log_magnitude)));
    }
    CHECK(kummer_m(1, 100, -1000).value() ==
          doctest::Approx(0.090156593676282526146).epsilon(1e-12));
}

TEST_CASE("agrees with a high-precision direct series") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ua(0.0, 30.0);
    std::uniform_real_distribution<double> ub(0.05, 60.0);
    std::uniform_real_distribution<double> uz(-300.0, 300.0);
    for (int i = 0; i < 60; ++i) {
        const double a = ua(gen);
        const double b = ub(gen);
        const double z = uz(gen);
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(z);
        const LogScaledValue m = kummer_m(a, b, z);
        const double expected = reference_log_m(a, b, z);
        CHECK(std::abs(m.log_magnitude - expected) <= 1e-11 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("closed forms") {
    for (double z : {-50.0, -3.0, -0.5, 0.25, 4.0, 80.0}) {
        CAPTURE(z);
        // M(a, a, z) = e^z
        CHECK(kummer_m(2.5, 2.5, z).log_magnitude == doctest::Approx(z).epsilon(1e-13));
        // M(1, 2, z) = (e^z - 1) / z
        CHECK(kummer_m(1, 2, z).value() == doctest::Approx(std::expm1(z) / z).epsilon(1e-13));
        // degree-two polynomial
        const double b = 3.5;
        const double poly = 1.0 - 2.0 * z / b + z * z / (b * (b + 1.0));
        CHECK(kummer_m(-2, b, z).value() == doctest::Approx(poly).epsilon(1e-12));
    }
    CHECK(kummer_m_detailed(-2, 3.5, 1.0).path == KummerPath::polynomial);
    CHECK(kummer_m_detailed(0, 3.5, 10.0).path == KummerPath::trivial);
    CHECK(kummer_m_detailed(1, 3.5, 0.0).path == KummerPath::trivial);
    CHECK(kummer_m_detailed(1, 3.5, -10.0).path == KummerPath::kummer_transformed);
    CHECK(kummer_m_detailed(1, 3.5, 10.0).path == KummerPath::direct);
}

TEST_CASE("contiguous relation in b") {
    // b(b-1) M(a,b-1,z) + b(1-b-z) M(a,b,z) + z(b-a) M(a,b+1,z) = 0
    for (double a : {0.5, 2.0, 10.0}) {
        for (double b : {3.0, 20.0, 150.0}) {
            for (double z : {-40.0, -1.0, 2.0, 30.0}) {
                const double m0 = kummer_m(a, b - 1, z).value();
                const double m1 = kummer_m(a, b, z).value();
                const double m2 = kummer_m(a, b + 1, z).value();
                const double t0 = b * (b - 1) * m0;
                const double t1 = b * (1 - b - z) * m1;
                const double t2 = z * (b - a) * m2;
                const double scale = std::abs(t0) + std::abs(t1) + std::abs(t2);
                CHECK(std::abs(t0 + t1 + t2) <= 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("increasing in z for positive a and b") {
    for (double a : {0.1, 1.0, 7.0}) {
        double previous = -INFINITY;
        for (double z = -200.0; z <= 200.0; z += 12.5) {
            const double log_m = kummer_m(a, 11.0, z).log_magnitude;
            CHECK(log_m > previous);
            previous = log_m;
        }
    }
}

TEST_CASE("pochhammer symbols") {
    CHECK(pochhammer_log(3.0, 0).log_magnitude == 0.0);
    CHECK(pochhammer_log(1.0, 5).value() == doctest::Approx(120.0).epsilon(1e-14));
    CHECK(pochhammer_log(0.5, 3).value() == doctest::Approx(0.5 * 1.5 * 2.5).epsilon(1e-14));
    CHECK(pochhammer_log(-2.5, 2).value() == doctest::Approx(-2.5 * -1.5).epsilon(1e-14));
    CHECK(pochhammer_log(-2.5, 3).sign == -1);
    CHECK(pochhammer_log(-2.0, 3).is_zero());
    for (std::int64_t n = 0; n < 50; ++n) {
        // recurrence holds exactly
        CHECK(pochhammer_log(1.7, n + 1).log_magnitude ==
              pochhammer_log(1.7, n).log_magnitude + std::log(1.7 + static_cast<double>(n)));
    }
    CHECK_THROWS_AS(pochhammer_log(1.0, -1), ValidationError);
}

TEST_CASE("rejects invalid arguments") {
    CHECK_THROWS_AS(kummer_m(1, 0, 1), ValidationError);
    CHECK_THROWS_AS(kummer_m(1, -2, 1), ValidationError);
    CHECK_THROWS_AS(kummer_m(-0.5, 1, 1), ValidationError);
    CHECK_THROWS_AS(kummer_m(1, 1, NAN), ValidationError);
    KummerOptions tight;
    tight.max_terms = 10;
    CHECK_THROWS_AS(kummer_m(1, 2, 500, tight), NumericalError);
}

TEST_CASE("log-scaled arithmetic") {
    const LogScaledValue x = LogScaledValue::from_double(-4.0);
    const LogScaledValue y = LogScaledValue::from_double(0.5);
    CHECK((x * y).value() == doctest::Approx(-2.0));
    CHECK((x / y).value() == doctest::Approx(-8.0));
    CHECK(LogScaledValue::from_double(0.0).is_zero());
    CHECK_THROWS_AS(x / LogScaledValue::zero(), NumericalError);
}

}
