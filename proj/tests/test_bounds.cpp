#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curvereg/bounds.hpp"
#include "curvereg/numeric.hpp"

using namespace curvereg;

namespace {

// Independent oracle: dense-grid maximization of |f'| at a given resolution,
// no refinement.
double sup_deriv_grid(const FourierTemplate& f, int points) {
    double best = 0.0;
    for (int i = 0; i < points; ++i)
        best = std::max(best, std::abs(f.derivative_value(static_cast<double>(i) / points)));
    return best;
}

// Independent oracle for the prior Fisher information: plain high-resolution
// trapezoid of (g')^2/g with the derivative written out directly and the
// endpoints clipped just inside the support.
double fisher_trapezoid(double half_width, long points) {
    const double pi = std::numbers::pi;
    const auto g = [half_width, pi](double x) {
        const double c = std::cos(0.5 * pi * x / half_width);
        return c * c / half_width;
    };
    const auto gprime = [half_width, pi](double x) {
        return -pi * std::sin(pi * x / half_width) / (2.0 * half_width * half_width);
    };
    const double a = -half_width * (1.0 - 1e-8);
    const double b = half_width * (1.0 - 1e-8);
    const double h = (b - a) / static_cast<double>(points);
    double acc = 0.5 * (gprime(a) * gprime(a) / g(a) + gprime(b) * gprime(b) / g(b));
    for (long i = 1; i < points; ++i) {
        const double x = a + h * static_cast<double>(i);
        acc += gprime(x) * gprime(x) / g(x);
    }
    return acc * h;
}

}  // namespace

TEST_CASE("sup derivative") {
    CHECK(sup_derivative(FourierTemplate::constant(3.0)) == 0.0);
    CHECK(sup_derivative(FourierTemplate{}) == 0.0);

    SUBCASE("cosine derivative peaks at 2 pi") {
        const FourierTemplate f{{{1, {0.5, 0.0}}, {-1, {0.5, 0.0}}}};
        CHECK(sup_derivative(f) == doctest::Approx(two_pi).epsilon(1e-9));
    }
    SUBCASE("built-in template certified by two scan resolutions") {
        const auto f = builtin_template("default");
        const double coarse = sup_derivative(f, 1 << 12);
        const double fine = sup_derivative(f, 1 << 15);
        CHECK(fine == doctest::Approx(coarse).epsilon(1e-6));
        // the refined value dominates any raw grid maximum
        CHECK(fine >= sup_deriv_grid(f, 1 << 15) - 1e-12);
        CHECK(sup_derivative(f) == doctest::Approx(fine).epsilon(1e-6));
    }
}

TEST_CASE("prior Fisher information") {
    SUBCASE("raised cosine against the trapezoid oracle") {
        const double value = fisher_info({DensityKind::RaisedCosine, 0.2});
        CHECK(value == doctest::Approx(fisher_trapezoid(0.2, 1000000)).epsilon(1e-4));
        // closed form pi^2 / rho'^2 derived by a trig identity
        const double pi = std::numbers::pi;
        CHECK(value == doctest::Approx(pi * pi / 0.04).epsilon(1e-8));
    }
    SUBCASE("scale family: information scales as the inverse squared width") {
        const double i1 = fisher_info({DensityKind::RaisedCosine, 0.1});
        const double i2 = fisher_info({DensityKind::RaisedCosine, 0.2});
        CHECK(i1 / i2 == doctest::Approx(4.0).epsilon(1e-6));
    }
    SUBCASE("uniform prior is rejected") {
        CHECK_THROWS_WITH_AS(fisher_info({DensityKind::Uniform, 0.2}),
                             doctest::Contains("Fisher information undefined"),
                             std::invalid_argument);
    }
}

TEST_CASE("van Trees shift bound") {
    SUBCASE("flat-prior-free algebra") {
        CHECK(van_trees_shift_bound({100, 1.0, 1.0, 0.0}) == doctest::Approx(0.01));
        CHECK(van_trees_shift_bound({100, 1.0, 1.0, 100.0}) == doctest::Approx(0.005));
    }
    SUBCASE("degenerate noise level") {
        CHECK(van_trees_shift_bound({512, 0.0, 5.0, 10.0}) == 0.0);
    }
    SUBCASE("doubling the design shrinks the bound by less than half") {
        const double sup = sup_derivative(builtin_template("default"));
        const double info = fisher_info({DensityKind::RaisedCosine, 0.2});
        const double b512 = van_trees_shift_bound({512, 2.0, sup, info});
        const double b1024 = van_trees_shift_bound({1024, 2.0, sup, info});
        CHECK(b1024 < b512);
        CHECK(b1024 / b512 > 0.5);
        CHECK(b1024 / b512 < 1.0);
    }
    SUBCASE("monotone in every ingredient") {
        const BoundInputs base{256, 2.0, 3.0, 50.0};
        CHECK(van_trees_shift_bound({512, 2.0, 3.0, 50.0}) < van_trees_shift_bound(base));
        CHECK(van_trees_shift_bound({256, 3.0, 3.0, 50.0}) > van_trees_shift_bound(base));
        CHECK(van_trees_shift_bound({256, 2.0, 4.0, 50.0}) < van_trees_shift_bound(base));
        CHECK(van_trees_shift_bound({256, 2.0, 3.0, 80.0}) < van_trees_shift_bound(base));
    }
    SUBCASE("vanishes in the dense-design limit") {
        double prev = van_trees_shift_bound({32, 2.0, 3.0, 50.0});
        for (int n = 64; n <= 1 << 20; n <<= 1) {
            const double next = van_trees_shift_bound({n, 2.0, 3.0, 50.0});
            CHECK(next < prev);
            prev = next;
        }
        CHECK(prev < 1e-6);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(van_trees_shift_bound({0, 1.0, 1.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(van_trees_shift_bound({10, 1.0, 0.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(van_trees_shift_bound({10, 1.0, 1.0, -1.0}), std::invalid_argument);
    }
}

TEST_CASE("general-constant form of the bound") {
    SUBCASE("coincides with the shift bound at c = sup_deriv^2") {
        const BoundInputs in{512, 2.0, 3.5, 40.0};
        CHECK(van_trees_sim_bound(in, 3.5 * 3.5) ==
              doctest::Approx(van_trees_shift_bound(in)).epsilon(1e-15));
    }
    SUBCASE("unit case") {
        CHECK(van_trees_sim_bound({1, 1.0, 1.0, 0.0}, 1.0) == doctest::Approx(1.0));
    }
    SUBCASE("halves when the constant doubles (no prior term)") {
        const BoundInputs in{64, 1.5, 2.0, 0.0};
        CHECK(van_trees_sim_bound(in, 2.0) ==
              doctest::Approx(2.0 * van_trees_sim_bound(in, 4.0)).epsilon(1e-14));
    }
    SUBCASE("rejects a non-positive constant") {
        CHECK_THROWS_AS(van_trees_sim_bound({64, 1.0, 1.0, 0.0}, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(van_trees_sim_bound({64, 1.0, 1.0, 0.0}, -2.0), std::invalid_argument);
    }
}

TEST_CASE("stationary metadata") {
    BoundInputs in{512, 8.0, 3.0, 25.0, BoundMode::Stationary};
    in.gamma = 7.5;
    // gamma is documentation; the bound value ignores it
    BoundInputs plain{512, 8.0, 3.0, 25.0, BoundMode::Sim};
    CHECK(van_trees_shift_bound(in) == van_trees_shift_bound(plain));
    CHECK(to_string(BoundMode::Stationary) == "stationary");
}
