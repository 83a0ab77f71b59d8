#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "curvereg/numeric.hpp"
#include "curvereg/rng.hpp"
#include "curvereg/smoothing.hpp"
#include "curvereg/synth.hpp"
#include "test_util.hpp"

using namespace curvereg;

namespace {

Dataset dataset_from_rows(const DesignGrid& grid, std::vector<std::vector<double>> rows) {
    Dataset data{grid, rows.size(), {}, std::nullopt};
    for (const auto& r : rows) {
        REQUIRE(r.size() == static_cast<std::size_t>(grid.size()));
        data.y.insert(data.y.end(), r.begin(), r.end());
    }
    return data;
}

}  // namespace

TEST_CASE("dft coefficients") {
    SUBCASE("constant curve concentrates at frequency zero") {
        const DesignGrid grid(16);
        const auto data = dataset_from_rows(grid, {std::vector<double>(16, 1.0)});
        const auto sc = dft_coeffs(data, 2);
        CHECK(std::abs(sc.coeff(0, 0) - 1.0) < 1e-14);
        for (int k = 1; k <= 2; ++k) {
            CHECK(std::abs(sc.coeff(0, k)) < 1e-14);
            CHECK(std::abs(sc.coeff(0, -k)) < 1e-14);
        }
    }
    SUBCASE("pure cosine splits into the +-1 bins") {
        const DesignGrid grid(64);
        std::vector<double> row(64);
        for (int i = 0; i < 64; ++i) row[static_cast<std::size_t>(i)] = std::cos(two_pi * grid.point(i));
        const auto sc = dft_coeffs(dataset_from_rows(grid, {row}), 1);
        CHECK(std::abs(sc.coeff(0, 1) - 0.5) < 1e-13);
        CHECK(std::abs(sc.coeff(0, -1) - 0.5) < 1e-13);
        CHECK(std::abs(sc.coeff(0, 0)) < 1e-13);
    }
    SUBCASE("band-limited noiseless data is recovered exactly") {
        const DesignGrid grid(512);
        const auto f = builtin_template("default");
        const auto shifts = sample_shifts(6, {DensityKind::Uniform, 0.2}, 31);
        const auto data = generate_dataset(f, shifts, zero_processes(6), 0.0, grid, 32);
        const auto sc = dft_coeffs(data, 7);
        for (std::size_t j = 0; j < 6; ++j)
            for (int k = -7; k <= 7; ++k) {
                const auto expected = f.coeff(k) * std::polar(1.0, -two_pi * k * shifts[j]);
                CHECK(std::abs(sc.coeff(j, k) - expected) < 1e-10);
            }
    }
    SUBCASE("cutoff beyond Nyquist is rejected") {
        const DesignGrid grid(16);
        const auto data = dataset_from_rows(grid, {std::vector<double>(16, 0.0)});
        CHECK_THROWS_AS(dft_coeffs(data, 8), std::invalid_argument);
        CHECK_THROWS_AS(dft_coeffs(data, -1), std::invalid_argument);
        CHECK_NOTHROW(dft_coeffs(data, 7));
    }
    SUBCASE("linearity") {
        const DesignGrid grid(32);
        CounterRng rng(606);
        std::vector<double> a(32), b(32), mix(32);
        for (int i = 0; i < 32; ++i) {
            a[static_cast<std::size_t>(i)] = rng.next_gaussian();
            b[static_cast<std::size_t>(i)] = rng.next_gaussian();
            mix[static_cast<std::size_t>(i)] =
                2.5 * a[static_cast<std::size_t>(i)] - 1.25 * b[static_cast<std::size_t>(i)];
        }
        const auto sa = dft_coeffs(dataset_from_rows(grid, {a}), 5);
        const auto sb = dft_coeffs(dataset_from_rows(grid, {b}), 5);
        const auto sm = dft_coeffs(dataset_from_rows(grid, {mix}), 5);
        for (int k = -5; k <= 5; ++k)
            CHECK(std::abs(sm.coeff(0, k) - (2.5 * sa.coeff(0, k) - 1.25 * sb.coeff(0, k))) <
                  1e-12);
    }
    SUBCASE("Hermitian symmetry of real-data rows") {
        const DesignGrid grid(48);
        CounterRng rng(607);
        std::vector<double> row(48);
        for (auto& v : row) v = rng.next_gaussian();
        const auto sc = dft_coeffs(dataset_from_rows(grid, {row}), 10);
        for (int k = 0; k <= 10; ++k)
            CHECK(std::abs(sc.coeff(0, -k) - std::conj(sc.coeff(0, k))) < 1e-12);
    }
    SUBCASE("pure-noise band energy matches sigma^2 (2 lambda + 1)/n") {
        const DesignGrid grid(32);
        const int lam = 3;
        const double sigma = 1.0;
        const std::size_t reps = 10000;
        double acc = 0.0;
        CounterRng rng(881);
        std::vector<double> row(32);
        for (std::size_t r = 0; r < reps; ++r) {
            for (auto& v : row) v = sigma * rng.next_gaussian();
            const auto sc = dft_coeffs(dataset_from_rows(grid, {row}), lam);
            for (int k = -lam; k <= lam; ++k) acc += std::norm(sc.coeff(0, k));
        }
        acc /= static_cast<double>(reps);
        CHECK(acc == doctest::Approx(sigma * sigma * (2 * lam + 1) / 32.0).epsilon(0.05));
    }
    SUBCASE("shift covariance: sampling a shifted band-limited curve rotates phases") {
        const DesignGrid grid(128);
        const auto f = builtin_template("default");
        const double theta = 0.0875;
        std::vector<double> plain(128), shifted(128);
        for (int i = 0; i < 128; ++i) {
            plain[static_cast<std::size_t>(i)] = f.value(grid.point(i));
            shifted[static_cast<std::size_t>(i)] = f.value(grid.point(i) - theta);
        }
        const auto sp = dft_coeffs(dataset_from_rows(grid, {plain}), 6);
        const auto ss = dft_coeffs(dataset_from_rows(grid, {shifted}), 6);
        for (int k = -6; k <= 6; ++k) {
            const auto rotated = sp.coeff(0, k) * std::polar(1.0, -two_pi * k * theta);
            CHECK(std::abs(ss.coeff(0, k) - rotated) < 1e-12);
        }
    }
}

TEST_CASE("smoothed evaluation") {
    const DesignGrid grid(16);
    SUBCASE("cutoff zero is the constant curve") {
        SmoothedCurves sc(1, 0, grid);
        sc.set_coeff(0, 0, {3.25, 0.0});
        for (double t : {0.0, 0.4, 0.9}) CHECK(sc.eval(0, t) == doctest::Approx(3.25));
    }
    SUBCASE("cosine pair evaluates to one at the origin") {
        SmoothedCurves sc(1, 1, grid);
        sc.set_coeff(0, 1, {0.5, 0.0});
        sc.set_coeff(0, -1, {0.5, 0.0});
        CHECK(sc.eval(0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("periodicity") {
        CounterRng rng(4);
        auto sc = testutil::random_curves(rng, 2, 4);
        for (double t : {0.2, 0.66}) {
            CHECK(sc.eval(1, t) == doctest::Approx(sc.eval(1, t + 1.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("variance and bias bookkeeping") {
    CHECK(variance_v(0, 1) == doctest::Approx(1.0));
    CHECK(variance_v(7, 512) == doctest::Approx(15.0 / 512));
    CHECK(variance_v(7, 1024) == doctest::Approx(15.0 / 1024));
    CHECK_THROWS_AS(variance_v(-1, 10), std::invalid_argument);
    CHECK_THROWS_AS(variance_v(2, 0), std::invalid_argument);

    CHECK(bias_b(1, 3, 1.0) == doctest::Approx(2.0));
    CHECK(bias_b(7, 512, 1.0) == doctest::Approx(15.0 / 512 + 1.0 / 49.0));
    CHECK_THROWS_AS(bias_b(0, 512, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bias_b(3, 512, 0.0), std::invalid_argument);
    // decreasing in n at fixed cutoff and smoothness
    CHECK(bias_b(7, 1024, 1.0) < bias_b(7, 512, 1.0));
}
