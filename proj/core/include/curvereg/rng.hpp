#ifndef CURVEREG_RNG_HPP
#define CURVEREG_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace curvereg {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Child streams never collide with the parent or with siblings of a
// different index because mix64 is a bijection of the combined word.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index + 0x632BE59BD9B4E019ull));
}

/// Counter-based generator: output i is a pure function of (seed, i), so
/// streams can be split, replayed, and used concurrently without shared state.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : key_(seed) {}

    std::uint64_t next_u64() noexcept { return mix64(key_ + counter_++ * 0x9E3779B97F4A7C15ull); }

    /// Uniform on the open interval (0,1); never returns an endpoint.
    double next_unit() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (deterministic across platforms,
    /// unlike std::normal_distribution).
    double next_gaussian() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Complex Gaussian with E|xi|^2 = 1 (real and imaginary parts N(0,1/2)).
    std::complex<double> next_complex_gaussian() noexcept {
        const double s = std::sqrt(0.5);
        const double re = next_gaussian();
        const double im = next_gaussian();
        return {s * re, s * im};
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace curvereg

#endif
