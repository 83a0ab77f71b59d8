#include "curvereg/process.hpp"

#include <cmath>
#include <stdexcept>

#include "curvereg/fft.hpp"
#include "curvereg/numeric.hpp"

namespace curvereg {

void StationaryCovSpec::validate() const {
    if (!(phi > 0.0)) throw std::invalid_argument("StationaryCovSpec: phi must be > 0");
    if (!(varsigma >= 0.0)) throw std::invalid_argument("StationaryCovSpec: varsigma must be >= 0");
}

double StationaryCovSpec::covariance(double t) const {
    return varsigma * varsigma * std::cosh(phi * (t - 0.5)) / std::cosh(0.5 * phi);
}

std::vector<double> StationaryCovSpec::spectral_masses(int max_freq) const {
    validate();
    if (max_freq < 0) throw std::invalid_argument("spectral_masses: max_freq must be >= 0");
    // Periodic trapezoid = length-N DFT of R sampled on l/N. N well above the
    // requested band keeps the aliasing error negligible (R has 1/k^2 tails),
    // and the Euler-Maclaurin term removes the O(1/N^2) bias caused by the
    // derivative jump of the periodic extension of R at integers.
    std::size_t n = 32768;
    while (n < 32 * static_cast<std::size_t>(max_freq + 1)) n <<= 1;
    std::vector<std::complex<double>> samples(n);
    for (std::size_t l = 0; l < n; ++l)
        samples[l] = covariance(static_cast<double>(l) / static_cast<double>(n));
    fft_pow2(samples, false);
    const double derivative_jump = 2.0 * varsigma * varsigma * phi * std::tanh(0.5 * phi);
    const double correction = derivative_jump / (12.0 * static_cast<double>(n) * n);
    std::vector<double> r(static_cast<std::size_t>(max_freq) + 1);
    for (int k = 0; k <= max_freq; ++k)
        r[static_cast<std::size_t>(k)] =
            samples[static_cast<std::size_t>(k)].real() / static_cast<double>(n) - correction;
    return r;
}

double StationaryCovSpec::abs_integral() const {
    validate();
    return trapezoid([this](double t) { return std::abs(covariance(t)); }, 0.0, 1.0, 1 << 16);
}

void NonstationarySpec::validate() const {
    if (!(varsigma >= 0.0)) throw std::invalid_argument("NonstationarySpec: varsigma must be >= 0");
    const double nrm = profile.norm_sq();
    if (std::abs(nrm - 1.0) > 1e-8)
        throw std::invalid_argument("NonstationarySpec: profile must have unit L2 norm");
    // The canonical profile sqrt(2/3)(1+cos 2 pi t) touches zero at t = 1/2,
    // so positivity is checked as nonnegativity up to rounding.
    const int points = 64 * (profile.max_freq() + 1);
    for (int i = 0; i < points; ++i) {
        if (profile.value(static_cast<double>(i) / points) < -1e-12)
            throw std::invalid_argument("NonstationarySpec: profile must be nonnegative");
    }
}

std::string to_string(ProcessKind kind) {
    switch (kind) {
        case ProcessKind::Zero: return "zero";
        case ProcessKind::Stationary: return "stationary";
        case ProcessKind::Nonstationary: return "nonstationary";
    }
    return "zero";
}

void ProcessRealization::add_on_grid(const DesignGrid& grid, double offset,
                                     std::vector<double>& out) const {
    const int n = grid.size();
    if (out.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("add_on_grid: output size mismatch");
    const int kmax = series.max_freq();
    if (kmax < 0) return;

    if (!is_pow2(static_cast<std::size_t>(n))) {
        for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += value(grid.point(i) - offset);
        return;
    }

    // Z(t_i - offset) = sum_k [c_k e^{i 2 pi k (1/n - offset)}] e^{i 2 pi k i / n}:
    // an unnormalized inverse DFT of phase-rotated coefficients. Frequencies
    // beyond the grid fold onto their alias bin, which is exactly what
    // pointwise evaluation of the series on the grid does.
    std::vector<std::complex<double>> bins(static_cast<std::size_t>(n));
    const double base = 1.0 / n - offset;
    for (int k = -kmax; k <= kmax; ++k) {
        const auto c = series.coeff(k);
        if (c == std::complex<double>{}) continue;
        const int m = ((k % n) + n) % n;
        bins[static_cast<std::size_t>(m)] += c * std::polar(1.0, two_pi * k * base);
    }
    fft_pow2(bins, true);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] += bins[static_cast<std::size_t>(i)].real();
}

}  // namespace curvereg
