#ifndef CURVEREG_PROCESS_HPP
#define CURVEREG_PROCESS_HPP

#include <string>
#include <vector>

#include "curvereg/fourier.hpp"
#include "curvereg/model.hpp"

namespace curvereg {

/// Stationary covariance R(t) = varsigma^2 cosh(phi (t - 1/2)) / cosh(phi / 2)
/// on [0,1]; R(0) = varsigma^2 and R(t) = R(1-t).
struct StationaryCovSpec {
    double varsigma = 4.0;
    double phi = 4.0;

    void validate() const;

    double covariance(double t) const;

    /// Fourier coefficients r_k = int_0^1 R(t) e^{-i 2 pi k t} dt for
    /// k = 0..K, computed by periodic trapezoid quadrature (they are real by
    /// the R(t) = R(1-t) symmetry).
    std::vector<double> spectral_masses(int max_freq) const;

    /// gamma = int_0^1 |R(t)| dt.
    double abs_integral() const;
};

/// Rank-one perturbation: Z(t) = alpha psi(t) with alpha ~ N(0, varsigma^2)
/// and a fixed positive smooth unit-norm profile psi.
struct NonstationarySpec {
    double varsigma = 4.0;
    FourierTemplate profile = default_amplitude_profile();

    /// Checks ||psi||_{L2} = 1 to 1e-8 and psi > 0 on a dense grid.
    void validate() const;
};

enum class ProcessKind { Zero, Stationary, Nonstationary };

std::string to_string(ProcessKind kind);

/// One sampled perturbation path, held as a finite random Fourier series so
/// it can be evaluated exactly at the off-grid points l/n - theta.
struct ProcessRealization {
    ProcessKind kind = ProcessKind::Zero;
    FourierTemplate series;

    /// |negative spectral mass| / total |mass| clipped away during synthesis.
    double clipped_fraction = 0.0;

    static ProcessRealization zero() { return {}; }

    double value(double t) const noexcept { return series.value(t); }

    /// out[i] += Z(t_i - offset) for every grid point; uses an FFT when the
    /// grid size is a power of two and the series fits below Nyquist.
    void add_on_grid(const DesignGrid& grid, double offset, std::vector<double>& out) const;
};

}  // namespace curvereg

#endif
