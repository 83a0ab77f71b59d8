#ifndef CURVEREG_SMOOTHING_HPP
#define CURVEREG_SMOOTHING_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "curvereg/dataset.hpp"
#include "curvereg/fourier.hpp"
#include "curvereg/model.hpp"

namespace curvereg {

/// Truncated Fourier coefficients of each observed curve: c(j,k) for
/// |k| <= cutoff, with cutoff < n/2 so no aliased frequency is retained.
class SmoothedCurves {
public:
    SmoothedCurves(std::size_t curves, int cutoff, DesignGrid grid);

    std::size_t curves() const noexcept { return curves_; }
    int cutoff() const noexcept { return cutoff_; }
    const DesignGrid& grid() const noexcept { return grid_; }

    std::complex<double> coeff(std::size_t j, int k) const noexcept {
        return c_[j * width() + static_cast<std::size_t>(k + cutoff_)];
    }
    void set_coeff(std::size_t j, int k, std::complex<double> v) noexcept {
        c_[j * width() + static_cast<std::size_t>(k + cutoff_)] = v;
    }

    /// The smoothed curve j at any t: sum_{|k|<=cutoff} Re(c(j,k) e^{i 2 pi k t}).
    double eval(std::size_t j, double t) const;

    /// Row j as a FourierTemplate.
    FourierTemplate row_template(std::size_t j) const;

private:
    std::size_t width() const noexcept { return static_cast<std::size_t>(2 * cutoff_ + 1); }

    std::size_t curves_;
    int cutoff_;
    DesignGrid grid_;
    std::vector<std::complex<double>> c_;
};

/// c(j,k) = (1/n) sum_{l=1..n} Y_j^l e^{-i 2 pi k l / n} for |k| <= cutoff.
/// Computed from the defining sum with exact unit-circle twiddles (no error
/// accumulation); rejects cutoff >= n/2.
SmoothedCurves dft_coeffs(const Dataset& data, int cutoff);

/// Noise-free coefficients c_k e^{-i 2 pi k theta_j}: what dft_coeffs returns
/// on exact band-limited data. Useful as the idealized smoothing output.
SmoothedCurves ideal_coefficients(const FourierTemplate& pattern, const ShiftVector& shifts,
                                  int cutoff, const DesignGrid& grid);

/// Smoother variance proxy (2 cutoff + 1) / n.
double variance_v(int cutoff, int n);

/// Bias-variance proxy (2 cutoff + 1)/n + cutoff^{-2s}; rejects cutoff == 0.
double bias_b(int cutoff, int n, double smoothness);

}  // namespace curvereg

#endif
