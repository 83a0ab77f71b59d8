#ifndef CURVEREG_FOURIER_HPP
#define CURVEREG_FOURIER_HPP

#include <complex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace curvereg {

/// A real periodic function on [0,1) held as complex Fourier coefficients
/// c_k for |k| <= max_freq, f(t) = sum_k Re(c_k e^{i 2 pi k t}).
///
/// Coefficients are the primary representation throughout: the shift action,
/// the low-pass smoother and the alignment criterion are all diagonal in this
/// basis, and evaluation at off-grid points t - theta stays exact.
class FourierTemplate {
public:
    /// Zero function.
    FourierTemplate() = default;

    /// Build from (frequency, coefficient) pairs; later pairs with the same
    /// frequency accumulate.
    explicit FourierTemplate(const std::vector<std::pair<int, std::complex<double>>>& coeffs);

    static FourierTemplate constant(double c0);

    int max_freq() const noexcept { return max_freq_; }

    std::complex<double> coeff(int k) const noexcept;
    void set_coeff(int k, std::complex<double> value);

    /// f(t) = sum_k Re(c_k e^{i 2 pi k t}); periodic with period 1.
    double value(double t) const noexcept;

    /// f'(t), i.e. coefficients i 2 pi k c_k.
    double derivative_value(double t) const noexcept;

    /// sum_k |c_k|^2 (squared L2 norm by Parseval).
    double norm_sq() const noexcept;

    /// sum_k (1+|k|^2)^s |c_k|^2, the Sobolev-scale weighted energy.
    double sobolev_norm_sq(double s) const noexcept;

    bool is_hermitian(double tol = 1e-12) const noexcept;

    /// Drops leading/trailing all-zero frequencies so max_freq is tight.
    void trim(double tol = 0.0);

    /// Metadata only: a Sobolev-ball radius the function is declared to lie
    /// within. No computation consumes it.
    std::optional<double> sobolev_radius;

private:
    void ensure_capacity(int k);

    // c_[k + max_freq_] holds c_k; empty vector means the zero function.
    std::vector<std::complex<double>> c_;
    int max_freq_ = -1;
};

/// Squared L2 distance sum_k |a_k - b_k|^2 over the union of supports.
double l2_distance_sq(const FourierTemplate& a, const FourierTemplate& b);

/// The circular shift f(. - theta): c_k -> c_k e^{-i 2 pi k theta}.
FourierTemplate shift_template(const FourierTemplate& f, double theta);

/// Named built-in test functions.
///   "default" (alias "paper"): 9 sin(2 pi t) + 2 cos(8 pi t)
///   "constant":                 1
///   "cosine":                   cos(2 pi t)
/// Throws std::invalid_argument for unknown names.
FourierTemplate builtin_template(std::string_view name);

/// sqrt(2/3) (1 + cos 2 pi t): positive, smooth, unit L2 norm. The default
/// amplitude profile of the rank-one perturbation process.
FourierTemplate default_amplitude_profile();

}  // namespace curvereg

#endif
