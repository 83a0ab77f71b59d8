#ifndef CURVEREG_BOUNDS_HPP
#define CURVEREG_BOUNDS_HPP

#include <optional>
#include <string>

#include "curvereg/fourier.hpp"
#include "curvereg/model.hpp"

namespace curvereg {

enum class BoundMode { Sim, Stationary };

std::string to_string(BoundMode mode);

/// Ingredients of the Bayesian Cramer-Rao (van Trees) lower bound for the
/// shift parameters. Deliberately has no J field: the bound is independent
/// of the number of curves.
struct BoundInputs {
    int n = 1;               // design points per curve
    double sigma = 0.0;      // measurement noise level
    double sup_deriv = 1.0;  // sup_t |f'(t)|
    double fisher_g = 0.0;   // prior Fisher information int (d log g)^2 g
    BoundMode mode = BoundMode::Sim;

    /// int_0^1 |R(t)| dt for the stationary perturbation; carried as
    /// documentation only, no bound consumes it.
    std::optional<double> gamma;

    void validate() const;
};

/// sup_t |f'(t)| over a dense grid (>= 256 max_freq points) with
/// golden-section refinement around every grid-local maximum. grid_points
/// overrides the scan resolution (0 = automatic); refined results at
/// different scan resolutions agree to ~1e-6 relative.
double sup_derivative(const FourierTemplate& pattern, int grid_points = 0);

/// Prior Fisher information int (g'(x))^2 / g(x) dx by adaptive quadrature;
/// two refinement levels must agree to relative 1e-6. Rejects the uniform
/// density, whose Fisher information is undefined.
double fisher_info(const ShiftDensitySpec& density);

/// (sigma^2 / n) / (sup_deriv^2 + (sigma^2 / n) fisher_g).
double van_trees_shift_bound(const BoundInputs& inputs);

/// Same algebra with a caller-supplied smoothness constant in place of
/// sup_deriv^2; for the shift family the two coincide at c = sup_deriv^2.
double van_trees_sim_bound(const BoundInputs& inputs, double c_theta_f);

}  // namespace curvereg

#endif
