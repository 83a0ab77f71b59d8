#include "curvereg/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "curvereg/numeric.hpp"

namespace curvereg {

std::string to_string(BoundMode mode) { return mode == BoundMode::Sim ? "SIM" : "stationary"; }

void BoundInputs::validate() const {
    if (n < 1) throw std::invalid_argument("BoundInputs: n must be >= 1");
    if (!(sigma >= 0.0)) throw std::invalid_argument("BoundInputs: sigma must be >= 0");
    if (!(sup_deriv > 0.0)) throw std::invalid_argument("BoundInputs: sup_deriv must be > 0");
    if (!(fisher_g >= 0.0) || !std::isfinite(fisher_g))
        throw std::invalid_argument("BoundInputs: fisher_g must be finite and >= 0");
}

double sup_derivative(const FourierTemplate& pattern, int grid_points) {
    const int kmax = pattern.max_freq();
    if (kmax < 0) return 0.0;
    const int points =
        grid_points > 0 ? grid_points : std::max(1024, 256 * std::max(kmax, 1));

    const auto mag = [&pattern](double t) { return std::abs(pattern.derivative_value(t)); };

    std::vector<double> values(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        values[static_cast<std::size_t>(i)] = mag(static_cast<double>(i) / points);

    // Refine every local maximum of the grid scan; |f'| is smooth between
    // grid points at this resolution, so golden section is safe cell-wise.
    const double h = 1.0 / points;
    double best = 0.0;
    for (int i = 0; i < points; ++i) {
        const double prev = values[static_cast<std::size_t>((i + points - 1) % points)];
        const double next = values[static_cast<std::size_t>((i + 1) % points)];
        const double here = values[static_cast<std::size_t>(i)];
        if (here >= prev && here >= next) {
            const double t = static_cast<double>(i) / points;
            const double refined = golden_section_max(mag, t - h, t + h, 1e-14);
            best = std::max(best, mag(refined));
        }
        best = std::max(best, here);
    }
    return best;
}

double fisher_info(const ShiftDensitySpec& density) {
    density.validate();
    if (density.kind == DensityKind::Uniform)
        throw std::invalid_argument(
            "Fisher information undefined for the uniform density: the prior must be "
            "continuously differentiable and vanish at its support boundary");
    if (density.half_width == 0.0)
        throw std::invalid_argument("fisher_info: degenerate support");

    const auto integrand = [&density](double x) { return density.fisher_integrand(x); };
    const double rho = density.half_width;
    const double scale = 1.0 / (rho * rho);  // the answer is O(1/rho^2)
    const double coarse = adaptive_simpson(integrand, -rho, rho, 1e-8 * scale);
    const double fine = adaptive_simpson(integrand, -rho, rho, 1e-10 * scale);
    if (std::abs(coarse - fine) > 1e-6 * std::abs(fine))
        throw std::runtime_error("fisher_info: quadrature refinements disagree");
    return fine;
}

double van_trees_shift_bound(const BoundInputs& inputs) {
    inputs.validate();
    if (inputs.sigma == 0.0) return 0.0;
    const double q = inputs.sigma * inputs.sigma / static_cast<double>(inputs.n);
    return q / (inputs.sup_deriv * inputs.sup_deriv + q * inputs.fisher_g);
}

double van_trees_sim_bound(const BoundInputs& inputs, double c_theta_f) {
    inputs.validate();
    if (!(c_theta_f > 0.0))
        throw std::invalid_argument("van_trees_sim_bound: smoothness constant must be > 0");
    if (inputs.sigma == 0.0) return 0.0;
    const double q = inputs.sigma * inputs.sigma / static_cast<double>(inputs.n);
    return q / (c_theta_f + q * inputs.fisher_g);
}

}  // namespace curvereg
