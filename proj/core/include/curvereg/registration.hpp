#ifndef CURVEREG_REGISTRATION_HPP
#define CURVEREG_REGISTRATION_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "curvereg/fourier.hpp"
#include "curvereg/model.hpp"
#include "curvereg/smoothing.hpp"

namespace curvereg {

/// Identifiability gauge the shifts are estimated under.
///   ZeroSum:        sum_j theta_j = 0
///   FirstCurveZero: theta_1 = 0 (align everything to the first curve)
enum class ConstraintMode { ZeroSum, FirstCurveZero };

struct OptimizerOptions {
    int grid_points_per_shift = 64;  // candidates per curve in the alternating init
    int max_iters = 500;
    double grad_tol = 1e-8;   // projected-gradient stationarity tolerance
    double step_shrink = 0.5; // backtracking factor, in (0,1)
    int multistarts = 5;      // start 0 is always the zero vector
    std::uint64_t seed = 0;
    ConstraintMode constraint = ConstraintMode::ZeroSum;

    void validate() const;
};

struct RegistrationResult {
    ShiftVector theta_hat;        // feasible under the chosen constraint
    FourierTemplate frechet_mean; // aligned coefficient average at theta_hat
    double criterion_value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> multistart_values;  // final criterion per start
};

/// Mean of the aligned coefficient rows: a_k = (1/J) sum_j c(j,k) e^{i 2 pi k theta_j}.
FourierTemplate aligned_mean(const SmoothedCurves& curves, const ShiftVector& theta);

/// Registration mismatch (1/J) sum_j sum_{|k|<=cutoff}
/// |c(j,k) e^{i 2 pi k theta_j} - a_k(theta)|^2, the Parseval form of the
/// integrated squared spread of the aligned smoothed curves. Invariant under
/// theta -> theta + c 1.
double alignment_criterion(const SmoothedCurves& curves, const ShiftVector& theta);

/// Analytic partial derivatives of alignment_criterion:
/// dM/dtheta_j = sum_k (4 pi k / J) Im(conj(a_k) c(j,k) e^{i 2 pi k theta_j}).
std::vector<double> alignment_gradient(const SmoothedCurves& curves, const ShiftVector& theta);

/// Constrained minimization of alignment_criterion: multistart projected
/// gradient descent with Armijo backtracking, preceded by an alternating
/// Procrustes-style initialization (align each curve to the current mean by
/// 1-D grid search, recompute the mean, twice). Returns the best start;
/// exact criterion ties go to the smaller ||theta||.
RegistrationResult estimate_shifts(const SmoothedCurves& curves, const OptimizerOptions& opts = {});

/// Noise-free registration criterion of the true pattern:
/// D(theta) = sum_k |c_k|^2 (1 - |(1/J) sum_j e^{i 2 pi k (theta_j - theta*_j)}|^2).
/// Nonnegative; zero at theta = theta*.
double oracle_criterion(const FourierTemplate& pattern, const ShiftVector& theta,
                        const ShiftVector& theta_star);

struct IdentifiabilityGap {
    double criterion_excess;      // D(theta) - D(centered theta*)
    double quadratic_lower_bound; // C(f,rho) (1/J) ||theta - centered theta*||^2
};

/// The two sides of the quadratic separation inequality that makes the
/// zero-sum minimizer identifiable, with C(f,rho) = 2 |c_1|^2 2 pi^2 cos(8 pi rho).
/// Requires rho < 1/16, zero-sum theta, and all shifts within [-rho, rho].
IdentifiabilityGap identifiability_gap(const FourierTemplate& pattern, double rho,
                                       const ShiftVector& theta, const ShiftVector& theta_star);

enum class ErrorMode { Raw, Centered };

/// (1/J) || estimate - target ||^2 where the target is the truth itself (Raw)
/// or its zero-sum representative (Centered).
double shift_error(const ShiftVector& estimate, const ShiftVector& truth, ErrorMode mode);

/// || estimate - pattern(. - mean_shift) ||^2_{L2} by Parseval.
double pattern_error(const FourierTemplate& estimate, const FourierTemplate& pattern,
                     double mean_shift);

}  // namespace curvereg

#endif
