#include "curvereg/registration.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "curvereg/numeric.hpp"
#include "curvereg/rng.hpp"

namespace curvereg {

namespace {

using cplx = std::complex<double>;

// Powers e^{i 2 pi k theta} for k = 0..cutoff; negative k by conjugation.
void phase_powers(double theta, int cutoff, std::vector<cplx>& out) {
    out.resize(static_cast<std::size_t>(cutoff) + 1);
    out[0] = {1.0, 0.0};
    const cplx w = std::polar(1.0, two_pi * theta);
    for (int k = 1; k <= cutoff; ++k) out[static_cast<std::size_t>(k)] = out[static_cast<std::size_t>(k - 1)] * w;
}

// a_k(theta) over k = -cutoff..cutoff stored at index k + cutoff.
void aligned_mean_coeffs(const SmoothedCurves& curves, const std::vector<double>& theta,
                         std::vector<cplx>& mean, std::vector<cplx>& scratch) {
    const int lam = curves.cutoff();
    const std::size_t J = curves.curves();
    mean.assign(static_cast<std::size_t>(2 * lam + 1), cplx{});
    for (std::size_t j = 0; j < J; ++j) {
        phase_powers(theta[j], lam, scratch);
        for (int k = -lam; k <= lam; ++k) {
            const cplx p = k >= 0 ? scratch[static_cast<std::size_t>(k)]
                                  : std::conj(scratch[static_cast<std::size_t>(-k)]);
            mean[static_cast<std::size_t>(k + lam)] += curves.coeff(j, k) * p;
        }
    }
    const double inv = 1.0 / static_cast<double>(J);
    for (auto& v : mean) v *= inv;
}

double criterion_impl(const SmoothedCurves& curves, const std::vector<double>& theta,
                      std::vector<double>* grad) {
    const int lam = curves.cutoff();
    const std::size_t J = curves.curves();
    std::vector<cplx> mean, powers;
    aligned_mean_coeffs(curves, theta, mean, powers);

    const double inv = 1.0 / static_cast<double>(J);
    double value = 0.0;
    if (grad) grad->assign(J, 0.0);
    for (std::size_t j = 0; j < J; ++j) {
        phase_powers(theta[j], lam, powers);
        double g = 0.0;
        for (int k = -lam; k <= lam; ++k) {
            const cplx p = k >= 0 ? powers[static_cast<std::size_t>(k)]
                                  : std::conj(powers[static_cast<std::size_t>(-k)]);
            const cplx aligned = curves.coeff(j, k) * p;
            const cplx bar = mean[static_cast<std::size_t>(k + lam)];
            value += std::norm(aligned - bar);
            if (grad) g += two_pi * k * std::imag(std::conj(bar) * aligned);
        }
        if (grad) (*grad)[j] = 2.0 * inv * g;
    }
    return value * inv;
}

void check_theta_size(const SmoothedCurves& curves, const ShiftVector& theta) {
    if (theta.size() != curves.curves())
        throw std::invalid_argument("shift vector length must match the number of curves");
}

void center_values(std::vector<double>& theta) {
    const double m =
        std::accumulate(theta.begin(), theta.end(), 0.0) / static_cast<double>(theta.size());
    for (double& v : theta) v -= m;
}

// The criterion has period 1 in every coordinate, so wrapping into
// [-1/2, 1/2) is exact, not an approximation.
void wrap_period(std::vector<double>& theta) {
    for (double& v : theta) v -= std::floor(v + 0.5);
}

void clamp_box(std::vector<double>& theta) {
    for (double& v : theta) v = std::clamp(v, -0.5, 0.5);
}

double max_abs_value(const std::vector<double>& theta) {
    double m = 0.0;
    for (double v : theta) m = std::max(m, std::abs(v));
    return m;
}

// Feasibility map. ZeroSum: center, clamp to [-1/2,1/2], re-center once.
// FirstCurveZero: subtract the first entry (a criterion-preserving gauge
// change), then clamp.
void project(std::vector<double>& theta, ConstraintMode mode) {
    wrap_period(theta);
    if (mode == ConstraintMode::ZeroSum) {
        center_values(theta);
        clamp_box(theta);
        center_values(theta);
    } else {
        const double first = theta[0];
        for (double& v : theta) v -= first;
        wrap_period(theta);
        clamp_box(theta);
        const double again = theta[0];
        for (double& v : theta) v -= again;
    }
}

// Representative of the final iterate that is both inside the box and in the
// constraint set. Centering after a clamp can leave the box in contrived
// configurations; fall back to the wrapped point in that case.
void canonicalize(std::vector<double>& theta, ConstraintMode mode) {
    wrap_period(theta);
    if (mode == ConstraintMode::ZeroSum) {
        std::vector<double> candidate = theta;
        center_values(candidate);
        if (max_abs_value(candidate) > 0.5) {
            clamp_box(candidate);
            center_values(candidate);
        }
        if (max_abs_value(candidate) <= 0.5) theta = std::move(candidate);
    } else {
        const double first = theta[0];
        for (double& v : theta) v -= first;
        wrap_period(theta);
        theta[0] = 0.0;
    }
}

// Projection of the gradient onto the feasible directions.
void project_gradient(std::vector<double>& g, ConstraintMode mode) {
    if (mode == ConstraintMode::ZeroSum) {
        const double m = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
        for (double& v : g) v -= m;
    } else {
        g[0] = 0.0;
    }
}

double norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

struct StartOutcome {
    std::vector<double> theta;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Procrustes-style warm start: align each curve to the current mean by grid
// search over the full period, recompute the mean, repeat.
void alternating_init(const SmoothedCurves& curves, std::vector<double>& theta, int grid_points,
                      ConstraintMode mode) {
    const int lam = curves.cutoff();
    const std::size_t J = curves.curves();
    std::vector<cplx> mean, powers;
    for (int round = 0; round < 2; ++round) {
        aligned_mean_coeffs(curves, theta, mean, powers);
        for (std::size_t j = 0; j < J; ++j) {
            double best_score = -std::numeric_limits<double>::infinity();
            double best_theta = theta[j];
            for (int g = 0; g < grid_points; ++g) {
                const double cand = -0.5 + static_cast<double>(g) / grid_points;
                phase_powers(cand, lam, powers);
                // maximizing the aligned correlation Re sum_k conj(a_k) c(j,k) e^{i2pik cand}
                double score = 0.0;
                for (int k = -lam; k <= lam; ++k) {
                    const cplx p = k >= 0 ? powers[static_cast<std::size_t>(k)]
                                          : std::conj(powers[static_cast<std::size_t>(-k)]);
                    score += std::real(std::conj(mean[static_cast<std::size_t>(k + lam)]) *
                                       curves.coeff(j, k) * p);
                }
                if (score > best_score) {
                    best_score = score;
                    best_theta = cand;
                }
            }
            theta[j] = best_theta;
        }
    }
    project(theta, mode);
}

// Upper-bound estimate of the criterion's Hessian norm, used to translate
// the floating-point resolution of criterion values into the smallest
// gradient norm whose Armijo decrease is still representable.
double curvature_scale(const SmoothedCurves& curves) {
    const int lam = curves.cutoff();
    const std::size_t J = curves.curves();
    double acc = 0.0;
    for (std::size_t j = 0; j < J; ++j)
        for (int k = -lam; k <= lam; ++k)
            acc += (two_pi * k) * (two_pi * k) * std::norm(curves.coeff(j, k));
    return 8.0 * acc / (static_cast<double>(J) * static_cast<double>(J));
}

StartOutcome run_start(const SmoothedCurves& curves, std::vector<double> theta,
                       const OptimizerOptions& opts) {
    project(theta, opts.constraint);
    alternating_init(curves, theta, opts.grid_points_per_shift, opts.constraint);

    StartOutcome out;
    std::vector<double> grad, gp, trial;
    double value = criterion_impl(curves, theta, &grad);
    double step = 1.0;
    const double curvature = curvature_scale(curves);

    for (int it = 0; it < opts.max_iters; ++it) {
        gp = grad;
        project_gradient(gp, opts.constraint);
        const double gnorm = norm2(gp);
        if (gnorm <= opts.grad_tol) {
            out.converged = true;
            break;
        }

        bool accepted = false;
        double alpha = step;
        for (int bt = 0; bt < 80; ++bt) {
            trial = theta;
            for (std::size_t j = 0; j < trial.size(); ++j) trial[j] -= alpha * gp[j];
            project(trial, opts.constraint);
            const double trial_value = criterion_impl(curves, trial, nullptr);
            if (trial_value <= value - 1e-4 * alpha * gnorm * gnorm) {
                theta = std::move(trial);
                value = trial_value;
                step = std::min(alpha * 2.0, 1e6);
                accepted = true;
                break;
            }
            alpha *= opts.step_shrink;
        }
        ++out.iterations;
        if (!accepted) {
            // Backtracking stalled: the attainable decrease ~ |g|^2 / (2L)
            // has dropped below the rounding noise of the criterion value.
            // Gradient norms under sqrt(eps (1+|M|) L) are stationary at
            // machine precision even when grad_tol is stricter.
            const double floor = std::sqrt(std::numeric_limits<double>::epsilon() *
                                           (1.0 + std::abs(value)) * (1.0 + curvature));
            out.converged = gnorm <= std::max(opts.grad_tol, floor);
            out.theta = std::move(theta);
            out.value = value;
            return out;
        }
        value = criterion_impl(curves, theta, &grad);
    }

    if (!out.converged) {
        gp = grad;
        project_gradient(gp, opts.constraint);
        out.converged = norm2(gp) <= opts.grad_tol;
    }
    out.theta = std::move(theta);
    out.value = value;
    return out;
}

}  // namespace

void OptimizerOptions::validate() const {
    if (grid_points_per_shift < 1)
        throw std::invalid_argument("OptimizerOptions: grid_points_per_shift must be >= 1");
    if (max_iters < 1) throw std::invalid_argument("OptimizerOptions: max_iters must be >= 1");
    if (!(grad_tol > 0.0)) throw std::invalid_argument("OptimizerOptions: grad_tol must be > 0");
    if (!(step_shrink > 0.0 && step_shrink < 1.0))
        throw std::invalid_argument("OptimizerOptions: step_shrink must lie in (0,1)");
    if (multistarts < 1) throw std::invalid_argument("OptimizerOptions: multistarts must be >= 1");
}

FourierTemplate aligned_mean(const SmoothedCurves& curves, const ShiftVector& theta) {
    check_theta_size(curves, theta);
    std::vector<cplx> mean, scratch;
    aligned_mean_coeffs(curves, theta.values(), mean, scratch);
    FourierTemplate out;
    const int lam = curves.cutoff();
    for (int k = -lam; k <= lam; ++k) out.set_coeff(k, mean[static_cast<std::size_t>(k + lam)]);
    return out;
}

double alignment_criterion(const SmoothedCurves& curves, const ShiftVector& theta) {
    check_theta_size(curves, theta);
    return criterion_impl(curves, theta.values(), nullptr);
}

std::vector<double> alignment_gradient(const SmoothedCurves& curves, const ShiftVector& theta) {
    check_theta_size(curves, theta);
    std::vector<double> grad;
    criterion_impl(curves, theta.values(), &grad);
    return grad;
}

RegistrationResult estimate_shifts(const SmoothedCurves& curves, const OptimizerOptions& opts) {
    opts.validate();
    const std::size_t J = curves.curves();
    if (J < 2) throw std::invalid_argument("estimate_shifts: at least two curves required");

    StartOutcome best;
    bool have_best = false;
    std::vector<double> multistart_values;
    multistart_values.reserve(static_cast<std::size_t>(opts.multistarts));

    // The criterion is exactly invariant under per-coordinate integer shifts
    // combined with a common shift, so distinct minimizers arrive in
    // equivalence classes whose values differ only by rounding. Treat values
    // within the evaluation noise floor as ties and keep the smallest-norm
    // representative.
    double energy = 0.0;
    for (std::size_t j = 0; j < J; ++j)
        for (int k = -curves.cutoff(); k <= curves.cutoff(); ++k)
            energy += std::norm(curves.coeff(j, k));
    const double tie_tol = 1e-10 * (1.0 + energy / static_cast<double>(J));

    for (int s = 0; s < opts.multistarts; ++s) {
        std::vector<double> theta(J, 0.0);
        if (s > 0) {
            CounterRng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(s)));
            for (double& v : theta) v = rng.next_unit() - 0.5;
        }
        StartOutcome outcome = run_start(curves, std::move(theta), opts);
        multistart_values.push_back(outcome.value);
        bool better = !have_best;
        if (have_best) {
            if (outcome.value < best.value - tie_tol)
                better = true;
            else if (outcome.value <= best.value + tie_tol &&
                     norm2(outcome.theta) < norm2(best.theta))
                better = true;
        }
        if (better) {
            best = std::move(outcome);
            have_best = true;
        }
    }

    canonicalize(best.theta, opts.constraint);
    ShiftVector theta_hat(best.theta);
    FourierTemplate mean = aligned_mean(curves, theta_hat);
    const double value = criterion_impl(curves, best.theta, nullptr);
    return RegistrationResult{std::move(theta_hat), std::move(mean),      value,
                              best.iterations,      best.converged,       std::move(multistart_values)};
}

double oracle_criterion(const FourierTemplate& pattern, const ShiftVector& theta,
                        const ShiftVector& theta_star) {
    if (theta.size() != theta_star.size())
        throw std::invalid_argument("oracle_criterion: length mismatch");
    const std::size_t J = theta.size();
    const double inv = 1.0 / static_cast<double>(J);
    double acc = 0.0;
    for (int k = -pattern.max_freq(); k <= pattern.max_freq(); ++k) {
        const double power = std::norm(pattern.coeff(k));
        if (power == 0.0) continue;
        cplx avg{};
        for (std::size_t j = 0; j < J; ++j)
            avg += std::polar(1.0, two_pi * k * (theta[j] - theta_star[j]));
        avg *= inv;
        // |avg| <= 1 exactly; clamp the rounding residue so D stays >= 0.
        acc += power * std::max(0.0, 1.0 - std::norm(avg));
    }
    return acc;
}

IdentifiabilityGap identifiability_gap(const FourierTemplate& pattern, double rho,
                                       const ShiftVector& theta, const ShiftVector& theta_star) {
    if (theta.size() != theta_star.size())
        throw std::invalid_argument("identifiability_gap: length mismatch");
    if (!(rho > 0.0 && rho < 1.0 / 16.0))
        throw std::invalid_argument("identifiability_gap: rho must lie in (0, 1/16)");
    if (!theta.is_centered(1e-10))
        throw std::invalid_argument("identifiability_gap: theta must have zero sum");
    if (theta.max_abs() > rho + 1e-12 || theta_star.max_abs() > rho + 1e-12)
        throw std::invalid_argument("identifiability_gap: shifts must lie within [-rho, rho]");

    const ShiftVector target = theta_star.centered();
    const double lhs = oracle_criterion(pattern, theta, theta_star) -
                       oracle_criterion(pattern, target, theta_star);

    const double c_rho = 2.0 * std::numbers::pi * std::numbers::pi *
                         std::cos(8.0 * std::numbers::pi * rho);
    const double c_f_rho = 2.0 * std::norm(pattern.coeff(1)) * c_rho;

    double dist = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) {
        const double d = theta[j] - target[j];
        dist += d * d;
    }
    return {lhs, c_f_rho * dist / static_cast<double>(theta.size())};
}

double shift_error(const ShiftVector& estimate, const ShiftVector& truth, ErrorMode mode) {
    if (estimate.size() != truth.size())
        throw std::invalid_argument("shift_error: length mismatch");
    const double offset = mode == ErrorMode::Centered ? truth.mean() : 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < estimate.size(); ++j) {
        const double d = estimate[j] - (truth[j] - offset);
        acc += d * d;
    }
    return acc / static_cast<double>(estimate.size());
}

double pattern_error(const FourierTemplate& estimate, const FourierTemplate& pattern,
                     double mean_shift) {
    return l2_distance_sq(estimate, shift_template(pattern, mean_shift));
}

}  // namespace curvereg
