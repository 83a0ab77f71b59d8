#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvereg/bounds.hpp"
#include "curvereg/experiment.hpp"
#include "curvereg/io.hpp"
#include "curvereg/numeric.hpp"
#include "curvereg/registration.hpp"
#include "curvereg/rng.hpp"
#include "curvereg/smoothing.hpp"
#include "curvereg/svg.hpp"
#include "curvereg/synth.hpp"

namespace fs = std::filesystem;
using namespace curvereg;

namespace {

constexpr std::uint64_t kShiftStream = 1;
constexpr std::uint64_t kProcessStream = 2;
constexpr std::uint64_t kNoiseStream = 3;

struct SimulateArgs {
    std::string scenario = "SIM";
    std::string template_name = "default";
    int curves = 20;
    int n = 512;
    double sigma = 2.0;
    double varsigma = 4.0;
    double phi = 4.0;
    std::string density = "uniform:0.2";
    std::uint64_t seed = 1;
    std::string out = "dataset";
};

int cmd_simulate(const SimulateArgs& args) {
    const Scenario scenario = scenario_from_string(args.scenario);
    const auto pattern = builtin_template(args.template_name);
    const auto density = parse_density_spec(args.density);
    const DesignGrid grid(args.n);
    const std::size_t J = static_cast<std::size_t>(args.curves);

    const auto shifts = sample_shifts(J, density, derive_seed(args.seed, kShiftStream));
    std::vector<ProcessRealization> processes;
    switch (scenario) {
        case Scenario::Sim:
            processes = zero_processes(J);
            break;
        case Scenario::Stationary:
            processes = sample_stationary_processes({args.varsigma, args.phi}, J, args.n / 2,
                                                    derive_seed(args.seed, kProcessStream));
            break;
        case Scenario::Nonstationary:
            processes = sample_nonstationary_processes({args.varsigma, default_amplitude_profile()},
                                                       J, derive_seed(args.seed, kProcessStream));
            break;
    }
    const auto data = generate_dataset(pattern, shifts, processes, args.sigma, grid,
                                       derive_seed(args.seed, kNoiseStream));

    const fs::path csv = args.out + ".csv";
    const fs::path sidecar = args.out + ".json";
    write_dataset_csv(data, csv);

    TruthSidecar truth;
    truth.shifts = shifts.values();
    truth.sigma = args.sigma;
    truth.seed = args.seed;
    truth.scenario = args.scenario;
    truth.density = density.to_flag_string();
    truth.varsigma = args.varsigma;
    truth.phi = args.phi;
    for (int k = -pattern.max_freq(); k <= pattern.max_freq(); ++k) {
        const auto c = pattern.coeff(k);
        if (c != std::complex<double>{}) truth.template_coeffs.emplace_back(k, c.real(), c.imag());
    }
    write_truth_sidecar(truth, sidecar);

    std::cout << "wrote " << csv.string() << " (" << J << " curves x " << args.n << " points) and "
              << sidecar.string() << "\n";
    return 0;
}

struct EstimateArgs {
    std::string data;
    std::string truth;
    int cutoff = 7;
    std::string out = "result.json";
    OptimizerOptions opts{};
    std::string constraint = "zero-sum";
};

int cmd_estimate(const EstimateArgs& args) {
    auto opts = args.opts;
    if (args.constraint == "zero-sum")
        opts.constraint = ConstraintMode::ZeroSum;
    else if (args.constraint == "first-curve-zero")
        opts.constraint = ConstraintMode::FirstCurveZero;
    else
        throw std::invalid_argument("unknown constraint: " + args.constraint);

    const auto data = read_dataset_csv(args.data);
    const auto smoothed = dft_coeffs(data, args.cutoff);
    const auto fit = estimate_shifts(smoothed, opts);

    std::optional<TruthSidecar> truth;
    if (!args.truth.empty()) truth = read_truth_sidecar(args.truth);
    write_result_json(fit, truth, args.out);

    std::cout << "criterion " << format_double(fit.criterion_value) << ", "
              << (fit.converged ? "converged" : "NOT converged") << " after " << fit.iterations
              << " iterations";
    if (truth) {
        const ShiftVector star{truth->shifts};
        std::cout << ", shift_err " << format_double(shift_error(fit.theta_hat, star, ErrorMode::Centered));
    }
    std::cout << "; wrote " << args.out << "\n";
    return 0;
}

struct BoundArgs {
    int n = 512;
    double sigma = 2.0;
    std::string density = "raised-cosine:0.2";
    std::string template_name = "default";
    double varsigma = 0.0;
    double phi = 0.0;
};

int cmd_bound(const BoundArgs& args) {
    const auto pattern = builtin_template(args.template_name);
    const auto density = parse_density_spec(args.density);
    BoundInputs inputs;
    inputs.n = args.n;
    inputs.sigma = args.sigma;
    inputs.sup_deriv = sup_derivative(pattern);
    inputs.fisher_g = fisher_info(density);
    const bool stationary = args.varsigma > 0.0 && args.phi > 0.0;
    if (stationary) {
        inputs.mode = BoundMode::Stationary;
        inputs.gamma = StationaryCovSpec{args.varsigma, args.phi}.abs_integral();
    }
    std::cout << format_double(van_trees_shift_bound(inputs)) << "\n";
    if (inputs.gamma) std::cout << "gamma " << format_double(*inputs.gamma) << "\n";
    return 0;
}

struct ExperimentArgs {
    std::string config;
    std::string out_dir;
    int threads = 0;
    bool no_timing = false;
};

int cmd_experiment(const ExperimentArgs& args) {
    ExperimentConfig config = read_config_json(args.config);
    fs::path dir = args.out_dir.empty() ? fs::path(config.output_dir) : fs::path(args.out_dir);
    if (dir.empty()) {
        if (const char* env = std::getenv("CURVEREG_OUT_DIR")) dir = env;
    }
    if (dir.empty()) dir = ".";

    RunOptions run;
    run.threads = args.threads;
    run.measure_time = !args.no_timing;
    const auto records = run_experiment(config, run);
    const auto summaries = summarize(records);

    const std::string stem = to_string(config.scenario);
    const auto records_path = dir / (stem + "_records.csv");
    const auto summary_path = dir / (stem + "_summary.csv");
    write_records_csv(records, records_path);
    write_summary_csv(summaries, summary_path);
    const auto shift_svg = dir / (stem + "_shift_err.svg");
    const auto pattern_svg = dir / (stem + "_pattern_err.svg");
    emit_boxplot_svg(summaries, "shift_err", shift_svg);
    emit_boxplot_svg(summaries, "pattern_err", pattern_svg);

    // Companion lower bounds. The prior Fisher information needs a
    // differentiable density, so a uniform study density is swapped for the
    // raised-cosine of the same support; the density column records what was
    // actually used.
    const ShiftDensitySpec bound_density{DensityKind::RaisedCosine, config.density.half_width};
    const auto pattern = builtin_template(config.template_name);
    BoundInputs inputs;
    inputs.sigma = config.sigma;
    inputs.sup_deriv = sup_derivative(pattern);
    inputs.fisher_g = fisher_info(bound_density);
    const auto bounds_path = dir / (stem + "_bounds.csv");
    {
        std::ofstream bounds(bounds_path);
        if (!bounds) throw std::runtime_error(bounds_path.string() + ": cannot open for writing");
        bounds << "scenario,n,sigma,density,sup_deriv,fisher_info,bound\n";
        for (int n : config.n_list) {
            inputs.n = n;
            bounds << stem << ',' << n << ',' << format_double(config.sigma) << ','
                   << bound_density.to_flag_string() << ',' << format_double(inputs.sup_deriv)
                   << ',' << format_double(inputs.fisher_g) << ','
                   << format_double(van_trees_shift_bound(inputs)) << '\n';
        }
    }

    std::cout << "ran " << records.size() << " cells of scenario " << stem << "\n";
    for (const auto& s : summaries) {
        std::cout << "  n=" << s.n << " J=" << s.j_count
                  << " median shift_err=" << format_double(s.shift_err.median)
                  << " median pattern_err=" << format_double(s.pattern_err.median) << "\n";
    }
    std::cout << "wrote " << records_path.string() << ", " << summary_path.string() << ", "
              << shift_svg.string() << ", " << pattern_svg.string() << ", "
              << bounds_path.string() << "\n";
    return 0;
}

// --- selftest ----------------------------------------------------------

struct SelfTest {
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "ok   " : "FAIL ") << name;
        if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

int cmd_selftest() {
    SelfTest t;
    CounterRng rng(20240809);

    {
        bool ok = true;
        for (int trial = 0; trial < 10 && ok; ++trial) {
            FourierTemplate f;
            f.set_coeff(0, rng.next_gaussian());
            for (int k = 1; k <= 5; ++k) {
                const std::complex<double> c{rng.next_gaussian(), rng.next_gaussian()};
                f.set_coeff(k, c);
                f.set_coeff(-k, std::conj(c));
            }
            const double quad =
                trapezoid([&f](double x) { return f.value(x) * f.value(x); }, 0.0, 1.0, 40);
            ok = std::abs(quad - f.norm_sq()) <= 1e-8 * std::max(1.0, f.norm_sq());
        }
        t.check("parseval-quadrature", ok);
    }
    {
        bool ok = true;
        const auto f = builtin_template("default");
        for (int trial = 0; trial < 10 && ok; ++trial) {
            const double a = rng.next_unit() - 0.5, b = rng.next_unit() - 0.5;
            ok = l2_distance_sq(shift_template(shift_template(f, a), b), shift_template(f, a + b)) <
                 1e-24;
        }
        t.check("shift-group-action", ok);
    }
    {
        const auto f = builtin_template("default");
        const DesignGrid grid(256);
        const auto star = sample_shifts(5, {DensityKind::Uniform, 0.2}, 7);
        const auto data = generate_dataset(f, star, zero_processes(5), 0.0, grid, 8);
        const auto sc = dft_coeffs(data, 7);
        bool ok = true;
        for (std::size_t j = 0; j < 5 && ok; ++j)
            for (int k = -7; k <= 7 && ok; ++k) {
                const auto expected = f.coeff(k) * std::polar(1.0, -two_pi * k * star[j]);
                ok = std::abs(sc.coeff(j, k) - expected) < 1e-10;
            }
        t.check("dft-band-limited-exactness", ok);
    }
    {
        bool ok = true;
        const DesignGrid grid(128);
        for (int trial = 0; trial < 10 && ok; ++trial) {
            SmoothedCurves sc(3, 4, grid);
            for (std::size_t j = 0; j < 3; ++j) {
                sc.set_coeff(j, 0, {rng.next_gaussian(), 0.0});
                for (int k = 1; k <= 4; ++k) {
                    const std::complex<double> c{rng.next_gaussian(), rng.next_gaussian()};
                    sc.set_coeff(j, k, c);
                    sc.set_coeff(j, -k, std::conj(c));
                }
            }
            std::vector<double> theta{rng.next_unit() - 0.5, rng.next_unit() - 0.5,
                                      rng.next_unit() - 0.5};
            const ShiftVector tv(theta);
            // quadrature of the integral form on 80 points
            const std::size_t points = 80;
            double integral = 0.0;
            for (std::size_t p = 0; p < points; ++p) {
                const double x = static_cast<double>(p) / points;
                double mean = 0.0;
                double vals[3];
                for (std::size_t j = 0; j < 3; ++j) {
                    vals[j] = sc.eval(j, x + theta[j]);
                    mean += vals[j];
                }
                mean /= 3.0;
                for (double v : vals) integral += (v - mean) * (v - mean);
            }
            integral /= static_cast<double>(points) * 3.0;
            const double direct = alignment_criterion(sc, tv);
            ok = std::abs(direct - integral) <= 1e-8 * std::max(1.0, direct);

            if (ok) {
                const auto grad = alignment_gradient(sc, tv);
                for (std::size_t j = 0; j < 3 && ok; ++j) {
                    auto up = theta, dn = theta;
                    up[j] += 1e-6;
                    dn[j] -= 1e-6;
                    const double fd = (alignment_criterion(sc, ShiftVector(up)) -
                                       alignment_criterion(sc, ShiftVector(dn))) /
                                      2e-6;
                    ok = std::abs(grad[j] - fd) <= 1e-5 * std::max({1.0, std::abs(fd)});
                }
            }
        }
        t.check("criterion-quadrature-and-gradient", ok);
    }
    {
        const auto f = builtin_template("default");
        const DesignGrid grid(128);
        bool ok = true;
        for (int trial = 0; trial < 10 && ok; ++trial) {
            std::vector<double> star_v(4), theta_v(4);
            for (auto& v : star_v) v = 0.2 * (2.0 * rng.next_unit() - 1.0);
            for (auto& v : theta_v) v = 0.2 * (2.0 * rng.next_unit() - 1.0);
            const ShiftVector star(star_v), theta(theta_v);
            const auto ideal = ideal_coefficients(f, star, 7, grid);
            ok = std::abs(alignment_criterion(ideal, theta) - oracle_criterion(f, theta, star)) <
                 1e-10;
        }
        t.check("ideal-coefficient-consistency", ok);
    }
    {
        const auto f = builtin_template("default");
        bool ok = true;
        for (std::size_t J : {2u, 5u, 20u}) {
            for (int trial = 0; trial < 70 && ok; ++trial) {
                std::vector<double> theta(J), star(J);
                for (auto& v : theta) v = 0.05 * (2.0 * rng.next_unit() - 1.0);
                for (auto& v : star) v = 0.05 * (2.0 * rng.next_unit() - 1.0);
                double mean = 0.0;
                for (double v : theta) mean += v;
                for (double& v : theta) v -= mean / static_cast<double>(J);
                if (ShiftVector(theta).max_abs() > 0.05) continue;
                const auto gap = identifiability_gap(f, 0.05, ShiftVector(theta), ShiftVector(star));
                ok = gap.criterion_excess >= gap.quadratic_lower_bound;
            }
        }
        t.check("identifiability-inequality", ok);
    }
    {
        const auto f = builtin_template("default");
        const DesignGrid grid(256);
        const auto star = sample_shifts(6, {DensityKind::Uniform, 0.1}, 99);
        const auto data = generate_dataset(f, star, zero_processes(6), 0.0, grid, 100);
        const auto fit = estimate_shifts(dft_coeffs(data, 7));
        t.check("zero-noise-recovery",
                fit.converged && shift_error(fit.theta_hat, star, ErrorMode::Centered) <= 1e-8);
    }
    {
        bool scaling = false, rejects = false;
        const double i1 = fisher_info({DensityKind::RaisedCosine, 0.1});
        const double i2 = fisher_info({DensityKind::RaisedCosine, 0.2});
        scaling = std::abs(i1 / i2 - 4.0) <= 1e-6 * 4.0;
        try {
            fisher_info({DensityKind::Uniform, 0.2});
        } catch (const std::invalid_argument&) {
            rejects = true;
        }
        t.check("fisher-scaling-and-uniform-rejection", scaling && rejects);
    }
    {
        bool ok = true;
        double prev = 1e300;
        for (int n = 32; n <= 4096; n <<= 1) {
            const double b = van_trees_shift_bound({n, 2.0, 3.0, 50.0});
            ok = ok && b < prev && b > 0.0;
            prev = b;
        }
        t.check("bound-monotone-in-n", ok);
    }
    {
        const auto dir = fs::temp_directory_path() / "curvereg-selftest";
        fs::create_directories(dir);
        std::vector<ErrorRecord> records(3);
        for (int i = 0; i < 3; ++i) {
            records[static_cast<std::size_t>(i)].scenario = "SIM";
            records[static_cast<std::size_t>(i)].rep = i;
            records[static_cast<std::size_t>(i)].shift_err = 0.125 * (i + 1);
            records[static_cast<std::size_t>(i)].seed = 42u + static_cast<unsigned>(i);
        }
        const auto path = dir / "roundtrip.csv";
        write_records_csv(records, path);
        const auto back = read_records_csv(path);
        bool ok = back.size() == records.size();
        for (std::size_t i = 0; ok && i < back.size(); ++i)
            ok = back[i].shift_err == records[i].shift_err && back[i].seed == records[i].seed;
        t.check("records-csv-round-trip", ok);
    }

    if (t.failures == 0) {
        std::cout << "all checks passed\n";
        return 0;
    }
    std::cerr << t.failures << " check(s) failed\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frechet-mean registration of randomly shifted curves"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset (CSV + JSON)");
    simulate->add_option("--scenario", sim.scenario, "SIM | stationary | nonstationary");
    simulate->add_option("--template", sim.template_name, "Built-in template name");
    simulate->add_option("--J,--curves", sim.curves, "Number of curves")->check(CLI::Range(1, 1 << 20));
    simulate->add_option("--n", sim.n, "Design points per curve")->check(CLI::Range(3, 1 << 24));
    simulate->add_option("--sigma", sim.sigma, "Measurement noise level");
    simulate->add_option("--varsigma", sim.varsigma, "Perturbation scale");
    simulate->add_option("--phi", sim.phi, "Stationary covariance shape");
    simulate->add_option("--density", sim.density, "Shift prior, kind:half_width");
    simulate->add_option("--seed", sim.seed, "Master seed");
    simulate->add_option("--out", sim.out, "Output path prefix");

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Register curves from a dataset CSV");
    estimate->add_option("--data", est.data, "Dataset CSV")->required();
    estimate->add_option("--truth", est.truth, "Truth sidecar JSON (enables error reporting)");
    estimate->add_option("--lambda", est.cutoff, "Spectral cutoff");
    estimate->add_option("--out", est.out, "Result JSON path");
    estimate->add_option("--multistarts", est.opts.multistarts, "Optimizer starts");
    estimate->add_option("--max-iters", est.opts.max_iters, "Iteration budget");
    estimate->add_option("--grad-tol", est.opts.grad_tol, "Stationarity tolerance");
    estimate->add_option("--grid-points", est.opts.grid_points_per_shift,
                         "Alternating-init candidates per curve");
    estimate->add_option("--step-shrink", est.opts.step_shrink, "Backtracking factor");
    estimate->add_option("--opt-seed", est.opts.seed, "Multistart seed");
    estimate->add_option("--constraint", est.constraint, "zero-sum | first-curve-zero");

    BoundArgs bnd;
    auto* bound = app.add_subcommand("bound", "Print the van Trees shift lower bound");
    bound->add_option("--n", bnd.n, "Design points")->check(CLI::Range(1, 1 << 24));
    bound->add_option("--sigma", bnd.sigma, "Noise level");
    bound->add_option("--density", bnd.density, "Shift prior, kind:half_width");
    bound->add_option("--template", bnd.template_name, "Built-in template name");
    bound->add_option("--varsigma", bnd.varsigma, "Stationary scale (enables gamma output)");
    bound->add_option("--phi", bnd.phi, "Stationary shape (enables gamma output)");

    ExperimentArgs exp;
    auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo study from a config");
    experiment->add_option("--config", exp.config, "Experiment config JSON")->required();
    experiment->add_option("--out-dir", exp.out_dir,
                           "Output directory (default: config, then $CURVEREG_OUT_DIR, then .)");
    experiment->add_option("--threads", exp.threads, "Worker threads (0 = hardware)");
    experiment->add_flag("--no-timing", exp.no_timing,
                         "Zero the ms column for byte-reproducible output");

    auto* selftest = app.add_subcommand("selftest", "Run the built-in property checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 1;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(sim);
        if (estimate->parsed()) return cmd_estimate(est);
        if (bound->parsed()) return cmd_bound(bnd);
        if (experiment->parsed()) return cmd_experiment(exp);
        if (selftest->parsed()) return cmd_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
