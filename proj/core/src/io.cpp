#include "curvereg/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace curvereg {

namespace {

using nlohmann::json;

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path);
    if (!out) io_fail(path, "cannot open for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) io_fail(path, "cannot open for reading");
    return in;
}

double parse_double(std::string_view field) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw std::runtime_error("bad numeric field: " + std::string(field));
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

void reject_unknown_keys(const json& object, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        bool ok = false;
        for (const char* name : allowed)
            if (key == name) ok = true;
        if (!ok) throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_records_csv(const std::vector<ErrorRecord>& records,
                       const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "scenario,n,J,rep,seed,shift_err,pattern_err,criterion,converged,ms\n";
    for (const auto& r : records) {
        out << r.scenario << ',' << r.n << ',' << r.j_count << ',' << r.rep << ',' << r.seed << ','
            << format_double(r.shift_err) << ',' << format_double(r.pattern_err) << ','
            << format_double(r.criterion) << ',' << (r.converged ? 1 : 0) << ','
            << format_double(r.ms) << '\n';
    }
    if (!out) io_fail(path, "write failed");
}

std::vector<ErrorRecord> read_records_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) io_fail(path, "missing header");
    std::vector<ErrorRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 10) io_fail(path, "bad record line: " + line);
        ErrorRecord r;
        r.scenario = f[0];
        r.n = static_cast<int>(parse_double(f[1]));
        r.j_count = static_cast<int>(parse_double(f[2]));
        r.rep = static_cast<int>(parse_double(f[3]));
        r.seed = std::stoull(f[4]);
        r.shift_err = parse_double(f[5]);
        r.pattern_err = parse_double(f[6]);
        r.criterion = parse_double(f[7]);
        r.converged = f[8] == "1";
        r.ms = parse_double(f[9]);
        records.push_back(std::move(r));
    }
    return records;
}

void write_summary_csv(const std::vector<CellSummary>& summaries,
                       const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "scenario,n,J,metric,count,min,q1,median,q3,max\n";
    const auto row = [&out](const CellSummary& s, const char* metric, const Quartiles& q) {
        out << s.scenario << ',' << s.n << ',' << s.j_count << ',' << metric << ',' << s.count
            << ',' << format_double(q.min) << ',' << format_double(q.q1) << ','
            << format_double(q.median) << ',' << format_double(q.q3) << ','
            << format_double(q.max) << '\n';
    };
    for (const auto& s : summaries) {
        row(s, "shift_err", s.shift_err);
        row(s, "pattern_err", s.pattern_err);
    }
    if (!out) io_fail(path, "write failed");
}

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "j";
    for (int i = 1; i <= data.grid.size(); ++i) out << ",t_" << i;
    out << '\n';
    for (std::size_t j = 0; j < data.curves; ++j) {
        out << (j + 1);
        for (int i = 0; i < data.grid.size(); ++i) out << ',' << format_double(data.at(j, i));
        out << '\n';
    }
    if (!out) io_fail(path, "write failed");
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) io_fail(path, "missing header");
    const auto header = split_csv_line(line);
    if (header.size() < 4 || header[0] != "j") io_fail(path, "bad dataset header");
    const int n = static_cast<int>(header.size()) - 1;

    std::vector<double> y;
    std::size_t curves = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (static_cast<int>(f.size()) != n + 1) io_fail(path, "bad dataset row: " + line);
        for (int i = 1; i <= n; ++i) y.push_back(parse_double(f[static_cast<std::size_t>(i)]));
        ++curves;
    }
    if (curves == 0) io_fail(path, "dataset has no curves");
    return Dataset{DesignGrid(n), curves, std::move(y), std::nullopt};
}

FourierTemplate TruthSidecar::pattern() const {
    std::vector<std::pair<int, std::complex<double>>> pairs;
    pairs.reserve(template_coeffs.size());
    for (const auto& [k, re, im] : template_coeffs) pairs.emplace_back(k, std::complex<double>{re, im});
    return FourierTemplate(pairs);
}

void write_truth_sidecar(const TruthSidecar& truth, const std::filesystem::path& path) {
    json j;
    j["schema"] = "curvereg-dataset-truth-v1";
    j["scenario"] = truth.scenario;
    j["sigma"] = truth.sigma;
    j["seed"] = truth.seed;
    j["density"] = truth.density;
    j["varsigma"] = truth.varsigma;
    j["phi"] = truth.phi;
    j["theta_star"] = truth.shifts;
    json coeffs = json::array();
    for (const auto& [k, re, im] : truth.template_coeffs) coeffs.push_back({k, re, im});
    j["template"] = coeffs;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) io_fail(path, "write failed");
}

TruthSidecar read_truth_sidecar(const std::filesystem::path& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        io_fail(path, e.what());
    }
    TruthSidecar truth;
    truth.scenario = j.value("scenario", "SIM");
    truth.sigma = j.value("sigma", 0.0);
    truth.seed = j.value("seed", std::uint64_t{0});
    truth.density = j.value("density", "");
    truth.varsigma = j.value("varsigma", 0.0);
    truth.phi = j.value("phi", 0.0);
    truth.shifts = j.at("theta_star").get<std::vector<double>>();
    for (const auto& c : j.at("template"))
        truth.template_coeffs.emplace_back(c.at(0).get<int>(), c.at(1).get<double>(),
                                           c.at(2).get<double>());
    return truth;
}

void write_result_json(const RegistrationResult& result, const std::optional<TruthSidecar>& truth,
                       const std::filesystem::path& path) {
    json j;
    j["schema"] = "curvereg-registration-v1";
    j["theta_hat"] = result.theta_hat.values();
    json coeffs = json::array();
    const auto& mean = result.frechet_mean;
    for (int k = -mean.max_freq(); k <= mean.max_freq(); ++k) {
        const auto c = mean.coeff(k);
        coeffs.push_back({k, c.real(), c.imag()});
    }
    j["frechet_mean"] = coeffs;
    j["criterion_value"] = result.criterion_value;
    j["iterations"] = result.iterations;
    j["converged"] = result.converged;
    j["multistart_values"] = result.multistart_values;
    if (truth) {
        const ShiftVector star{truth->shifts};
        j["shift_error_centered"] =
            shift_error(result.theta_hat, star, ErrorMode::Centered);
        j["pattern_error_centered"] = pattern_error(result.frechet_mean, truth->pattern(),
                                                    star.mean());
    }
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) io_fail(path, "write failed");
}

ExperimentConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");

    reject_unknown_keys(j,
                        {"scenario", "template", "sigma", "varsigma", "phi", "density", "lambda",
                         "n_list", "J_list", "repetitions", "seed", "optimizer", "output_dir"},
                        "config");

    ExperimentConfig config = ExperimentConfig::defaults(
        scenario_from_string(j.value("scenario", std::string("SIM"))));

    config.template_name = j.value("template", config.template_name);
    if (j.contains("sigma")) config.sigma = j.at("sigma").get<double>();
    if (j.contains("varsigma")) config.varsigma = j.at("varsigma").get<double>();
    if (j.contains("phi")) config.phi = j.at("phi").get<double>();
    if (j.contains("lambda")) config.cutoff = j.at("lambda").get<int>();
    if (j.contains("n_list")) config.n_list = j.at("n_list").get<std::vector<int>>();
    if (j.contains("J_list")) config.j_list = j.at("J_list").get<std::vector<int>>();
    if (j.contains("repetitions")) config.repetitions = j.at("repetitions").get<int>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir")) config.output_dir = j.at("output_dir").get<std::string>();

    if (j.contains("density")) {
        const auto& d = j.at("density");
        if (!d.is_object()) throw std::invalid_argument("config density must be an object");
        reject_unknown_keys(d, {"kind", "half_width"}, "config density");
        config.density.kind = density_kind_from_string(d.at("kind").get<std::string>());
        config.density.half_width = d.at("half_width").get<double>();
    }

    if (j.contains("optimizer")) {
        const auto& o = j.at("optimizer");
        if (!o.is_object()) throw std::invalid_argument("config optimizer must be an object");
        reject_unknown_keys(o,
                            {"grid_points_per_shift", "max_iters", "grad_tol", "step_shrink",
                             "multistarts", "seed", "constraint"},
                            "config optimizer");
        auto& opt = config.optimizer;
        if (o.contains("grid_points_per_shift"))
            opt.grid_points_per_shift = o.at("grid_points_per_shift").get<int>();
        if (o.contains("max_iters")) opt.max_iters = o.at("max_iters").get<int>();
        if (o.contains("grad_tol")) opt.grad_tol = o.at("grad_tol").get<double>();
        if (o.contains("step_shrink")) opt.step_shrink = o.at("step_shrink").get<double>();
        if (o.contains("multistarts")) opt.multistarts = o.at("multistarts").get<int>();
        if (o.contains("seed")) opt.seed = o.at("seed").get<std::uint64_t>();
        if (o.contains("constraint")) {
            const auto c = o.at("constraint").get<std::string>();
            if (c == "zero-sum")
                opt.constraint = ConstraintMode::ZeroSum;
            else if (c == "first-curve-zero")
                opt.constraint = ConstraintMode::FirstCurveZero;
            else
                throw std::invalid_argument("unknown optimizer constraint: " + c);
        }
    }

    config.validate();
    return config;
}

ExperimentConfig read_config_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::string config_to_json(const ExperimentConfig& config) {
    json j;
    j["scenario"] = to_string(config.scenario);
    j["template"] = config.template_name;
    j["sigma"] = config.sigma;
    j["varsigma"] = config.varsigma;
    j["phi"] = config.phi;
    j["density"] = {{"kind", to_string(config.density.kind)},
                    {"half_width", config.density.half_width}};
    j["lambda"] = config.cutoff;
    j["n_list"] = config.n_list;
    j["J_list"] = config.j_list;
    j["repetitions"] = config.repetitions;
    j["seed"] = config.seed;
    j["optimizer"] = {
        {"grid_points_per_shift", config.optimizer.grid_points_per_shift},
        {"max_iters", config.optimizer.max_iters},
        {"grad_tol", config.optimizer.grad_tol},
        {"step_shrink", config.optimizer.step_shrink},
        {"multistarts", config.optimizer.multistarts},
        {"seed", config.optimizer.seed},
        {"constraint",
         config.optimizer.constraint == ConstraintMode::ZeroSum ? "zero-sum" : "first-curve-zero"},
    };
    j["output_dir"] = config.output_dir;
    return j.dump(2);
}

}  // namespace curvereg
