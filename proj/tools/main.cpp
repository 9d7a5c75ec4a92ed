#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lqofit/fitting.hpp"
#include "lqofit/io.hpp"

namespace {

using namespace lqofit;

/// Command-line mistakes that CLI11 cannot catch declaratively (malformed
/// value syntax inside an argument). Mapped to exit code 1 like any other
/// usage error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + text + "'");
    }
    if (pos != text.size())
        throw UsageError("trailing characters in " + what + " '" + text + "'");
    return v;
}

long parse_count(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(text, &pos);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + text + "'");
    }
    if (pos != text.size() || v < 1)
        throw UsageError(what + " must be a positive integer, got '" + text + "'");
    return v;
}

/// Accepts "re" or "re,im".
Complex parse_complex_arg(const std::string& text, const std::string& what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        return Complex(parse_double(text, what), 0.0);
    return Complex(parse_double(text.substr(0, comma), what),
                   parse_double(text.substr(comma + 1), what));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Accepts either a bare JSON array of [re, im] pairs or any document with a
/// "points" key (e.g. a stored sample set).
ComplexVector points_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path + " for reading");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + std::string(e.what()));
    }
    const nlohmann::json* arr = nullptr;
    if (doc.is_array())
        arr = &doc;
    else if (doc.is_object() && doc.contains("points") && doc["points"].is_array())
        arr = &doc["points"];
    else
        throw ParseError(path + ": expected an array of [re, im] pairs or a 'points' key");
    if (arr->empty())
        throw ParseError(path + ": empty point list");
    ComplexVector points(static_cast<Eigen::Index>(arr->size()));
    for (std::size_t j = 0; j < arr->size(); ++j) {
        const auto& entry = (*arr)[j];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
            throw ParseError(path + ": point " + std::to_string(j) +
                             " is not a two-element [re, im] array");
        points[static_cast<Eigen::Index>(j)] =
            Complex(entry[0].get<double>(), entry[1].get<double>());
    }
    return points;
}

/// Point grids: "imlog:a:b:N" (N points i*10^t, t equally spaced in [a,b]),
/// "imlin:a:b:N" (i*v, v equally spaced), or "file:<path>" reusing the points
/// of a stored sample set.
ComplexVector parse_point_spec(const std::string& spec) {
    if (spec.rfind("file:", 0) == 0)
        return points_from_file(spec.substr(5));

    const bool log_grid = spec.rfind("imlog:", 0) == 0;
    const bool lin_grid = spec.rfind("imlin:", 0) == 0;
    if (!log_grid && !lin_grid)
        throw UsageError("point spec '" + spec +
                         "' not recognized (expected imlog:a:b:N, imlin:a:b:N, or file:<path>)");

    const auto parts = split(spec.substr(6), ':');
    if (parts.size() != 3)
        throw UsageError("point spec '" + spec + "' needs exactly a:b:N after the prefix");
    const double a = parse_double(parts[0], "grid start");
    const double b = parse_double(parts[1], "grid end");
    const long n = parse_count(parts[2], "grid size");

    ComplexVector points(n);
    for (long j = 0; j < n; ++j) {
        const double t = n == 1 ? a : a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
        points[j] = Complex(0.0, log_grid ? std::pow(10.0, t) : t);
    }
    return points;
}

/// Interleaves each strictly complex point with its conjugate; points on the
/// real axis stay single.
ComplexVector conjugate_closure(const ComplexVector& points) {
    std::vector<Complex> closed;
    closed.reserve(static_cast<std::size_t>(2 * points.size()));
    for (Eigen::Index j = 0; j < points.size(); ++j) {
        closed.push_back(points[j]);
        if (points[j].imag() != 0.0)
            closed.push_back(std::conj(points[j]));
    }
    ComplexVector out(static_cast<Eigen::Index>(closed.size()));
    for (std::size_t j = 0; j < closed.size(); ++j)
        out[static_cast<Eigen::Index>(j)] = closed[j];
    return out;
}

void print_warnings(const std::vector<std::string>& warnings, const std::string& path) {
    for (const auto& w : warnings)
        std::cerr << "warning: " << path << ": " << w << "\n";
}

LqoModel load_model(const std::string& path) {
    ModelReadResult loaded = read_model(path);
    print_warnings(loaded.warnings, path);
    return std::move(loaded.model);
}

SampleSet load_samples(const std::string& path) {
    SamplesReadResult loaded = read_samples(path);
    print_warnings(loaded.warnings, path);
    return std::move(loaded.samples);
}

TimeSignal read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path + " for reading");
    std::vector<double> times;
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (lineno == 1 && line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos)
            continue; // header row
        const auto cols = split(line, ',');
        if (cols.size() != 2)
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected two comma-separated columns");
        try {
            times.push_back(std::stod(cols[0]));
            values.push_back(std::stod(cols[1]));
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": cannot parse number");
        }
    }
    if (times.size() < 2)
        throw ParseError(path + ": input signal needs at least two rows");
    const double t0 = times[0];
    const double dt = times[1] - times[0];
    if (!(dt > 0.0))
        throw ParseError(path + ": time column must be strictly increasing");
    for (std::size_t k = 0; k < times.size(); ++k)
        if (std::abs(times[k] - (t0 + dt * static_cast<double>(k))) > 1e-6 * dt)
            throw ParseError(path + ": time grid is not uniform at row " +
                             std::to_string(k + 1));
    return TimeSignal(t0, dt, std::move(values));
}

void write_signal_csv(const TimeSignal& signal, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "t,y\n";
    char buf[128];
    for (std::size_t k = 0; k < signal.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", signal.time(k), signal.values()[k]);
        out << buf;
    }
    if (!out)
        throw IoError("write to " + path + " failed");
}

// --- subcommand bodies ----------------------------------------------------

struct BenchArgs {
    std::string kind = "diag";
    int order = 1;
    std::uint64_t seed = 0;
    std::string out;
};

void run_bench(const BenchArgs& args) {
    const LqoModel model = make_benchmark(parse_benchmark_kind(args.kind), args.order, args.seed);
    write_model(model, args.out);
    std::printf("bench kind=%s order=%d seed=%llu out=%s\n", args.kind.c_str(), args.order,
                static_cast<unsigned long long>(args.seed), args.out.c_str());
}

struct SampleArgs {
    std::string model;
    std::string points;
    std::string out;
    bool conj = false;
};

void run_sample(const SampleArgs& args) {
    const LqoModel model = load_model(args.model);
    ComplexVector points = parse_point_spec(args.points);
    if (args.conj)
        points = conjugate_closure(points);
    const SampleSet samples = sample_model(model, points, args.conj);
    write_samples(samples, args.out);
    std::printf("sample points=%lld h1=%s real_symmetric=%s out=%s\n",
                static_cast<long long>(samples.size()), samples.h1() ? "yes" : "no",
                samples.real_symmetric() ? "yes" : "no", args.out.c_str());
}

struct FitArgs {
    std::string samples;
    double tol = 1e-8;
    std::optional<int> nmax;
    std::string strategy = "alternating";
    std::string out_model;
    std::string out_report;
    bool strict = false;
};

int run_fit(const FitArgs& args) {
    const SampleSet samples = load_samples(args.samples);
    FitConfig config;
    config.tol = args.tol;
    config.n_max = args.nmax;
    config.weight_strategy =
        args.strategy == "h1-only" ? WeightStrategy::H1Only : WeightStrategy::Alternating;

    const FitResult result = fit_lqo_aaa(samples, config);
    if (!args.out_model.empty())
        write_model(realize(result.interpolant), args.out_model);
    if (!args.out_report.empty())
        write_report(result.report, args.out_report);

    const FitIteration& last = result.report.iterations.back();
    const bool converged = result.report.status == FitStatus::Converged;
    std::printf("fit status=%s order=%d max_err_h1=%.17g max_err_h2=%.17g iterations=%zu\n",
                converged ? "converged" : "order-capped", last.order, last.max_err_h1,
                last.max_err_h2, result.report.iterations.size());

    if (!converged || result.report.weights_nonconverged) {
        const char* reason = !converged ? "stopped at the order cap before reaching the tolerance"
                                        : "weight iteration did not reach its tolerance";
        if (args.strict)
            throw NumericalError(std::string("fit did not converge: ") + reason);
        std::cerr << "warning: " << reason << "\n";
    }
    return 0;
}

struct EvalArgs {
    std::string model;
    std::string s;
    std::string z;
};

void run_eval(const EvalArgs& args) {
    const LqoModel model = load_model(args.model);
    const Complex s = parse_complex_arg(args.s, "--s");
    Complex value;
    if (args.z.empty()) {
        value = eval_h1(model, s);
    } else {
        value = eval_h2(model, s, parse_complex_arg(args.z, "--z"));
    }
    std::printf("%.17g %.17g\n", value.real(), value.imag());
}

struct CompareArgs {
    std::string model_a;
    std::string model_b;
    std::string points;
    std::string out;
};

void run_compare(const CompareArgs& args) {
    const LqoModel a = load_model(args.model_a);
    const LqoModel b = load_model(args.model_b);
    const ComplexVector points = parse_point_spec(args.points);
    const Eigen::Index n = points.size();

    const SampleSet sa = sample_model(a, points);
    const SampleSet sb = sample_model(b, points);
    auto h1_of = [n](const SampleSet& s) {
        return s.h1() ? *s.h1() : ComplexVector(ComplexVector::Zero(n));
    };
    const ComplexVector h1a = h1_of(sa);
    const ComplexVector h1b = h1_of(sb);

    std::ofstream out(args.out);
    if (!out)
        throw IoError("cannot open " + args.out + " for writing");
    out << "kind,s_re,s_im,z_re,z_im,abs_err\n";
    char buf[256];
    for (Eigen::Index j = 0; j < n; ++j) {
        std::snprintf(buf, sizeof buf, "h1,%.17g,%.17g,,,%.17g\n", points[j].real(),
                      points[j].imag(), std::abs(h1a[j] - h1b[j]));
        out << buf;
    }
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            std::snprintf(buf, sizeof buf, "h2,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          points[j].real(), points[j].imag(), points[k].real(),
                          points[k].imag(), std::abs(sa.h2()(j, k) - sb.h2()(j, k)));
            out << buf;
        }
    if (!out)
        throw IoError("write to " + args.out + " failed");

    // Relative to the first model's data magnitudes (reference system).
    auto scale_or_one = [](double v) { return v == 0.0 ? 1.0 : v; };
    const double s1 = scale_or_one(h1a.cwiseAbs().maxCoeff());
    const double s2 = scale_or_one(sa.h2().cwiseAbs().maxCoeff());
    const Eigen::ArrayXd e1 = (h1a - h1b).cwiseAbs().array() / s1;
    const Eigen::ArrayXXd e2 = (sa.h2() - sb.h2()).cwiseAbs().array() / s2;
    std::printf("compare h1_max_rel=%.17g h1_mean_rel=%.17g h2_max_rel=%.17g h2_mean_rel=%.17g\n",
                e1.maxCoeff(), e1.mean(), e2.maxCoeff(), e2.mean());
}

struct SimulateArgs {
    std::string model;
    std::string input;
    double t1 = 1.0;
    double dt = 1e-3;
    std::string out;
};

void run_simulate(const SimulateArgs& args) {
    const LqoModel model = load_model(args.model);

    TimeSignal input = [&] {
        if (args.input.rfind("file:", 0) == 0)
            return read_signal_csv(args.input.substr(5));
        if (!(args.dt > 0.0))
            throw UsageError("--dt must be positive");
        if (!(args.t1 > 0.0))
            throw UsageError("--t1 must be positive");
        const auto steps = static_cast<std::size_t>(std::llround(args.t1 / args.dt));
        std::vector<double> u(steps + 1);
        if (args.input == "step") {
            for (auto& v : u)
                v = 1.0;
        } else if (args.input.rfind("sin:", 0) == 0) {
            const double omega = parse_double(args.input.substr(4), "sin frequency");
            for (std::size_t k = 0; k < u.size(); ++k)
                u[k] = std::sin(omega * args.dt * static_cast<double>(k));
        } else {
            throw UsageError("input spec '" + args.input +
                             "' not recognized (expected step, sin:<freq>, or file:<path>)");
        }
        return TimeSignal(0.0, args.dt, std::move(u));
    }();

    const TimeSignal output = simulate(model, input);
    write_signal_csv(output, args.out);
    std::printf("simulate samples=%zu t0=%.17g dt=%.17g out=%s\n", output.size(), output.t0(),
                output.dt(), args.out.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Data-driven rational fitting of linear systems with quadratic outputs"};
    app.require_subcommand(1);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Generate a benchmark model file");
    bench->add_option("--kind", bench_args.kind, "Benchmark family")
        ->required()
        ->check(CLI::IsMember({"diag", "random-stable", "quad-only"}));
    bench->add_option("--order", bench_args.order, "State dimension")
        ->required()
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_args.seed, "Random seed (random families)");
    bench->add_option("--out", bench_args.out, "Output model file")->required();

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "Evaluate transfer functions on a point grid");
    sample->add_option("--model", sample_args.model, "Model file")->required();
    sample->add_option("--points", sample_args.points,
                       "Grid spec: imlog:a:b:N, imlin:a:b:N, or file:<path>")
        ->required();
    sample->add_flag("--conj", sample_args.conj,
                     "Close the grid under conjugation and tag the set real-symmetric");
    sample->add_option("--out", sample_args.out, "Output sample file")->required();

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "Fit a barycentric interpolant to stored samples");
    fit->add_option("--samples", fit_args.samples, "Sample file")->required();
    fit->add_option("--tol", fit_args.tol, "Relative stopping tolerance");
    fit->add_option("--nmax", fit_args.nmax, "Order cap")->check(CLI::PositiveNumber);
    fit->add_option("--strategy", fit_args.strategy, "Weight strategy")
        ->check(CLI::IsMember({"h1-only", "alternating"}));
    fit->add_option("--out-model", fit_args.out_model, "Write the realized state-space model");
    fit->add_option("--out-report", fit_args.out_report, "Write the per-iteration report");
    fit->add_flag("--strict", fit_args.strict, "Exit with code 3 when the fit does not converge");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "Evaluate H1(s) or H2(s,z) of a model");
    eval->add_option("--model", eval_args.model, "Model file")->required();
    eval->add_option("--s", eval_args.s, "First argument, 're' or 're,im'")->required();
    eval->add_option("--z", eval_args.z, "Second argument; selects H2");

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "Tabulate transfer-function differences");
    compare->add_option("--model-a", compare_args.model_a, "Reference model file")->required();
    compare->add_option("--model-b", compare_args.model_b, "Comparison model file")->required();
    compare->add_option("--points", compare_args.points, "Grid spec (as in sample)")->required();
    compare->add_option("--out", compare_args.out, "Output error table")->required();

    SimulateArgs simulate_args;
    auto* simulate = app.add_subcommand("simulate", "Integrate the model for a given input");
    simulate->add_option("--model", simulate_args.model, "Model file")->required();
    simulate->add_option("--input", simulate_args.input,
                         "Input spec: step, sin:<freq>, or file:<path>")
        ->required();
    simulate->add_option("--t1", simulate_args.t1, "Horizon (generated inputs)");
    simulate->add_option("--dt", simulate_args.dt, "Step size (generated inputs)");
    simulate->add_option("--out", simulate_args.out, "Output time/output table")->required();

    int fit_code = 0;
    bench->callback([&] { run_bench(bench_args); });
    sample->callback([&] { run_sample(sample_args); });
    fit->callback([&] { fit_code = run_fit(fit_args); });
    eval->callback([&] { run_eval(eval_args); });
    compare->callback([&] { run_compare(compare_args); });
    simulate->callback([&] { run_simulate(simulate_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return fit_code;
}
