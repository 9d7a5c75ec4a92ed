#include "lqofit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <Eigen/LU>

#include "json.hpp"

namespace lqofit {

namespace {

using nlohmann::ordered_json;

std::string format_complex(Complex v) {
    std::ostringstream out;
    out << "(" << v.real() << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i)";
    return out.str();
}

ordered_json encode(Complex v) {
    return ordered_json::array({v.real(), v.imag()});
}

ordered_json encode(const ComplexVector& v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(encode(v[i]));
    return out;
}

ordered_json encode_row_major(const ComplexMatrix& m) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out.push_back(encode(m(i, j)));
    return out;
}

Complex decode_complex(const ordered_json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("field '" + field + "': expected a two-element [re, im] array");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

ComplexVector decode_vector(const ordered_json& j, const std::string& field) {
    if (!j.is_array())
        throw ParseError("field '" + field + "': expected an array");
    ComplexVector out(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out[static_cast<Eigen::Index>(i)] = decode_complex(j[i], field);
    return out;
}

ComplexMatrix reshape_row_major(const ComplexVector& flat, Eigen::Index rows,
                                Eigen::Index cols) {
    ComplexMatrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            out(i, j) = flat[i * cols + j];
    return out;
}

ordered_json parse_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string() + " for reading");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

const ordered_json& require_key(const ordered_json& doc, const std::string& key) {
    auto it = doc.find(key);
    if (it == doc.end())
        throw ParseError("missing required key '" + key + "'");
    return *it;
}

void collect_unknown_keys(const ordered_json& doc, std::initializer_list<const char*> known,
                          std::vector<std::string>& warnings) {
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        bool recognized = false;
        for (const char* k : known)
            if (key == k)
                recognized = true;
        if (!recognized)
            warnings.push_back("ignoring unknown key '" + key + "'");
    }
}

void write_document(const ordered_json& doc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out)
        throw IoError("write to " + path.string() + " failed");
}

} // namespace

void write_model(const LqoModel& model, const std::filesystem::path& path) {
    ordered_json doc;
    doc["dim"] = model.dim();
    doc["A"] = encode_row_major(model.A());
    doc["b"] = encode(model.b());
    doc["c"] = encode(model.c());
    doc["M"] = encode_row_major(model.M());
    write_document(doc, path);
}

ModelReadResult read_model(const std::filesystem::path& path) {
    const ordered_json doc = parse_document(path);
    if (!doc.is_object())
        throw ParseError(path.string() + ": model document must be an object");

    std::vector<std::string> warnings;
    collect_unknown_keys(doc, {"dim", "A", "b", "c", "M"}, warnings);

    const ordered_json& dim_field = require_key(doc, "dim");
    if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1)
        throw ParseError("field 'dim': expected a positive integer");
    const Eigen::Index n = dim_field.get<Eigen::Index>();

    auto vector_field = [&](const char* name) {
        ComplexVector v = decode_vector(require_key(doc, name), name);
        if (v.size() != n)
            throw DimensionMismatch(std::string("field '") + name + "' has " +
                                    std::to_string(v.size()) + " entries, expected " +
                                    std::to_string(n));
        return v;
    };
    auto matrix_field = [&](const char* name) {
        ComplexVector flat = decode_vector(require_key(doc, name), name);
        if (flat.size() != n * n)
            throw DimensionMismatch(std::string("field '") + name + "' has " +
                                    std::to_string(flat.size()) + " entries, expected " +
                                    std::to_string(n * n));
        return reshape_row_major(flat, n, n);
    };

    const ComplexMatrix A = matrix_field("A");
    const ComplexVector b = vector_field("b");
    const ComplexVector c = vector_field("c");
    const ComplexMatrix M = matrix_field("M");

    LqoModel model(A, b, c, M); // symmetrizes M, records the asymmetry
    const double asymmetry = model.m_asymmetry();
    return ModelReadResult{std::move(model), asymmetry, std::move(warnings)};
}

void write_samples(const SampleSet& samples, const std::filesystem::path& path) {
    ordered_json doc;
    doc["points"] = encode(samples.points());
    if (samples.h1())
        doc["h1"] = encode(*samples.h1());
    doc["h2"] = encode_row_major(samples.h2());
    if (samples.real_symmetric())
        doc["real_symmetric"] = true;
    write_document(doc, path);
}

SamplesReadResult read_samples(const std::filesystem::path& path) {
    const ordered_json doc = parse_document(path);
    if (!doc.is_object())
        throw ParseError(path.string() + ": samples document must be an object");

    std::vector<std::string> warnings;
    collect_unknown_keys(doc, {"points", "h1", "h2", "real_symmetric"}, warnings);

    ComplexVector points = decode_vector(require_key(doc, "points"), "points");
    const Eigen::Index n = points.size();

    std::optional<ComplexVector> h1;
    if (auto it = doc.find("h1"); it != doc.end()) {
        h1 = decode_vector(*it, "h1");
        if (h1->size() != n)
            throw DimensionMismatch("field 'h1' has " + std::to_string(h1->size()) +
                                    " entries, expected " + std::to_string(n));
    }

    const ComplexVector h2_flat = decode_vector(require_key(doc, "h2"), "h2");
    if (h2_flat.size() != n * n)
        throw GridMismatch("field 'h2' has " + std::to_string(h2_flat.size()) +
                           " entries, expected " + std::to_string(n) + "x" +
                           std::to_string(n) + " = " + std::to_string(n * n));
    ComplexMatrix h2 = reshape_row_major(h2_flat, n, n);

    bool real_symmetric = false;
    if (auto it = doc.find("real_symmetric"); it != doc.end()) {
        if (!it->is_boolean())
            throw ParseError("field 'real_symmetric': expected a boolean");
        real_symmetric = it->get<bool>();
    }

    SampleSet samples(std::move(points), std::move(h1), std::move(h2), real_symmetric);
    return SamplesReadResult{std::move(samples), std::move(warnings)};
}

SampleSet sample_model(const LqoModel& model, const ComplexVector& points,
                       bool real_symmetric) {
    const Eigen::Index N = points.size();
    const Eigen::Index n = model.dim();
    const ComplexMatrix identity = ComplexMatrix::Identity(n, n);

    // One resolvent solve per point, shared by h1 and every h2 pair.
    ComplexMatrix states(n, N);
    for (Eigen::Index j = 0; j < N; ++j) {
        Eigen::FullPivLU<ComplexMatrix> lu(points[j] * identity - model.A());
        if (!lu.isInvertible())
            throw SingularShift("sample point " + format_complex(points[j]) +
                                " coincides with a system pole");
        states.col(j) = lu.solve(model.b());
    }

    std::optional<ComplexVector> h1;
    if (!model.quad_only()) {
        h1.emplace(N);
        for (Eigen::Index j = 0; j < N; ++j)
            (*h1)[j] = (model.c().transpose() * states.col(j)).value();
    }

    // Fill the upper triangle and mirror: the quadratic kernel is symmetric,
    // so this halves the work and makes the stored grid exactly symmetric.
    ComplexMatrix h2(N, N);
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index k = j; k < N; ++k) {
            const Complex v =
                (states.col(j).transpose() * (model.M() * states.col(k))).value();
            h2(j, k) = v;
            h2(k, j) = v;
        }

    return SampleSet(points, std::move(h1), std::move(h2), real_symmetric);
}

void write_report(const FitReport& report, const std::filesystem::path& path) {
    if (report.iterations.empty())
        throw DataError("fit report has no iterations");
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out << "iter,order,support_re,support_im,max_err_h1,max_err_h2,ls_residual,alt_passes\n";
    char buf[512];
    for (std::size_t i = 0; i < report.iterations.size(); ++i) {
        const FitIteration& it = report.iterations[i];
        std::snprintf(buf, sizeof buf, "%zu,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", i + 1,
                      it.order, it.support_point.real(), it.support_point.imag(),
                      it.max_err_h1, it.max_err_h2, it.ls_residual, it.alt_passes);
        out << buf;
    }
    if (!out)
        throw IoError("write to " + path.string() + " failed");
}

} // namespace lqofit
