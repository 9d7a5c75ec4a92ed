#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lqofit/fitting.hpp"
#include "lqofit/model.hpp"

namespace lqofit {

// JSON documents with every complex number encoded as a two-element [re, im]
// array of decimal literals; round-trips are bit-exact for finite doubles.
// Unknown keys are ignored on read and reported through `warnings`.

struct ModelReadResult {
    LqoModel model;
    double m_asymmetry = 0.0;  ///< asymmetry of M removed on read
    std::vector<std::string> warnings;
};

struct SamplesReadResult {
    SampleSet samples;
    std::vector<std::string> warnings;
};

/// Keys: dim, A (row-major), b, c, M (row-major).
void write_model(const LqoModel& model, const std::filesystem::path& path);
ModelReadResult read_model(const std::filesystem::path& path);

/// Keys: points, h1 (optional), h2 (row-major N_s x N_s), real_symmetric
/// (optional flag).
void write_samples(const SampleSet& samples, const std::filesystem::path& path);
SamplesReadResult read_samples(const std::filesystem::path& path);

/// Evaluates both transfer functions of the model over the tensor grid of the
/// given points: h1 per point (omitted when c = 0) and the full h2 grid,
/// mirroring the upper triangle so the stored grid is exactly symmetric.
/// SingularShift is propagated with the offending point named.
SampleSet sample_model(const LqoModel& model, const ComplexVector& points,
                       bool real_symmetric = false);

/// Comma-separated iteration table, header
/// iter,order,support_re,support_im,max_err_h1,max_err_h2,ls_residual,alt_passes,
/// numeric fields at 17 significant digits. The report must be non-empty.
void write_report(const FitReport& report, const std::filesystem::path& path);

} // namespace lqofit
