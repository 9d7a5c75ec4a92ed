#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "lqofit/barycentric.hpp"
#include "lqofit/model.hpp"

namespace lqofit {

/// Frequency-domain fitting data: sample points zeta_j with H1 values g1_j
/// (absent for quad-only systems) and the full tensor grid of H2 values
/// g2_{j,j'}. When tagged real-symmetric, the point set must be closed under
/// conjugation and the data conjugate-symmetric; both are validated.
class SampleSet {
  public:
    SampleSet(ComplexVector points, std::optional<ComplexVector> h1, ComplexMatrix h2,
              bool real_symmetric = false);

    Eigen::Index size() const { return points_.size(); }
    const ComplexVector& points() const { return points_; }
    const std::optional<ComplexVector>& h1() const { return h1_; }
    const ComplexMatrix& h2() const { return h2_; }
    bool real_symmetric() const { return real_symmetric_; }

    /// Index of conj(points[j]); only valid on real-symmetric sets. A real
    /// point maps to itself.
    Eigen::Index conjugate_index(Eigen::Index j) const;

  private:
    ComplexVector points_;
    std::optional<ComplexVector> h1_;
    ComplexMatrix h2_;
    bool real_symmetric_ = false;
    std::vector<Eigen::Index> conj_index_;
};

enum class WeightStrategy {
    H1Only,      ///< linear LS on the H1 rows alone
    Alternating, ///< linearized alternating passes over stacked H1 + H2 rows
};

/// Row scalings for the two data sets; residuals are compared as err/s1 and
/// err/s2.
struct Scales {
    double s1 = 1.0;
    double s2 = 1.0;
};

struct FitConfig {
    double tol = 1e-8;                      ///< relative error target
    std::optional<int> n_max;               ///< default min(N_s - 1, 60)
    WeightStrategy weight_strategy = WeightStrategy::Alternating;
    int alt_iters = 20;                     ///< max alternating passes
    double alt_tol = 1e-10;                 ///< relative weight-change stop
    std::optional<int> h2_rows_per_point;   ///< H2 LS partners per point; all when unset
    std::optional<Scales> scales;           ///< auto (data maxima) when unset
};

enum class FitStatus { Converged, OrderCapped };

struct FitIteration {
    int order = 0;                ///< interpolant order after this iteration
    Complex support_point{};      ///< greedily chosen point (primary of a conjugate pair)
    double max_err_h1 = 0.0;      ///< max scaled H1 error over remaining points
    double max_err_h2 = 0.0;      ///< max scaled H2 error over remaining pairs
    double ls_residual = 0.0;     ///< stacked true residual norm of the weight solve
    int alt_passes = 0;
};

struct FitReport {
    std::vector<FitIteration> iterations;
    FitStatus status = FitStatus::OrderCapped;
    double h2_asymmetry = 0.0;          ///< asymmetry removed from the fitted grid
    bool weights_nonconverged = false;  ///< final weight iteration hit the pass cap
};

/// Order-0 state of the greedy iteration: both data sets approximated by
/// their means.
struct MeanApproximant {
    Complex h1_mean{};
    Complex h2_mean{};
};

using Approximant = std::variant<MeanApproximant, LqoInterpolant>;

MeanApproximant data_means(const SampleSet& samples);

/// Config scales, or auto: s1 = max|g1| (1 when h1 absent), s2 = max|g2|,
/// zeros replaced by 1.
Scales resolve_scales(const SampleSet& samples, const FitConfig& config);

/// Absolute error grids of an approximant against the samples, plus scaled
/// summary statistics taken over the remaining (non-support) entries: e1 over
/// points outside the support, e2 over pairs with both coordinates outside.
/// Support entries of the grids are exactly zero for a fitted interpolant.
struct ResidualReport {
    Eigen::VectorXd e1;   ///< |r1 - g1| per sample point (zeros when h1 absent)
    Eigen::MatrixXd e2;   ///< |r2 - g2| on the full grid
    double max_scaled_h1 = 0.0;
    double mean_scaled_h1 = 0.0;
    double max_scaled_h2 = 0.0;
    double mean_scaled_h2 = 0.0;

    double max_scaled() const { return max_scaled_h1 > max_scaled_h2 ? max_scaled_h1 : max_scaled_h2; }
};

ResidualReport residual_report(const SampleSet& samples, const Approximant& approx,
                               const Scales& scales,
                               const std::vector<Eigen::Index>& support_indices);

/// Variant deriving support indices by exact point match against the samples.
ResidualReport residual_report(const SampleSet& samples, const Approximant& approx,
                               const Scales& scales);

struct GreedySelection {
    Eigen::Index index = -1;
    double score = 0.0;
};

/// Picks the remaining sample point with the largest scaled residual,
/// score_j = max(e1_j/s1, max_j' e2_{j,j'}/s2, max_j' e2_{j',j}/s2) over
/// remaining pairs; ties break to the lowest index.
GreedySelection greedy_select(const SampleSet& samples, const Approximant& approx,
                              const std::vector<Eigen::Index>& support_indices,
                              const Scales& scales);

struct WeightSolution {
    ComplexVector weights;
    double residual = 0.0;      ///< true stacked residual norm at the returned weights
    int passes = 0;             ///< alternating passes used (0 for H1Only)
    bool nonconverged = false;  ///< hit alt_iters with weight change above alt_tol
};

/// Solves for barycentric weights given a fixed support subset of the sample
/// points. H1 rows are linear in w; H2 rows are quadratic through the w_k w_l
/// products and are handled by the configured strategy. The alternating
/// strategy is seeded by w_init, else by the H1-only solution, else (quad-only
/// data) by ones; each pass is damped against the actual (de-linearized)
/// approximation error and the best iterate seen is returned, so the result is
/// never worse than the seed. Throws EmptyRemainder when no points remain and
/// ZeroWeight if a solved weight is exactly zero.
WeightSolution solve_weights(const SampleSet& samples,
                             const std::vector<Eigen::Index>& support_indices,
                             const FitConfig& config,
                             const std::optional<ComplexVector>& w_init = std::nullopt);

struct LinearAaaReport {
    std::vector<double> max_errors;          ///< scaled max error after each iteration
    std::vector<Eigen::Index> support_indices;
    bool converged = false;
    bool degenerate_data = false;  ///< order-0 mean already met the tolerance
    bool rank_deficient = false;   ///< Loewner LS lost rank; weights from the null space
};

struct LinearAaaResult {
    ComplexVector support;
    ComplexVector weights;
    ComplexVector values;
    LinearAaaReport report;
};

/// Classic AAA on a single data set: greedy support selection plus an SVD
/// null-vector weight solve of the linearized residual with ||w|| = 1
/// (homogeneous form, no "+1" in the denominator). Stops at max relative
/// error <= tol or order n_max.
LinearAaaResult fit_linear_aaa(const ComplexVector& points, const ComplexVector& values,
                               double tol, int n_max);

/// Evaluates the classic (homogeneous) barycentric form of a linear AAA fit,
/// with the usual support-point branch.
Complex eval_linear_aaa(const LinearAaaResult& fit, Complex s);

struct FitResult {
    LqoInterpolant interpolant;
    FitReport report;
};

/// Greedy + least-squares fit of the coupled barycentric forms to the sample
/// data: repeatedly moves the worst-scoring point into the support set (with
/// its conjugate, on real-symmetric data), re-solves the weights, and stops at
/// tolerance or at the order cap. Deterministic for fixed inputs.
FitResult fit_lqo_aaa(const SampleSet& samples, const FitConfig& config = {});

} // namespace lqofit
