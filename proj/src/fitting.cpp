#include "lqofit/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/SVD>

namespace lqofit {

namespace {

constexpr double kSnapWindow = 1e-13;

double max_abs(const ComplexVector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

std::vector<Eigen::Index> complement_indices(Eigen::Index n,
                                             const std::vector<Eigen::Index>& support) {
    std::vector<bool> in_support(n, false);
    for (Eigen::Index idx : support) {
        if (idx < 0 || idx >= n)
            throw DataError("support index " + std::to_string(idx) + " out of range");
        if (in_support[idx])
            throw DataError("support index " + std::to_string(idx) + " repeated");
        in_support[idx] = true;
    }
    std::vector<Eigen::Index> rest;
    rest.reserve(n - static_cast<Eigen::Index>(support.size()));
    for (Eigen::Index j = 0; j < n; ++j)
        if (!in_support[j])
            rest.push_back(j);
    return rest;
}

} // namespace

SampleSet::SampleSet(ComplexVector points, std::optional<ComplexVector> h1, ComplexMatrix h2,
                     bool real_symmetric)
    : points_(std::move(points)), h1_(std::move(h1)), h2_(std::move(h2)),
      real_symmetric_(real_symmetric) {
    const Eigen::Index n = points_.size();
    if (n < 2)
        throw InsufficientData("at least 2 sample points required");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (points_[i] == points_[j])
                throw DuplicatePoints("sample points " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
    if (h1_ && h1_->size() != n)
        throw DimensionMismatch("h1 has length " + std::to_string(h1_->size()) +
                                ", expected " + std::to_string(n));
    if (h2_.rows() != n || h2_.cols() != n)
        throw GridMismatch("h2 grid is " + std::to_string(h2_.rows()) + "x" +
                           std::to_string(h2_.cols()) + ", expected " + std::to_string(n) +
                           "x" + std::to_string(n));

    if (!real_symmetric_)
        return;

    // Closure under conjugation: exact match preferred, tiny window as fallback.
    conj_index_.assign(n, -1);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex target = std::conj(points_[j]);
        Eigen::Index found = -1;
        for (Eigen::Index k = 0; k < n; ++k) {
            if (points_[k] == target) {
                found = k;
                break;
            }
        }
        if (found < 0) {
            const double window = kSnapWindow * (1.0 + std::abs(target));
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index k = 0; k < n; ++k) {
                const double dist = std::abs(points_[k] - target);
                if (dist <= window && dist < best) {
                    best = dist;
                    found = k;
                }
            }
        }
        if (found < 0)
            throw DataError("point set tagged real-symmetric but conjugate of point " +
                            std::to_string(j) + " is missing");
        conj_index_[j] = found;
    }

    // Conjugate symmetry of the data itself.
    double data_scale = max_abs(h2_.reshaped());
    if (h1_)
        data_scale = std::max(data_scale, max_abs(*h1_));
    const double tol = 1e-8 * (1.0 + data_scale);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index cj = conj_index_[j];
        if (h1_ && std::abs((*h1_)[cj] - std::conj((*h1_)[j])) > tol)
            throw DataError("h1 data is not conjugate-symmetric at point " + std::to_string(j));
        for (Eigen::Index k = 0; k < n; ++k) {
            const Eigen::Index ck = conj_index_[k];
            if (std::abs(h2_(cj, ck) - std::conj(h2_(j, k))) > tol)
                throw DataError("h2 data is not conjugate-symmetric at pair (" +
                                std::to_string(j) + ", " + std::to_string(k) + ")");
        }
    }
}

Eigen::Index SampleSet::conjugate_index(Eigen::Index j) const {
    if (!real_symmetric_)
        throw DataError("conjugate_index requires a real-symmetric sample set");
    if (j < 0 || j >= points_.size())
        throw DataError("sample index " + std::to_string(j) + " out of range");
    return conj_index_[j];
}

MeanApproximant data_means(const SampleSet& samples) {
    MeanApproximant m;
    m.h1_mean = samples.h1() ? samples.h1()->mean() : Complex(0.0, 0.0);
    m.h2_mean = samples.h2().mean();
    return m;
}

Scales resolve_scales(const SampleSet& samples, const FitConfig& config) {
    if (config.scales) {
        if (!(config.scales->s1 > 0.0) || !(config.scales->s2 > 0.0))
            throw DataError("explicit scales must be positive");
        return *config.scales;
    }
    Scales s;
    s.s1 = samples.h1() ? max_abs(*samples.h1()) : 1.0;
    s.s2 = max_abs(samples.h2().reshaped());
    if (s.s1 == 0.0)
        s.s1 = 1.0;
    if (s.s2 == 0.0)
        s.s2 = 1.0;
    return s;
}

ResidualReport residual_report(const SampleSet& samples, const Approximant& approx,
                               const Scales& scales,
                               const std::vector<Eigen::Index>& support_indices) {
    const Eigen::Index n = samples.size();
    const auto& pts = samples.points();

    ResidualReport rr;
    rr.e1 = Eigen::VectorXd::Zero(n);
    rr.e2 = Eigen::MatrixXd::Zero(n, n);

    ComplexVector r1(n);
    if (const auto* mean = std::get_if<MeanApproximant>(&approx)) {
        r1.setConstant(mean->h1_mean);
        rr.e2.setConstant(0.0);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                rr.e2(j, k) = std::abs(mean->h2_mean - samples.h2()(j, k));
    } else {
        const auto& interp = std::get<LqoInterpolant>(approx);
        for (Eigen::Index j = 0; j < n; ++j)
            r1[j] = eval_r1(interp, pts[j]);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                rr.e2(j, k) = std::abs(eval_r2(interp, pts[j], pts[k]) - samples.h2()(j, k));
    }
    if (samples.h1())
        rr.e1 = (r1 - *samples.h1()).cwiseAbs();

    const auto rest = complement_indices(n, support_indices);
    if (rest.empty())
        return rr;

    double sum1 = 0.0;
    double sum2 = 0.0;
    for (Eigen::Index j : rest) {
        rr.max_scaled_h1 = std::max(rr.max_scaled_h1, rr.e1[j] / scales.s1);
        sum1 += rr.e1[j] / scales.s1;
        for (Eigen::Index k : rest) {
            rr.max_scaled_h2 = std::max(rr.max_scaled_h2, rr.e2(j, k) / scales.s2);
            sum2 += rr.e2(j, k) / scales.s2;
        }
    }
    rr.mean_scaled_h1 = sum1 / static_cast<double>(rest.size());
    rr.mean_scaled_h2 = sum2 / static_cast<double>(rest.size() * rest.size());
    return rr;
}

ResidualReport residual_report(const SampleSet& samples, const Approximant& approx,
                               const Scales& scales) {
    std::vector<Eigen::Index> support_indices;
    if (const auto* interp = std::get_if<LqoInterpolant>(&approx)) {
        for (Eigen::Index i = 0; i < interp->order(); ++i)
            for (Eigen::Index j = 0; j < samples.size(); ++j)
                if (samples.points()[j] == interp->support()[i]) {
                    support_indices.push_back(j);
                    break;
                }
    }
    return residual_report(samples, approx, scales, support_indices);
}

GreedySelection greedy_select(const SampleSet& samples, const Approximant& approx,
                              const std::vector<Eigen::Index>& support_indices,
                              const Scales& scales) {
    const auto rest = complement_indices(samples.size(), support_indices);
    if (rest.empty())
        throw EmptyRemainder("no sample points remain outside the support");

    const ResidualReport rr = residual_report(samples, approx, scales, support_indices);

    GreedySelection sel;
    for (Eigen::Index j : rest) {
        double score = rr.e1[j] / scales.s1;
        for (Eigen::Index k : rest) {
            score = std::max(score, rr.e2(j, k) / scales.s2);
            score = std::max(score, rr.e2(k, j) / scales.s2);
        }
        if (score > sel.score || sel.index < 0) {
            sel.score = score;
            sel.index = j;
        }
    }
    return sel;
}

namespace {

// Precomputed per-solve data: support values, Cauchy matrix over the
// remaining points, and the budgeted H2 pair list.
struct SolveContext {
    std::vector<Eigen::Index> rest;
    ComplexVector xi;      // support points
    ComplexVector h;       // h1 data at support (zeros in quad-only mode)
    ComplexMatrix Hgrid;   // h2 data on support x support
    ComplexMatrix Phi;     // |rest| x n Cauchy matrix
    ComplexVector g1;      // h1 data at remaining points (empty when absent)
    ComplexMatrix G2;      // h2 data on remaining x remaining
    bool has_h1 = false;
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs; // indices into rest
    Scales scales;
};

SolveContext build_context(const SampleSet& samples,
                           const std::vector<Eigen::Index>& support_indices,
                           const FitConfig& config) {
    SolveContext ctx;
    ctx.rest = complement_indices(samples.size(), support_indices);
    if (ctx.rest.empty())
        throw EmptyRemainder("weight solve needs at least one remaining sample point");

    const Eigen::Index n = static_cast<Eigen::Index>(support_indices.size());
    const Eigen::Index m = static_cast<Eigen::Index>(ctx.rest.size());
    const auto& pts = samples.points();

    ctx.has_h1 = samples.h1().has_value();
    ctx.xi.resize(n);
    ctx.h = ComplexVector::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        ctx.xi[k] = pts[support_indices[k]];
        if (ctx.has_h1)
            ctx.h[k] = (*samples.h1())[support_indices[k]];
    }
    ctx.Hgrid.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l)
            ctx.Hgrid(k, l) = samples.h2()(support_indices[k], support_indices[l]);

    ctx.Phi.resize(m, n);
    for (Eigen::Index t = 0; t < m; ++t)
        for (Eigen::Index k = 0; k < n; ++k)
            ctx.Phi(t, k) = 1.0 / (pts[ctx.rest[t]] - ctx.xi[k]);

    if (ctx.has_h1) {
        ctx.g1.resize(m);
        for (Eigen::Index t = 0; t < m; ++t)
            ctx.g1[t] = (*samples.h1())[ctx.rest[t]];
    }
    ctx.G2.resize(m, m);
    for (Eigen::Index t = 0; t < m; ++t)
        for (Eigen::Index u = 0; u < m; ++u)
            ctx.G2(t, u) = samples.h2()(ctx.rest[t], ctx.rest[u]);

    // H2 pair budget: all remaining partners by default, otherwise an evenly
    // strided deterministic subset per row owner.
    Eigen::Index budget = m;
    if (config.h2_rows_per_point) {
        if (*config.h2_rows_per_point < 1)
            throw DataError("h2_rows_per_point must be at least 1");
        budget = std::min<Eigen::Index>(m, *config.h2_rows_per_point);
    }
    ctx.pairs.reserve(static_cast<std::size_t>(m * budget));
    for (Eigen::Index t = 0; t < m; ++t)
        for (Eigen::Index q = 0; q < budget; ++q)
            ctx.pairs.emplace_back(t, (q * m) / budget);

    ctx.scales = resolve_scales(samples, config);
    return ctx;
}

// True stacked residual norm at w: H1 rows g1*D - N1, H2 rows over the
// budgeted pairs g2*D(s)D(z) - N2, both scaled.
double stacked_residual(const SolveContext& ctx, const ComplexVector& w) {
    const ComplexVector den = ComplexVector::Ones(ctx.Phi.rows()) + ctx.Phi * w;
    double sum = 0.0;
    if (ctx.has_h1) {
        const ComplexVector n1 = ctx.Phi * w.cwiseProduct(ctx.h);
        const ComplexVector rho1 = ctx.g1.cwiseProduct(den) - n1;
        sum += rho1.squaredNorm() / (ctx.scales.s1 * ctx.scales.s1);
    }
    const ComplexMatrix W = ctx.Phi * w.asDiagonal();
    const ComplexMatrix N2 = W * ctx.Hgrid * W.transpose();
    for (const auto& [t, u] : ctx.pairs) {
        const Complex rho2 = ctx.G2(t, u) * den[t] * den[u] - N2(t, u);
        sum += std::norm(rho2) / (ctx.scales.s2 * ctx.scales.s2);
    }
    return std::sqrt(sum);
}

// Scaled L2 norm of the actual approximation errors at w, i.e. the stacked
// rows divided back by their denominators. Unlike the linearized residual this
// cannot be gamed by shrinking |D| at hard points, so it is the right metric
// for step control. Infinite when a denominator vanishes on a sample point.
double true_error_norm(const SolveContext& ctx, const ComplexVector& w) {
    const ComplexVector den = ComplexVector::Ones(ctx.Phi.rows()) + ctx.Phi * w;
    const double tiny = std::numeric_limits<double>::min();
    double sum = 0.0;
    if (ctx.has_h1) {
        const ComplexVector n1 = ctx.Phi * w.cwiseProduct(ctx.h);
        for (Eigen::Index t = 0; t < den.size(); ++t) {
            if (std::abs(den[t]) < tiny)
                return std::numeric_limits<double>::infinity();
            sum += std::norm(ctx.g1[t] - n1[t] / den[t]) / (ctx.scales.s1 * ctx.scales.s1);
        }
    }
    const ComplexMatrix W = ctx.Phi * w.asDiagonal();
    const ComplexMatrix N2 = W * ctx.Hgrid * W.transpose();
    for (const auto& [t, u] : ctx.pairs) {
        if (std::abs(den[t]) * std::abs(den[u]) < tiny)
            return std::numeric_limits<double>::infinity();
        sum += std::norm(ctx.G2(t, u) - N2(t, u) / (den[t] * den[u])) /
               (ctx.scales.s2 * ctx.scales.s2);
    }
    const double norm = std::sqrt(sum);
    return std::isfinite(norm) ? norm : std::numeric_limits<double>::infinity();
}

ComplexVector solve_h1_rows(const SolveContext& ctx) {
    const Eigen::Index m = ctx.Phi.rows();
    const Eigen::Index n = ctx.Phi.cols();
    ComplexMatrix C(m, n);
    ComplexVector rhs(m);
    for (Eigen::Index t = 0; t < m; ++t) {
        for (Eigen::Index k = 0; k < n; ++k)
            C(t, k) = (ctx.g1[t] - ctx.h[k]) * ctx.Phi(t, k) / ctx.scales.s1;
        rhs[t] = -ctx.g1[t] / ctx.scales.s1;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.solve(rhs);
}

// One alternating pass: H2 rows with the quadratic term frozen at w_bar,
// stacked on the H1 rows, solved as a single linear least-squares problem.
ComplexVector solve_joint_rows(const SolveContext& ctx, const ComplexVector& w_bar) {
    const Eigen::Index m = ctx.Phi.rows();
    const Eigen::Index n = ctx.Phi.cols();
    const Eigen::Index h1_rows = ctx.has_h1 ? m : 0;
    const Eigen::Index rows = h1_rows + static_cast<Eigen::Index>(ctx.pairs.size());

    ComplexMatrix C(rows, n);
    ComplexVector rhs(rows);
    for (Eigen::Index t = 0; t < h1_rows; ++t) {
        for (Eigen::Index k = 0; k < n; ++k)
            C(t, k) = (ctx.g1[t] - ctx.h[k]) * ctx.Phi(t, k) / ctx.scales.s1;
        rhs[t] = -ctx.g1[t] / ctx.scales.s1;
    }

    const ComplexVector d = ctx.Phi * w_bar;
    const ComplexMatrix U = ctx.Phi * (w_bar.asDiagonal() * ctx.Hgrid);
    Eigen::Index r = h1_rows;
    for (const auto& [t, u] : ctx.pairs) {
        const Complex g2 = ctx.G2(t, u);
        for (Eigen::Index l = 0; l < n; ++l)
            C(r, l) = (g2 * (ctx.Phi(t, l) + ctx.Phi(u, l)) +
                       (g2 * d[t] - U(t, l)) * ctx.Phi(u, l)) /
                      ctx.scales.s2;
        rhs[r] = -g2 / ctx.scales.s2;
        ++r;
    }

    Eigen::JacobiSVD<ComplexMatrix> svd(C, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.solve(rhs);
}

} // namespace

WeightSolution solve_weights(const SampleSet& samples,
                             const std::vector<Eigen::Index>& support_indices,
                             const FitConfig& config,
                             const std::optional<ComplexVector>& w_init) {
    if (support_indices.empty())
        throw DataError("support set is empty");
    const SolveContext ctx = build_context(samples, support_indices, config);
    const Eigen::Index n = ctx.Phi.cols();

    WeightSolution sol;
    if (config.weight_strategy == WeightStrategy::H1Only) {
        if (!ctx.has_h1)
            throw DataError("h1-only weight strategy requires H1 samples");
        sol.weights = solve_h1_rows(ctx);
        sol.passes = 0;
    } else {
        ComplexVector w_bar;
        if (w_init) {
            if (w_init->size() != n)
                throw DimensionMismatch("weight seed has length " +
                                        std::to_string(w_init->size()) + ", expected " +
                                        std::to_string(n));
            w_bar = *w_init;
        } else if (ctx.has_h1) {
            w_bar = solve_h1_rows(ctx);
        } else {
            w_bar = ComplexVector::Ones(n); // quad-only seed
        }

        if (config.alt_iters < 1)
            throw DataError("alt_iters must be at least 1");
        // The linearized pass is a fixed-point map with no descent guarantee,
        // so damp each step until the true error stops growing and keep the
        // best iterate seen; the result is never worse than the seed.
        double cur_err = true_error_norm(ctx, w_bar);
        double best_err = cur_err;
        ComplexVector best_w = w_bar;
        double change = std::numeric_limits<double>::infinity();
        for (int pass = 0; pass < config.alt_iters; ++pass) {
            ComplexVector w_new = solve_joint_rows(ctx, w_bar);
            double err = true_error_norm(ctx, w_new);
            for (int backtrack = 0; backtrack < 8 && err > cur_err; ++backtrack) {
                w_new = 0.5 * (w_new + w_bar);
                err = true_error_norm(ctx, w_new);
            }
            change = (w_new - w_bar).norm() /
                     std::max(w_new.norm(), std::numeric_limits<double>::min());
            w_bar = w_new;
            cur_err = err;
            ++sol.passes;
            if (err < best_err) {
                best_err = err;
                best_w = w_new;
            }
            if (change <= config.alt_tol)
                break;
        }
        sol.nonconverged = change > config.alt_tol;
        sol.weights = best_w;
    }

    for (Eigen::Index k = 0; k < n; ++k)
        if (sol.weights[k] == Complex(0.0, 0.0))
            throw ZeroWeight("weight solve produced a zero weight at support index " +
                             std::to_string(k));
    sol.residual = stacked_residual(ctx, sol.weights);
    return sol;
}

namespace {

Complex eval_classic_raw(const ComplexVector& support, const ComplexVector& weights,
                         const ComplexVector& values, Complex s) {
    Eigen::Index snap = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < support.size(); ++i) {
        const double dist = std::abs(s - support[i]);
        if (dist <= kSnapWindow * (1.0 + std::abs(support[i])) && dist < best) {
            snap = i;
            best = dist;
        }
    }
    if (snap >= 0)
        return values[snap];
    Complex num(0.0, 0.0);
    Complex den(0.0, 0.0);
    for (Eigen::Index i = 0; i < support.size(); ++i) {
        const Complex term = weights[i] / (s - support[i]);
        num += term * values[i];
        den += term;
    }
    return num / den; // may be non-finite at a pole; callers decide
}

} // namespace

LinearAaaResult fit_linear_aaa(const ComplexVector& points, const ComplexVector& values,
                               double tol, int n_max) {
    const Eigen::Index N = points.size();
    if (N < 2)
        throw InsufficientData("at least 2 sample points required");
    if (values.size() != N)
        throw DimensionMismatch("points and values must have equal length");
    if (n_max < 1)
        throw DataError("n_max must be at least 1");
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = i + 1; j < N; ++j)
            if (points[i] == points[j])
                throw DuplicatePoints("sample points " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");

    double scale = max_abs(values);
    if (scale == 0.0)
        scale = 1.0;

    LinearAaaResult result;
    const Complex mean = values.mean();
    ComplexVector r = ComplexVector::Constant(N, mean);

    std::vector<Eigen::Index> rest(N);
    for (Eigen::Index j = 0; j < N; ++j)
        rest[j] = j;

    auto max_error_index = [&]() {
        Eigen::Index best = rest[0];
        double max_err = -1.0;
        for (Eigen::Index j : rest) {
            const double err = std::abs(values[j] - r[j]);
            const double e = std::isfinite(err) ? err : std::numeric_limits<double>::infinity();
            if (e > max_err) {
                max_err = e;
                best = j;
            }
        }
        return std::make_pair(best, max_err);
    };

    auto [j0, err0] = max_error_index();
    result.report.max_errors.push_back(err0 / scale);
    if (err0 <= tol * scale) {
        // The order-0 mean already meets the tolerance; represent the
        // constant with a single support point.
        result.support = points.head(1);
        result.values = values.head(1);
        result.weights = ComplexVector::Ones(1);
        result.report.support_indices = {0};
        result.report.degenerate_data = true;
        result.report.converged = true;
        return result;
    }

    const Eigen::Index order_cap = std::min<Eigen::Index>(n_max, N - 1);
    std::vector<Eigen::Index> support_idx;
    for (Eigen::Index m = 1; m <= order_cap; ++m) {
        auto [j, err] = max_error_index();
        (void)err;
        support_idx.push_back(j);
        rest.erase(std::find(rest.begin(), rest.end(), j));

        result.support.conservativeResize(m);
        result.values.conservativeResize(m);
        result.support[m - 1] = points[j];
        result.values[m - 1] = values[j];

        // Loewner rows over the remaining points, weights from the smallest
        // right singular vector (||w|| = 1).
        ComplexMatrix loewner(rest.size(), m);
        for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(rest.size()); ++t)
            for (Eigen::Index k = 0; k < m; ++k)
                loewner(t, k) = (values[rest[t]] - result.values[k]) /
                                (points[rest[t]] - result.support[k]);
        Eigen::JacobiSVD<ComplexMatrix> svd(loewner, Eigen::ComputeFullV);
        if (svd.rank() < m)
            result.report.rank_deficient = true;
        result.weights = svd.matrixV().col(m - 1);

        for (Eigen::Index t : rest)
            r[t] = eval_classic_raw(result.support, result.weights, result.values, points[t]);
        double max_err = 0.0;
        for (Eigen::Index t : rest) {
            const double e = std::abs(values[t] - r[t]);
            max_err = std::max(max_err, std::isfinite(e) ? e : std::numeric_limits<double>::infinity());
        }
        result.report.max_errors.push_back(max_err / scale);
        result.report.support_indices = support_idx;
        if (max_err <= tol * scale) {
            result.report.converged = true;
            break;
        }
    }
    return result;
}

Complex eval_linear_aaa(const LinearAaaResult& fit, Complex s) {
    if (fit.support.size() == 0)
        throw DataError("empty linear AAA fit");
    const Complex v = eval_classic_raw(fit.support, fit.weights, fit.values, s);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "barycentric denominator vanished at s = (" << s.real() << ", " << s.imag()
            << ")";
        throw ZeroDenominator(msg.str());
    }
    return v;
}

namespace {

LqoInterpolant build_interpolant(const SampleSet& samples,
                                 const std::vector<Eigen::Index>& support_indices,
                                 const ComplexVector& weights) {
    const Eigen::Index n = static_cast<Eigen::Index>(support_indices.size());
    ComplexVector xi(n);
    ComplexVector h = ComplexVector::Zero(n);
    ComplexMatrix grid(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        xi[k] = samples.points()[support_indices[k]];
        if (samples.h1())
            h[k] = (*samples.h1())[support_indices[k]];
        for (Eigen::Index l = 0; l < n; ++l)
            grid(k, l) = samples.h2()(support_indices[k], support_indices[l]);
    }
    return LqoInterpolant(std::move(xi), weights, std::move(h), std::move(grid));
}

} // namespace

FitResult fit_lqo_aaa(const SampleSet& samples, const FitConfig& config) {
    if (std::isnan(config.tol) || config.tol <= 0.0)
        throw DataError("fit tolerance must be positive");
    const Eigen::Index N = samples.size();
    Eigen::Index n_max = std::min<Eigen::Index>(N - 1, 60);
    if (config.n_max) {
        if (*config.n_max < 1)
            throw DataError("n_max must be at least 1");
        if (*config.n_max >= N)
            throw InsufficientData("n_max = " + std::to_string(*config.n_max) +
                                   " needs more than " + std::to_string(N) +
                                   " sample points");
        n_max = *config.n_max;
    }

    const Scales scales = resolve_scales(samples, config);
    Approximant current = data_means(samples);
    std::vector<Eigen::Index> support_idx;
    std::optional<LqoInterpolant> interp;
    FitReport report;

    for (;;) {
        const GreedySelection sel = greedy_select(samples, current, support_idx, scales);

        std::vector<Eigen::Index> added = {sel.index};
        if (samples.real_symmetric()) {
            const Eigen::Index cj = samples.conjugate_index(sel.index);
            if (cj != sel.index &&
                std::find(support_idx.begin(), support_idx.end(), cj) == support_idx.end())
                added.push_back(cj);
        }
        const Eigen::Index next_order =
            static_cast<Eigen::Index>(support_idx.size() + added.size());
        if (next_order > n_max) {
            if (!support_idx.empty()) {
                report.status = FitStatus::OrderCapped; // no room for the conjugate pair
                break;
            }
            added.resize(1); // n_max = 1: take the primary point alone
        }
        support_idx.insert(support_idx.end(), added.begin(), added.end());

        const WeightSolution sol = solve_weights(samples, support_idx, config);
        // Only the delivered weights matter; intermediate orders below the
        // true system order legitimately exhaust their passes.
        report.weights_nonconverged = sol.nonconverged;
        interp = build_interpolant(samples, support_idx, sol.weights);
        report.h2_asymmetry = interp->h2_asymmetry();
        current = *interp;

        const ResidualReport rr = residual_report(samples, current, scales, support_idx);
        FitIteration it;
        it.order = static_cast<int>(support_idx.size());
        it.support_point = samples.points()[sel.index];
        it.max_err_h1 = rr.max_scaled_h1;
        it.max_err_h2 = rr.max_scaled_h2;
        it.ls_residual = sol.residual;
        it.alt_passes = sol.passes;
        report.iterations.push_back(it);

        if (rr.max_scaled() <= config.tol) {
            report.status = FitStatus::Converged;
            break;
        }
        if (static_cast<Eigen::Index>(support_idx.size()) >= n_max) {
            report.status = FitStatus::OrderCapped;
            break;
        }
    }
    return FitResult{std::move(*interp), std::move(report)};
}

} // namespace lqofit
