#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "lqofit/fitting.hpp"
#include "lqofit/io.hpp"

using namespace lqofit;

namespace {

ComplexVector imlog_grid(double a, double b, int n) {
    ComplexVector pts(n);
    for (int j = 0; j < n; ++j) {
        const double t = n == 1 ? a : a + (b - a) * j / (n - 1.0);
        pts[j] = Complex(0.0, std::pow(10.0, t));
    }
    return pts;
}

ComplexVector conj_closed(const ComplexVector& pts) {
    ComplexVector out(2 * pts.size());
    for (Eigen::Index j = 0; j < pts.size(); ++j) {
        out[2 * j] = pts[j];
        out[2 * j + 1] = std::conj(pts[j]);
    }
    return out;
}

SampleSet diag_samples(int order, int n_points) {
    return sample_model(make_benchmark(BenchmarkKind::Diag, order, 0),
                        imlog_grid(-1.0, 1.0, n_points));
}

LqoInterpolant interpolant_from(const SampleSet& samples,
                                const std::vector<Eigen::Index>& support,
                                const ComplexVector& weights) {
    const Eigen::Index n = static_cast<Eigen::Index>(support.size());
    ComplexVector xi(n), h(n);
    ComplexMatrix grid(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        xi[k] = samples.points()[support[k]];
        h[k] = samples.h1() ? (*samples.h1())[support[k]] : Complex(0.0, 0.0);
        for (Eigen::Index l = 0; l < n; ++l)
            grid(k, l) = samples.h2()(support[k], support[l]);
    }
    return LqoInterpolant(xi, weights, h, grid);
}

// Scaled L2 norm of the actual approximation errors over the remaining
// points: H1 mismatches plus H2 mismatches on remaining x remaining pairs.
double true_error_l2(const SampleSet& samples, const LqoInterpolant& interp,
                     const std::vector<Eigen::Index>& support, const Scales& scales) {
    std::vector<bool> in_support(samples.size(), false);
    for (Eigen::Index idx : support)
        in_support[idx] = true;
    double sum = 0.0;
    for (Eigen::Index j = 0; j < samples.size(); ++j) {
        if (in_support[j])
            continue;
        if (samples.h1())
            sum += std::norm(eval_r1(interp, samples.points()[j]) - (*samples.h1())[j]) /
                   (scales.s1 * scales.s1);
        for (Eigen::Index k = 0; k < samples.size(); ++k) {
            if (in_support[k])
                continue;
            const Complex r2 = eval_r2(interp, samples.points()[j], samples.points()[k]);
            sum += std::norm(samples.h2()(j, k) - r2) / (scales.s2 * scales.s2);
        }
    }
    return std::sqrt(sum);
}

} // namespace

TEST_CASE("SampleSet validates its invariants") {
    ComplexVector pts(2);
    pts << Complex(0.0, 1.0), Complex(0.0, 2.0);
    const ComplexMatrix grid = ComplexMatrix::Zero(2, 2);

    CHECK_NOTHROW(SampleSet(pts, std::nullopt, grid));
    CHECK_THROWS_AS(SampleSet(pts.head(1), std::nullopt, ComplexMatrix::Zero(1, 1)),
                    InsufficientData);

    ComplexVector dup(2);
    dup << Complex(0.0, 1.0), Complex(0.0, 1.0);
    CHECK_THROWS_AS(SampleSet(dup, std::nullopt, grid), DuplicatePoints);

    CHECK_THROWS_AS(SampleSet(pts, ComplexVector::Ones(3), grid), DimensionMismatch);
    CHECK_THROWS_AS(SampleSet(pts, std::nullopt, ComplexMatrix::Zero(2, 3)), GridMismatch);
}

TEST_CASE("real-symmetric tagging requires conjugate closure of the points") {
    ComplexVector open_pts(2);
    open_pts << Complex(0.0, 1.0), Complex(0.0, 2.0);
    CHECK_THROWS_AS(SampleSet(open_pts, std::nullopt, ComplexMatrix::Zero(2, 2), true),
                    DataError);

    ComplexVector closed(3);
    closed << Complex(0.0, 1.0), Complex(0.0, -1.0), Complex(2.0, 0.0);
    const SampleSet ok(closed, std::nullopt, ComplexMatrix::Zero(3, 3), true);
    CHECK(ok.conjugate_index(0) == 1);
    CHECK(ok.conjugate_index(1) == 0);
    CHECK(ok.conjugate_index(2) == 2);
}

TEST_CASE("real-symmetric tagging requires conjugate-symmetric data") {
    ComplexVector pts(2);
    pts << Complex(0.0, 1.0), Complex(0.0, -1.0);
    ComplexVector h1(2);
    h1 << Complex(1.0, 2.0), Complex(1.0, -2.0);
    CHECK_NOTHROW(SampleSet(pts, h1, ComplexMatrix::Zero(2, 2), true));

    ComplexVector bad = h1;
    bad[1] = Complex(1.0, 2.0); // should be the conjugate
    CHECK_THROWS_AS(SampleSet(pts, bad, ComplexMatrix::Zero(2, 2), true), DataError);
}

TEST_CASE("data means and auto scales") {
    ComplexVector pts(2);
    pts << Complex(1.0, 0.0), Complex(2.0, 0.0);
    ComplexVector h1(2);
    h1 << Complex(4.0, 0.0), Complex(-2.0, 0.0);
    ComplexMatrix h2(2, 2);
    h2 << 1.0, 2.0, 3.0, -8.0;
    const SampleSet samples(pts, h1, h2);

    const MeanApproximant means = data_means(samples);
    CHECK(std::abs(means.h1_mean - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(means.h2_mean - Complex(-0.5, 0.0)) < 1e-15);

    const Scales auto_scales = resolve_scales(samples, FitConfig{});
    CHECK(auto_scales.s1 == 4.0);
    CHECK(auto_scales.s2 == 8.0);

    FitConfig config;
    config.scales = Scales{2.0, 3.0};
    const Scales given = resolve_scales(samples, config);
    CHECK(given.s1 == 2.0);
    CHECK(given.s2 == 3.0);

    config.scales = Scales{0.0, 1.0};
    CHECK_THROWS_AS(resolve_scales(samples, config), DataError);

    // All-zero data falls back to unit scales.
    const SampleSet zeros(pts, ComplexVector::Zero(2), ComplexMatrix::Zero(2, 2));
    const Scales fallback = resolve_scales(zeros, FitConfig{});
    CHECK(fallback.s1 == 1.0);
    CHECK(fallback.s2 == 1.0);
}

TEST_CASE("residual_report: order-0 mean against constant data is exact") {
    ComplexVector pts(3);
    pts << Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(3.0, 0.0);
    const ComplexVector h1 = ComplexVector::Constant(3, Complex(5.0, 0.0));
    const ComplexMatrix h2 = ComplexMatrix::Constant(3, 3, Complex(-2.0, 0.0));
    const SampleSet samples(pts, h1, h2);
    const ResidualReport rr =
        residual_report(samples, data_means(samples), resolve_scales(samples, {}), {});
    CHECK(rr.max_scaled() == 0.0);
    CHECK(rr.e1.maxCoeff() == 0.0);
    CHECK(rr.e2.maxCoeff() == 0.0);
}

TEST_CASE("residual_report: fitted interpolant has exactly zero support entries") {
    const SampleSet samples = diag_samples(2, 10);
    const std::vector<Eigen::Index> support = {0, 5};
    const WeightSolution sol = solve_weights(samples, support, FitConfig{});
    const LqoInterpolant interp = interpolant_from(samples, support, sol.weights);
    const ResidualReport rr =
        residual_report(samples, interp, resolve_scales(samples, {}), support);
    CHECK(rr.e1[0] == 0.0);
    CHECK(rr.e1[5] == 0.0);
    CHECK(rr.e2(0, 5) == 0.0);
    CHECK(rr.e2(5, 0) == 0.0);
    CHECK(rr.e2(0, 0) == 0.0);
}

TEST_CASE("residual_report: a single perturbed grid entry shows up as max e2") {
    const SampleSet exact = diag_samples(2, 10);
    const std::vector<Eigen::Index> support = {0, 5};
    const WeightSolution sol = solve_weights(exact, support, FitConfig{});
    const LqoInterpolant interp = interpolant_from(exact, support, sol.weights);

    const double delta = 1e-3;
    ComplexMatrix h2 = exact.h2();
    h2(3, 7) += delta;
    h2(7, 3) += delta;
    const SampleSet perturbed(exact.points(), *exact.h1(), h2);
    const ResidualReport rr =
        residual_report(perturbed, interp, resolve_scales(perturbed, {}), support);
    const double peak = rr.e2.maxCoeff();
    CHECK(std::abs(rr.e2(3, 7) - delta) < 1e-8);
    CHECK(std::abs(peak - rr.e2(3, 7)) < 1e-12); // the perturbed entry is the max
    CHECK(std::abs(peak - delta) < 1e-8);
}

TEST_CASE("greedy_select at order 0 maximizes the scaled deviation from the means") {
    ComplexVector pts(3);
    pts << Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(3.0, 0.0);
    ComplexVector h1(3);
    h1 << Complex(10.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0);
    const SampleSet samples(pts, h1, ComplexMatrix::Zero(3, 3));
    const GreedySelection sel =
        greedy_select(samples, data_means(samples), {}, resolve_scales(samples, {}));
    CHECK(sel.index == 0);
    CHECK(sel.score > 0.0);
}

TEST_CASE("greedy_select breaks ties by lowest index") {
    ComplexVector pts(3);
    pts << Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(3.0, 0.0);
    ComplexVector h1(3);
    h1 << Complex(5.0, 0.0), Complex(-5.0, 0.0), Complex(0.0, 0.0);
    const SampleSet samples(pts, h1, ComplexMatrix::Zero(3, 3));
    const GreedySelection sel =
        greedy_select(samples, data_means(samples), {}, resolve_scales(samples, {}));
    CHECK(sel.index == 0);
}

TEST_CASE("greedy_select attributes an H2 perturbation to its row owner") {
    const SampleSet exact = diag_samples(2, 10);
    const std::vector<Eigen::Index> support = {0, 5};
    const WeightSolution sol = solve_weights(exact, support, FitConfig{});
    const LqoInterpolant interp = interpolant_from(exact, support, sol.weights);

    ComplexMatrix h2 = exact.h2();
    h2(3, 7) += 1e-3; // well above the exact-data residual floor
    const SampleSet perturbed(exact.points(), *exact.h1(), h2);
    const GreedySelection sel =
        greedy_select(perturbed, interp, support, resolve_scales(perturbed, {}));
    CHECK(sel.index == 3);
}

TEST_CASE("greedy_select requires a non-empty remainder") {
    const SampleSet samples = diag_samples(1, 2);
    CHECK_THROWS_AS(
        greedy_select(samples, data_means(samples), {0, 1}, resolve_scales(samples, {})),
        EmptyRemainder);
}

TEST_CASE("solve_weights: single-row hand example gives w = 1") {
    // Support xi = 0 with h = 2; one remaining row at zeta = 1 with g = 1:
    // 1 + w (1 - 2)/(1 - 0) = 0  =>  w = 1.
    ComplexVector pts(2);
    pts << Complex(0.0, 0.0), Complex(1.0, 0.0);
    ComplexVector h1(2);
    h1 << Complex(2.0, 0.0), Complex(1.0, 0.0);
    const SampleSet samples(pts, h1, ComplexMatrix::Zero(2, 2));
    FitConfig config;
    config.weight_strategy = WeightStrategy::H1Only;
    const WeightSolution sol = solve_weights(samples, {0}, config);
    REQUIRE(sol.weights.size() == 1);
    CHECK(std::abs(sol.weights[0] - Complex(1.0, 0.0)) < 1e-12);
    CHECK(sol.passes == 0);
}

TEST_CASE("solve_weights: alternating reaches the exact-data residual floor") {
    const SampleSet samples = diag_samples(3, 14);
    const std::vector<Eigen::Index> support = {0, 4, 9};
    const WeightSolution sol = solve_weights(samples, support, FitConfig{});
    const Eigen::Index remaining = samples.size() - 3;
    const double rows = static_cast<double>(remaining + remaining * remaining);
    CHECK(sol.residual <= 1e-8 * std::sqrt(rows));
    double min_w = 1e300;
    for (Eigen::Index k = 0; k < sol.weights.size(); ++k)
        min_w = std::min(min_w, std::abs(sol.weights[k]));
    CHECK(min_w > 0.0);
}

TEST_CASE("solve_weights input validation") {
    const SampleSet samples = diag_samples(2, 6);
    CHECK_THROWS_AS(solve_weights(samples, {}, FitConfig{}), DataError);
    CHECK_THROWS_AS(solve_weights(samples, {0, 0}, FitConfig{}), DataError);
    CHECK_THROWS_AS(solve_weights(samples, {0, 1, 2, 3, 4, 5}, FitConfig{}), EmptyRemainder);
    CHECK_THROWS_AS(solve_weights(samples, {0, 7}, FitConfig{}), DataError);

    const ComplexVector bad_seed = ComplexVector::Ones(3);
    CHECK_THROWS_AS(solve_weights(samples, {0, 1}, FitConfig{}, bad_seed), DimensionMismatch);
}

TEST_CASE("solve_weights: h1-only strategy needs H1 data") {
    const LqoModel quad = make_benchmark(BenchmarkKind::QuadOnly, 2, 5);
    const SampleSet samples = sample_model(quad, imlog_grid(-1.0, 1.0, 8));
    REQUIRE_FALSE(samples.h1().has_value());
    FitConfig config;
    config.weight_strategy = WeightStrategy::H1Only;
    CHECK_THROWS_AS(solve_weights(samples, {0, 4}, config), DataError);

    // The alternating strategy handles quad-only data (all-ones seed).
    const WeightSolution sol = solve_weights(samples, {0, 4}, FitConfig{});
    CHECK(sol.weights.size() == 2);
    CHECK(std::isfinite(sol.residual));
}

TEST_CASE("solve_weights: the H2 pair budget is deterministic and still accurate on exact data") {
    const SampleSet samples = diag_samples(2, 12);
    const std::vector<Eigen::Index> support = {0, 6};
    FitConfig budget;
    budget.h2_rows_per_point = 3;
    const WeightSolution a = solve_weights(samples, support, budget);
    const WeightSolution b = solve_weights(samples, support, budget);
    CHECK((a.weights.array() == b.weights.array()).all());
    CHECK(a.residual <= 1e-8);

    FitConfig bad;
    bad.h2_rows_per_point = 0;
    CHECK_THROWS_AS(solve_weights(samples, support, bad), DataError);
}

TEST_CASE("solve_weights: alternating does not lose to h1-only on H2-perturbed data") {
    const SampleSet exact = diag_samples(2, 12);
    ComplexMatrix h2 = exact.h2();
    for (Eigen::Index j = 0; j < h2.rows(); ++j)
        for (Eigen::Index k = j; k < h2.cols(); ++k) {
            const Complex bump(1e-4 * std::sin(3.0 * static_cast<double>(j + 1) * (k + 1.0)),
                               0.0);
            h2(j, k) += bump;
            h2(k, j) = h2(j, k);
        }
    const SampleSet samples(exact.points(), *exact.h1(), h2);
    const std::vector<Eigen::Index> support = {0, 6};
    const Scales scales = resolve_scales(samples, {});

    FitConfig h1_cfg;
    h1_cfg.weight_strategy = WeightStrategy::H1Only;
    const WeightSolution h1_sol = solve_weights(samples, support, h1_cfg);
    const WeightSolution alt_sol = solve_weights(samples, support, FitConfig{});

    // The alternating solve is seeded by the h1-only solution and keeps its
    // best iterate, so its true error can never exceed the seed's.
    const double h1_err =
        true_error_l2(samples, interpolant_from(samples, support, h1_sol.weights), support,
                      scales);
    const double alt_err =
        true_error_l2(samples, interpolant_from(samples, support, alt_sol.weights), support,
                      scales);
    CHECK(alt_err <= h1_err * (1.0 + 1e-9));
    CHECK(alt_sol.passes >= 1);
}

TEST_CASE("fit_linear_aaa recovers a two-pole function exactly") {
    const int n_points = 50;
    const ComplexVector pts = imlog_grid(-1.0, 1.0, n_points);
    ComplexVector values(n_points);
    double scale = 0.0;
    for (int j = 0; j < n_points; ++j) {
        values[j] = 1.0 / (pts[j] + 1.0) + 1.0 / (pts[j] + 2.0);
        scale = std::max(scale, std::abs(values[j]));
    }
    const LinearAaaResult fit = fit_linear_aaa(pts, values, 1e-12, 10);
    CHECK(fit.report.converged);
    // m support points give a degree-(m-1) barycentric rational; two poles
    // therefore need exactly three supports.
    CHECK(fit.support.size() == 3);
    double max_err = 0.0;
    for (int j = 0; j < n_points; ++j)
        max_err = std::max(max_err, std::abs(eval_linear_aaa(fit, pts[j]) - values[j]));
    CHECK(max_err <= 1e-10 * scale);
}

TEST_CASE("fit_linear_aaa: constant data is handled at order 0") {
    const ComplexVector pts = imlog_grid(-1.0, 1.0, 10);
    const ComplexVector values = ComplexVector::Constant(10, Complex(5.0, 0.0));
    const LinearAaaResult fit = fit_linear_aaa(pts, values, 1e-10, 5);
    CHECK(fit.report.converged);
    CHECK(fit.report.degenerate_data);
    CHECK(fit.support.size() == 1);
    CHECK(std::abs(eval_linear_aaa(fit, Complex(0.0, 5.0)) - Complex(5.0, 0.0)) < 1e-12);
}

TEST_CASE("fit_linear_aaa interpolates at its support points") {
    const ComplexVector pts = imlog_grid(-1.0, 1.0, 20);
    ComplexVector values(20);
    for (int j = 0; j < 20; ++j)
        values[j] = 1.0 / (pts[j] + 0.5) - 2.0 / (pts[j] + 3.0);
    const LinearAaaResult fit = fit_linear_aaa(pts, values, 1e-13, 8);
    for (Eigen::Index k = 0; k < fit.support.size(); ++k)
        CHECK(eval_linear_aaa(fit, fit.support[k]) == fit.values[k]);
}

TEST_CASE("fit_linear_aaa rejects bad inputs") {
    ComplexVector dup(3);
    dup << Complex(0.0, 1.0), Complex(0.0, 1.0), Complex(0.0, 2.0);
    CHECK_THROWS_AS(fit_linear_aaa(dup, ComplexVector::Zero(3), 1e-8, 3), DuplicatePoints);
    CHECK_THROWS_AS(fit_linear_aaa(dup.head(1), ComplexVector::Zero(1), 1e-8, 3),
                    InsufficientData);
    ComplexVector ok(2);
    ok << Complex(0.0, 1.0), Complex(0.0, 2.0);
    CHECK_THROWS_AS(fit_linear_aaa(ok, ComplexVector::Zero(2), 1e-8, 0), DataError);
    CHECK_THROWS_AS(fit_linear_aaa(ok, ComplexVector::Zero(3), 1e-8, 2), DimensionMismatch);
}

TEST_CASE("fit_lqo_aaa: scalar benchmark converges at order 1") {
    const SampleSet samples = diag_samples(1, 20);
    FitConfig config;
    config.tol = 1e-10;
    const FitResult result = fit_lqo_aaa(samples, config);
    CHECK(result.report.status == FitStatus::Converged);
    CHECK(result.interpolant.order() == 1);
    const ResidualReport rr = residual_report(samples, Approximant(result.interpolant),
                                              resolve_scales(samples, config));
    CHECK(rr.max_scaled() <= 1e-10);
}

TEST_CASE("fit_lqo_aaa: diagonal order-2 benchmark is recovered") {
    const SampleSet samples = diag_samples(2, 20);
    FitConfig config;
    config.tol = 1e-8;
    const FitResult result = fit_lqo_aaa(samples, config);
    CHECK(result.report.status == FitStatus::Converged);
    CHECK(result.interpolant.order() <= 4);
    // Orders increase strictly across iterations.
    for (std::size_t i = 1; i < result.report.iterations.size(); ++i)
        CHECK(result.report.iterations[i].order > result.report.iterations[i - 1].order);
    // The interpolant reproduces its own data exactly.
    for (Eigen::Index k = 0; k < result.interpolant.order(); ++k)
        CHECK(eval_r1(result.interpolant, result.interpolant.support()[k]) ==
              result.interpolant.h1_values()[k]);
}

TEST_CASE("fit_lqo_aaa: a single order-capped step interpolates the worst point") {
    const SampleSet samples = diag_samples(2, 12);
    const GreedySelection expected =
        greedy_select(samples, data_means(samples), {}, resolve_scales(samples, {}));

    FitConfig config;
    config.tol = std::numeric_limits<double>::infinity();
    config.n_max = 1;
    const FitResult result = fit_lqo_aaa(samples, config);
    CHECK(result.interpolant.order() == 1);
    CHECK(result.interpolant.support()[0] == samples.points()[expected.index]);
    CHECK(result.report.iterations.size() == 1);
}

TEST_CASE("fit_lqo_aaa: order cap yields order-capped status") {
    const SampleSet samples = diag_samples(3, 16);
    FitConfig config;
    config.tol = 1e-12;
    config.n_max = 2;
    const FitResult result = fit_lqo_aaa(samples, config);
    CHECK(result.report.status == FitStatus::OrderCapped);
    CHECK(result.interpolant.order() <= 2);
}

TEST_CASE("fit_lqo_aaa rejects an unreachable order cap") {
    const SampleSet samples = diag_samples(1, 6);
    FitConfig config;
    config.n_max = 6;
    CHECK_THROWS_AS(fit_lqo_aaa(samples, config), InsufficientData);
    config.n_max = 0;
    CHECK_THROWS_AS(fit_lqo_aaa(samples, config), DataError);
    config.n_max.reset();
    config.tol = 0.0;
    CHECK_THROWS_AS(fit_lqo_aaa(samples, config), DataError);
}

TEST_CASE("fit_lqo_aaa on real-symmetric samples keeps the support conjugate-closed") {
    const LqoModel model = make_benchmark(BenchmarkKind::Diag, 2, 0);
    const ComplexVector grid = conj_closed(imlog_grid(-1.0, 1.0, 10));
    const SampleSet samples = sample_model(model, grid, true);

    FitConfig config;
    config.tol = 1e-8;
    const FitResult result = fit_lqo_aaa(samples, config);
    CHECK(result.report.status == FitStatus::Converged);

    const auto& support = result.interpolant.support();
    for (Eigen::Index i = 0; i < support.size(); ++i) {
        bool found = false;
        for (Eigen::Index j = 0; j < support.size(); ++j)
            if (support[j] == std::conj(support[i]))
                found = true;
        CHECK(found);
    }
    // Orders grow by two per iteration on this all-complex grid.
    for (const FitIteration& it : result.report.iterations)
        CHECK(it.order % 2 == 0);

    // The realized model evaluates real on the real axis.
    const LqoModel realized = realize(result.interpolant);
    for (double sigma : {0.5, 1.5, 3.0}) {
        const Complex h1 = eval_h1(realized, Complex(sigma, 0.0));
        CHECK(std::abs(h1.imag()) <= 1e-8 * (1.0 + std::abs(h1)));
        const Complex h2 = eval_h2(realized, Complex(sigma, 0.0), Complex(2.0 * sigma, 0.0));
        CHECK(std::abs(h2.imag()) <= 1e-8 * (1.0 + std::abs(h2)));
    }
}

TEST_CASE("linear AAA and the LQO loop pick the same first support point") {
    const LqoModel model = make_benchmark(BenchmarkKind::Diag, 2, 0);
    const ComplexVector pts = imlog_grid(-1.0, 1.0, 12);
    ComplexVector g1(12);
    for (int j = 0; j < 12; ++j)
        g1[j] = eval_h1(model, pts[j]);

    const LinearAaaResult linear = fit_linear_aaa(pts, g1, 1e-14, 1);
    REQUIRE_FALSE(linear.report.support_indices.empty());

    const SampleSet samples(pts, g1, ComplexMatrix::Zero(12, 12));
    FitConfig config;
    config.tol = std::numeric_limits<double>::infinity();
    config.n_max = 1;
    const FitResult lqo = fit_lqo_aaa(samples, config);
    CHECK(lqo.interpolant.support()[0] == pts[linear.report.support_indices[0]]);
}

TEST_CASE("fit report records the h2 grid asymmetry of the data") {
    const SampleSet samples = diag_samples(2, 10);
    FitConfig config;
    config.tol = 1e-8;
    const FitResult result = fit_lqo_aaa(samples, config);
    // sample_model mirrors the grid, so the fitted sub-grid is exactly symmetric.
    CHECK(result.report.h2_asymmetry == 0.0);
    CHECK_FALSE(result.report.iterations.empty());
}
