#include "lqofit/barycentric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

namespace lqofit {

namespace {

constexpr double kSnapWindow = 1e-13;

// Cauchy terms phi_k(s) = 1/(s - xi_k). Callers must have ruled out snapped
// arguments, so no divisor is exactly zero.
ComplexVector cauchy_terms(const ComplexVector& support, Complex s) {
    return (ComplexVector::Constant(support.size(), s) - support).cwiseInverse();
}

Complex denominator_from_terms(const ComplexVector& weights, const ComplexVector& phi) {
    return Complex(1.0, 0.0) + (weights.array() * phi.array()).sum();
}

[[noreturn]] void throw_zero_denominator(const char* variable, Complex at) {
    std::ostringstream msg;
    msg << "barycentric denominator vanished in " << variable << " at " << variable << " = ("
        << at.real() << ", " << at.imag() << ")";
    throw ZeroDenominator(msg.str());
}

bool underflowed(Complex d) {
    return std::abs(d) < std::numeric_limits<double>::min();
}

} // namespace

LqoInterpolant::LqoInterpolant(ComplexVector support, ComplexVector weights,
                               ComplexVector h1_values, ComplexMatrix h2_grid)
    : support_(std::move(support)), weights_(std::move(weights)),
      h1_values_(std::move(h1_values)), h2_grid_(std::move(h2_grid)) {
    const Eigen::Index n = support_.size();
    if (n < 1)
        throw DataError("interpolant order must be at least 1");
    if (weights_.size() != n || h1_values_.size() != n)
        throw DimensionMismatch("support, weights, and h1 values must have equal length");
    if (h2_grid_.rows() != n || h2_grid_.cols() != n)
        throw DimensionMismatch("h2 grid is " + std::to_string(h2_grid_.rows()) + "x" +
                                std::to_string(h2_grid_.cols()) + ", expected " +
                                std::to_string(n) + "x" + std::to_string(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (support_[i] == support_[j])
                throw DuplicatePoints("support points " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
    for (Eigen::Index i = 0; i < n; ++i)
        if (weights_[i] == Complex(0.0, 0.0))
            throw DataError("weight " + std::to_string(i) + " is zero");
    h2_asymmetry_ = (h2_grid_ - h2_grid_.transpose()).cwiseAbs().maxCoeff();
    h2_grid_ = ((h2_grid_ + h2_grid_.transpose()) / 2.0).eval();
}

Eigen::Index LqoInterpolant::snap_index(Complex s) const {
    Eigen::Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < support_.size(); ++i) {
        const double dist = std::abs(s - support_[i]);
        if (dist <= kSnapWindow * (1.0 + std::abs(support_[i])) && dist < best_dist) {
            best = i;
            best_dist = dist;
        }
    }
    return best;
}

Complex barycentric_denominator(const LqoInterpolant& interp, Complex s) {
    return denominator_from_terms(interp.weights(), cauchy_terms(interp.support(), s));
}

Complex eval_r1(const LqoInterpolant& interp, Complex s) {
    const Eigen::Index snap = interp.snap_index(s);
    if (snap >= 0)
        return interp.h1_values()[snap];

    const ComplexVector phi = cauchy_terms(interp.support(), s);
    const Complex den = denominator_from_terms(interp.weights(), phi);
    if (underflowed(den))
        throw_zero_denominator("s", s);
    const Complex num = (interp.weights().array() * interp.h1_values().array() * phi.array()).sum();
    return num / den;
}

Complex eval_r2(const LqoInterpolant& interp, Complex s, Complex z) {
    const Eigen::Index snap_s = interp.snap_index(s);
    const Eigen::Index snap_z = interp.snap_index(z);
    if (snap_s >= 0 && snap_z >= 0)
        return interp.h2_grid()(snap_s, snap_z);

    const auto& w = interp.weights();
    const auto& grid = interp.h2_grid();

    // One snapped argument: the form has a finite limit, e.g. for s -> xi_k
    // both the numerator and D(s) carry the factor w_k/(s - xi_k).
    if (snap_s >= 0) {
        const ComplexVector phi_z = cauchy_terms(interp.support(), z);
        const Complex den_z = denominator_from_terms(w, phi_z);
        if (underflowed(den_z))
            throw_zero_denominator("z", z);
        const Complex num = (grid.row(snap_s).transpose().array() * w.array() * phi_z.array()).sum();
        return num / den_z;
    }
    if (snap_z >= 0) {
        const ComplexVector phi_s = cauchy_terms(interp.support(), s);
        const Complex den_s = denominator_from_terms(w, phi_s);
        if (underflowed(den_s))
            throw_zero_denominator("s", s);
        const Complex num = (grid.col(snap_z).array() * w.array() * phi_s.array()).sum();
        return num / den_s;
    }

    const ComplexVector phi_s = cauchy_terms(interp.support(), s);
    const ComplexVector phi_z = cauchy_terms(interp.support(), z);
    const Complex den_s = denominator_from_terms(w, phi_s);
    const Complex den_z = denominator_from_terms(w, phi_z);
    if (underflowed(den_s))
        throw_zero_denominator("s", s);
    if (underflowed(den_z))
        throw_zero_denominator("z", z);

    const ComplexVector u = w.cwiseProduct(phi_s);
    const ComplexVector v = w.cwiseProduct(phi_z);
    const Complex num = (u.transpose() * (grid * v)).value();
    return num / (den_s * den_z);
}

LqoModel realize(const LqoInterpolant& interp) {
    const Eigen::Index n = interp.order();
    const auto& xi = interp.support();
    const auto& w = interp.weights();

    ComplexMatrix A = ComplexMatrix::Zero(n, n);
    A.diagonal() = xi;
    A.noalias() -= ComplexVector::Ones(n) * w.transpose();

    const ComplexVector b = ComplexVector::Ones(n);
    const ComplexVector c = w.cwiseProduct(interp.h1_values());
    const ComplexMatrix M =
        w.asDiagonal() * interp.h2_grid() * w.asDiagonal(); // (M)_{k,l} = w_k w_l h_{k,l}
    return LqoModel(std::move(A), b, c, M);
}

std::vector<Complex> poles(const LqoInterpolant& interp) {
    const Eigen::Index n = interp.order();
    ComplexMatrix A = ComplexMatrix::Zero(n, n);
    A.diagonal() = interp.support();
    A.noalias() -= ComplexVector::Ones(n) * interp.weights().transpose();

    Eigen::ComplexEigenSolver<ComplexMatrix> eig(A, /*computeEigenvectors=*/false);
    std::vector<Complex> result(eig.eigenvalues().data(), eig.eigenvalues().data() + n);
    std::sort(result.begin(), result.end(), [](Complex a, Complex b) {
        if (a.real() != b.real())
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return result;
}

} // namespace lqofit
