#pragma once

#include <vector>

#include "lqofit/model.hpp"

namespace lqofit {

/// Coupled barycentric forms over shared support points xi_k and weights w_k:
///
///     r1(s)   = [sum_k w_k h_k / (s - xi_k)] / D(s)
///     r2(s,z) = [sum_{k,l} h_{k,l} w_k w_l / ((s - xi_k)(z - xi_l))] / (D(s) D(z))
///
/// with D(s) = 1 + sum_k w_k / (s - xi_k). The "+1" makes r1 strictly proper.
/// The r2 denominator is evaluated in the factored form D(s)D(z), which equals
/// the expanded four-sum identically. h2_grid is symmetrized on construction;
/// instances are immutable and safe for concurrent evaluation.
class LqoInterpolant {
  public:
    /// Throws DuplicatePoints for repeated support points, DataError for a
    /// zero weight or order 0, DimensionMismatch on inconsistent shapes.
    LqoInterpolant(ComplexVector support, ComplexVector weights, ComplexVector h1_values,
                   ComplexMatrix h2_grid);

    Eigen::Index order() const { return support_.size(); }
    const ComplexVector& support() const { return support_; }
    const ComplexVector& weights() const { return weights_; }
    const ComplexVector& h1_values() const { return h1_values_; }
    const ComplexMatrix& h2_grid() const { return h2_grid_; }

    /// Largest |h_kl - h_lk| of the grid passed to the constructor.
    double h2_asymmetry() const { return h2_asymmetry_; }

    /// Index of the support point within the snap window of s
    /// (|s - xi_i| <= 1e-13 * (1 + |xi_i|)), or -1. Nearest wins.
    Eigen::Index snap_index(Complex s) const;

  private:
    ComplexVector support_;
    ComplexVector weights_;
    ComplexVector h1_values_;
    ComplexMatrix h2_grid_;
    double h2_asymmetry_ = 0.0;
};

/// Barycentric denominator D(s). Support-point singularities are the caller's
/// concern; used by the evaluators and exposed as a pole indicator.
Complex barycentric_denominator(const LqoInterpolant& interp, Complex s);

/// Evaluates r1(s). At a support point (within the snap window) the stored
/// data value is returned directly, which makes interpolation exact and avoids
/// the 0/0 of the raw form. Throws ZeroDenominator if D underflows at a
/// non-support point.
Complex eval_r1(const LqoInterpolant& interp, Complex s);

/// Evaluates r2(s,z) with the factored denominator D(s)D(z). When both
/// arguments snap to support points the grid value is returned directly; when
/// exactly one snaps, the finite limit of the form is used. ZeroDenominator
/// messages name the vanished factor.
Complex eval_r2(const LqoInterpolant& interp, Complex s, Complex z);

/// Explicit state-space realization whose transfer functions are r1 and r2:
///
///     A_r = diag(xi) - 1 w^T,  b_r = 1,  (c_r)_k = w_k h_k,
///     (M_r)_{k,l} = w_k w_l h_{k,l}  (symmetrized).
///
/// The key identity is (sI - A_r)^{-1} 1 = [1/((s - xi_k) D(s))]_k, so
/// H1 = r1 and H2 = r2 at every non-pole point.
LqoModel realize(const LqoInterpolant& interp);

/// Poles of r1 (and of r2 in each variable): the eigenvalues of A_r, which
/// coincide with the roots of the cleared denominator polynomial. Sorted by
/// real part, then imaginary part.
std::vector<Complex> poles(const LqoInterpolant& interp);

} // namespace lqofit
