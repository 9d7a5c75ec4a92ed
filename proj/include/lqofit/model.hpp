#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "lqofit/errors.hpp"

namespace lqofit {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// State-space data of a single-input single-output linear system with
/// quadratic output:
///
///     x'(t) = A x(t) + b u(t)
///     y(t)  = c^T x(t) + x(t)^T M x(t)
///
/// The quadratic map M is stored symmetrized, M = (M + M^T)/2; the output is
/// invariant under this canonicalization. Instances are immutable after
/// construction and safe to evaluate concurrently.
class LqoModel {
  public:
    /// Validates dimensions and symmetrizes M. Throws DimensionMismatch on
    /// inconsistent shapes.
    LqoModel(ComplexMatrix A, ComplexVector b, ComplexVector c, ComplexMatrix M);

    Eigen::Index dim() const { return A_.rows(); }
    const ComplexMatrix& A() const { return A_; }
    const ComplexVector& b() const { return b_; }
    const ComplexVector& c() const { return c_; }
    const ComplexMatrix& M() const { return M_; }

    /// Largest |M_kl - M_lk| of the matrix passed to the constructor, i.e. the
    /// asymmetry removed by canonicalization.
    double m_asymmetry() const { return m_asymmetry_; }

    /// True when every eigenvalue of A has strictly negative real part.
    bool is_stable() const;

    /// True when all matrices have imaginary parts below tol (absolute).
    bool is_real(double tol = 0.0) const;

    /// True when c is exactly the zero vector (output is purely quadratic).
    bool quad_only() const;

  private:
    ComplexMatrix A_;
    ComplexVector b_;
    ComplexVector c_;
    ComplexMatrix M_;
    double m_asymmetry_ = 0.0;
};

/// Uniformly sampled real-valued signal starting at t0 with step dt.
class TimeSignal {
  public:
    TimeSignal(double t0, double dt, std::vector<double> values);

    double t0() const { return t0_; }
    double dt() const { return dt_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double time(std::size_t i) const { return t0_ + dt_ * static_cast<double>(i); }

  private:
    double t0_;
    double dt_;
    std::vector<double> values_;
};

/// Linear transfer function H1(s) = c^T (sI - A)^{-1} b, computed with one LU
/// solve. Throws SingularShift when sI - A is numerically singular (s is a
/// pole of the model).
Complex eval_h1(const LqoModel& model, Complex s);

/// Quadratic transfer function H2(s,z) = x(s)^T M x(z) with
/// x(.) = (.I - A)^{-1} b; two LU solves and one bilinear form. SingularShift
/// messages name the variable that hit a pole.
Complex eval_h2(const LqoModel& model, Complex s, Complex z);

/// Integrates the state equation from x(0) = 0 with classical fixed-step RK4
/// on the input grid; input values are interpolated linearly at half-steps.
/// Output samples are Re(c^T x + x^T M x); for real models and for
/// conjugate-symmetric realizations the imaginary component is at rounding
/// level. Throws NonFiniteState if the state overflows.
TimeSignal simulate(const LqoModel& model, const TimeSignal& input);

enum class BenchmarkKind {
    Diag,         ///< distinct real poles -1, -2, ..., -order; b = c = ones, M = I
    RandomStable, ///< seeded random A shifted into the left half-plane; random b, c, symmetric M
    QuadOnly,     ///< RandomStable with the same draws and c = 0
};

/// Deterministic stable test systems. Identical (kind, order, seed) tuples
/// produce identical models; QuadOnly shares A, b, M with RandomStable at the
/// same seed. Throws DataError for order < 1.
LqoModel make_benchmark(BenchmarkKind kind, int order, std::uint64_t seed);

/// Maps "diag" / "random-stable" / "quad-only"; throws DataError otherwise.
BenchmarkKind parse_benchmark_kind(std::string_view name);

} // namespace lqofit
