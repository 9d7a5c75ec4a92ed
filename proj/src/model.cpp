#include "lqofit/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace lqofit {

namespace {

std::string format_complex(Complex v) {
    std::ostringstream out;
    out << v.real();
    if (v.imag() >= 0 || std::isnan(v.imag()))
        out << "+" << v.imag() << "i";
    else
        out << "-" << -v.imag() << "i";
    return out.str();
}

// Solves (sI - A) x = b; throws SingularShift naming the variable on a pole.
ComplexVector shifted_solve(const ComplexMatrix& A, const ComplexVector& b, Complex s,
                            const char* variable) {
    ComplexMatrix shifted = -A;
    shifted.diagonal().array() += s;
    Eigen::FullPivLU<ComplexMatrix> lu(shifted);
    if (!lu.isInvertible()) {
        std::ostringstream msg;
        msg << "shift " << variable << "I - A is singular at " << variable << " = "
            << format_complex(s);
        throw SingularShift(msg.str());
    }
    return lu.solve(b);
}

} // namespace

LqoModel::LqoModel(ComplexMatrix A, ComplexVector b, ComplexVector c, ComplexMatrix M)
    : A_(std::move(A)), b_(std::move(b)), c_(std::move(c)), M_(std::move(M)) {
    const Eigen::Index n = A_.rows();
    if (n < 1)
        throw DimensionMismatch("model dimension must be at least 1");
    if (A_.cols() != n)
        throw DimensionMismatch("A must be square");
    if (b_.size() != n)
        throw DimensionMismatch("b has length " + std::to_string(b_.size()) +
                                ", expected " + std::to_string(n));
    if (c_.size() != n)
        throw DimensionMismatch("c has length " + std::to_string(c_.size()) +
                                ", expected " + std::to_string(n));
    if (M_.rows() != n || M_.cols() != n)
        throw DimensionMismatch("M is " + std::to_string(M_.rows()) + "x" +
                                std::to_string(M_.cols()) + ", expected " +
                                std::to_string(n) + "x" + std::to_string(n));
    m_asymmetry_ = (M_ - M_.transpose()).cwiseAbs().maxCoeff();
    M_ = ((M_ + M_.transpose()) / 2.0).eval();
}

bool LqoModel::is_stable() const {
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(A_, /*computeEigenvectors=*/false);
    return (eig.eigenvalues().real().array() < 0.0).all();
}

bool LqoModel::is_real(double tol) const {
    const double imag_max = std::max({A_.imag().cwiseAbs().maxCoeff(),
                                      b_.imag().cwiseAbs().maxCoeff(),
                                      c_.imag().cwiseAbs().maxCoeff(),
                                      M_.imag().cwiseAbs().maxCoeff()});
    return imag_max <= tol;
}

bool LqoModel::quad_only() const {
    return (c_.array() == Complex(0.0, 0.0)).all();
}

TimeSignal::TimeSignal(double t0, double dt, std::vector<double> values)
    : t0_(t0), dt_(dt), values_(std::move(values)) {
    if (!(dt_ > 0.0))
        throw DataError("time step must be positive");
    if (values_.empty())
        throw DataError("signal must contain at least one sample");
}

Complex eval_h1(const LqoModel& model, Complex s) {
    const ComplexVector x = shifted_solve(model.A(), model.b(), s, "s");
    return (model.c().transpose() * x).value();
}

Complex eval_h2(const LqoModel& model, Complex s, Complex z) {
    const ComplexVector xs = shifted_solve(model.A(), model.b(), s, "s");
    const ComplexVector xz = shifted_solve(model.A(), model.b(), z, "z");
    return (xs.transpose() * (model.M() * xz)).value();
}

TimeSignal simulate(const LqoModel& model, const TimeSignal& input) {
    const Eigen::Index n = model.dim();
    const double dt = input.dt();
    const auto& u = input.values();

    ComplexVector x = ComplexVector::Zero(n);
    std::vector<double> y(u.size());

    auto output = [&](const ComplexVector& state) {
        const Complex lin = (model.c().transpose() * state).value();
        const Complex quad = (state.transpose() * (model.M() * state)).value();
        return (lin + quad).real();
    };
    auto rhs = [&](const ComplexVector& state, double uin) -> ComplexVector {
        return model.A() * state + model.b() * uin;
    };

    y[0] = output(x);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double u0 = u[i];
        const double u1 = u[i + 1];
        const double uh = 0.5 * (u0 + u1); // linear interpolation at the half-step

        const ComplexVector k1 = rhs(x, u0);
        const ComplexVector k2 = rhs(x + (dt / 2.0) * k1, uh);
        const ComplexVector k3 = rhs(x + (dt / 2.0) * k2, uh);
        const ComplexVector k4 = rhs(x + dt * k3, u1);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        if (!x.allFinite()) {
            std::ostringstream msg;
            msg << "state overflowed at t = " << input.time(i + 1);
            throw NonFiniteState(msg.str());
        }
        y[i + 1] = output(x);
    }
    return TimeSignal(input.t0(), dt, std::move(y));
}

namespace {

// Uniform draws in [-1, 1) straight from the generator's bits; avoids the
// implementation-defined behavior of std::uniform_real_distribution.
class UniformSource {
  public:
    explicit UniformSource(std::uint64_t seed) : gen_(seed) {}

    double next() {
        const std::uint64_t bits = gen_() >> 11; // 53 significant bits
        return 2.0 * (static_cast<double>(bits) * 0x1.0p-53) - 1.0;
    }

    ComplexVector vector(Eigen::Index n) {
        ComplexVector v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v[i] = Complex(next(), 0.0);
        return v;
    }

    ComplexMatrix matrix(Eigen::Index n) {
        ComplexMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)     // row-major draw order
            for (Eigen::Index j = 0; j < n; ++j)
                m(i, j) = Complex(next(), 0.0);
        return m;
    }

  private:
    std::mt19937_64 gen_;
};

} // namespace

LqoModel make_benchmark(BenchmarkKind kind, int order, std::uint64_t seed) {
    if (order < 1)
        throw DataError("benchmark order must be at least 1");
    const Eigen::Index n = order;

    if (kind == BenchmarkKind::Diag) {
        ComplexMatrix A = ComplexMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            A(i, i) = Complex(-static_cast<double>(i + 1), 0.0);
        return LqoModel(A, ComplexVector::Ones(n), ComplexVector::Ones(n),
                        ComplexMatrix::Identity(n, n));
    }

    UniformSource rng(seed);
    ComplexMatrix A = rng.matrix(n);
    ComplexVector b = rng.vector(n);
    ComplexVector c = rng.vector(n);
    ComplexMatrix M = rng.matrix(n); // symmetrized by the constructor

    // Shift the spectrum so the spectral abscissa lands at -1.
    Eigen::ComplexEigenSolver<ComplexMatrix> eig(A, /*computeEigenvectors=*/false);
    const double abscissa = eig.eigenvalues().real().maxCoeff();
    A.diagonal().array() -= Complex(abscissa + 1.0, 0.0);

    if (kind == BenchmarkKind::QuadOnly)
        c.setZero();
    return LqoModel(std::move(A), std::move(b), std::move(c), std::move(M));
}

BenchmarkKind parse_benchmark_kind(std::string_view name) {
    if (name == "diag")
        return BenchmarkKind::Diag;
    if (name == "random-stable")
        return BenchmarkKind::RandomStable;
    if (name == "quad-only")
        return BenchmarkKind::QuadOnly;
    throw DataError("unknown benchmark kind '" + std::string(name) +
                    "' (expected diag, random-stable, or quad-only)");
}

} // namespace lqofit
