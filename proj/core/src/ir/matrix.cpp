#include "qcomp/ir/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qcomp/error.hpp"

namespace qcomp {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix diag2(Complex a, Complex b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

Matrix base_matrix(const Gate& g) {
    const double r2 = 1.0 / std::numbers::sqrt2;
    Matrix m(2, 2);
    switch (g.kind) {
        case GateKind::X:
        case GateKind::CNOT:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::Y:
            m << 0, -kI, kI, 0;
            return m;
        case GateKind::Z: return diag2(1, -1);
        case GateKind::H:
            m << r2, r2, r2, -r2;
            return m;
        case GateKind::S: return diag2(1, kI);
        case GateKind::Sdg: return diag2(1, -kI);
        case GateKind::T: return diag2(1, std::polar(1.0, std::numbers::pi / 4));
        case GateKind::Tdg: return diag2(1, std::polar(1.0, -std::numbers::pi / 4));
        case GateKind::Rz: return diag2(std::polar(1.0, -g.angle / 2), std::polar(1.0, g.angle / 2));
        case GateKind::Phase:
        case GateKind::CR: return diag2(1, std::polar(1.0, g.angle));
        case GateKind::Swap: {
            Matrix s = Matrix::Zero(4, 4);
            s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1;
            return s;
        }
        default:
            throw Error(ErrorCode::UnsupportedKind,
                        "gate kind '" + std::string(gate_name(g.kind)) + "' has no unitary matrix");
    }
}

Matrix gate_matrix(const Gate& g) {
    Matrix base = base_matrix(g);
    if (builtin_controls(g.kind) > 0) return controlled(base, 1);
    return base;
}

Matrix controlled(const Matrix& u, std::size_t num_controls) {
    const Eigen::Index d = u.rows();
    const Eigen::Index total = d << num_controls;
    Matrix m = Matrix::Identity(total, total);
    m.bottomRightCorner(d, d) = u;
    return m;
}

namespace {

// Same value as sqrt(2 - |tr w|), computed from the half-angle of w scaled
// into SU(2) so it stays accurate when w is close to the identity.
double su2_distance(const Matrix2& w) {
    const Complex s = std::sqrt(w.determinant());
    const Matrix2 v = w / s;
    const Complex alpha = 0.5 * (v(0, 0) + std::conj(v(1, 1)));
    const Complex beta = 0.5 * (v(1, 0) - std::conj(v(0, 1)));
    const double half = std::atan2(std::hypot(alpha.imag(), std::abs(beta)), std::abs(alpha.real()));
    return 2.0 * std::sin(half / 2.0);
}

}  // namespace

double phase_invariant_distance(const Matrix& a, const Matrix& b) {
    const Matrix w = a.adjoint() * b;
    if (w.rows() == 2) return su2_distance(w);
    Eigen::ComplexEigenSolver<Matrix> solver(w, false);
    std::vector<double> phases;
    phases.reserve(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index i = 0; i < w.rows(); ++i) phases.push_back(std::arg(solver.eigenvalues()(i)));
    std::sort(phases.begin(), phases.end());
    // Smallest arc covering every eigenphase = 2pi minus the largest gap.
    double gap = phases.front() + 2.0 * std::numbers::pi - phases.back();
    for (std::size_t i = 1; i < phases.size(); ++i) gap = std::max(gap, phases[i] - phases[i - 1]);
    const double arc = std::max(0.0, 2.0 * std::numbers::pi - gap);
    return 2.0 * std::sin(arc / 4.0);
}

double phase_invariant_distance(const Matrix2& a, const Matrix2& b) {
    return su2_distance(a.adjoint() * b);
}

double unitarity_error(const Matrix& u) {
    const Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

}  // namespace qcomp
