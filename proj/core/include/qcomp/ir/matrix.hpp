#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qcomp/ir/gate.hpp"

namespace qcomp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Dense unitary of a gate kind. CNOT and CR are 4x4 with the control as the
/// higher-order index. Throws UnsupportedKind for non-unitary kinds.
[[nodiscard]] Matrix gate_matrix(const Gate& g);

/// The single-target operator a command applies once all its controls are
/// satisfied: X for CNOT, Phase(t) for CR, the 4x4 swap for Swap, otherwise
/// gate_matrix().
[[nodiscard]] Matrix base_matrix(const Gate& g);

/// block-diag(I, ..., I, U): the controls occupy the high-order index bits.
[[nodiscard]] Matrix controlled(const Matrix& u, std::size_t num_controls = 1);

/// min over phi of the spectral norm || a - e^{i phi} b ||.
[[nodiscard]] double phase_invariant_distance(const Matrix& a, const Matrix& b);

/// Closed form of phase_invariant_distance for 2x2 unitaries:
/// sqrt(2 - |tr(a^dagger b)|).
[[nodiscard]] double phase_invariant_distance(const Matrix2& a, const Matrix2& b);

/// max |(u^dagger u - I)_ij|.
[[nodiscard]] double unitarity_error(const Matrix& u);

}  // namespace qcomp
