#pragma once

#include "qcomp/ir/circuit.hpp"

namespace qcomp::llc {

/// Local rewriting to a fixpoint: adjacent inverse pairs cancel (H H, X X,
/// Y Y, Z Z, CNOT CNOT, Swap Swap, T Tdg, S Sdg) and adjacent diagonal
/// Clifford+T letters on one qubit merge when the product is a single letter
/// (T T -> S, S S -> Z, Tdg Tdg -> Sdg, ...). "Adjacent" skips commands on
/// other qubits. Never increases gate count or T-count.
[[nodiscard]] Circuit peephole_optimize(const Circuit& c);

}  // namespace qcomp::llc
