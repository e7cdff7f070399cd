#pragma once

#include <optional>
#include <vector>

#include "qcomp/ir/circuit.hpp"

namespace qcomp::llc {

/// Controlled-rotation constructions.
enum class DecompositionStrategy {
    CnotSandwich,      // (a) rotations on the target between two CNOTs
    ParallelRotation,  // (b) rotations on control and target, parallel in time
    FredkinAncilla,    // (c) controlled swaps into a clean ancilla around one rotation
};

/// C-Rz(theta) with exactly one control. FredkinAncilla needs `ancilla`, a
/// qubit in |0> that is returned clean.
[[nodiscard]] std::vector<Command> decompose_controlled_rz(
    const Command& cmd, DecompositionStrategy strategy = DecompositionStrategy::CnotSandwich,
    std::optional<Qubit> ancilla = std::nullopt);

/// CR(theta). Angles pi/2, -pi/2 and pi become exact Clifford+T sequences;
/// other angles become Rz(theta/2) on the control plus C-Rz(theta).
[[nodiscard]] std::vector<Command> decompose_controlled_phase(
    const Command& cmd, DecompositionStrategy strategy = DecompositionStrategy::CnotSandwich,
    std::optional<Qubit> ancilla = std::nullopt);

/// Toffoli with 6 CNOTs and 7 T/Tdg gates.
[[nodiscard]] std::vector<Command> toffoli(Qubit a, Qubit b, Qubit target);

/// Rewrites every command into uncontrolled single-qubit gates (Clifford+T
/// letters, Rz, Phase) and single-control CNOTs. Rotations are left
/// unsynthesized. Gates with several controls first AND their controls into
/// ancillas, which are allocated above the input width and reused.
[[nodiscard]] Circuit expand_controlled(const Circuit& c,
                                        DecompositionStrategy strategy = DecompositionStrategy::CnotSandwich);

}  // namespace qcomp::llc
