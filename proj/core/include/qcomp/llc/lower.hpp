#pragma once

#include <cstddef>
#include <vector>

#include "qcomp/ir/circuit.hpp"
#include "qcomp/llc/decompose.hpp"
#include "qcomp/llc/synthesis.hpp"

namespace qcomp::llc {

struct LoweringOptions {
    /// Tolerance for every synthesized rotation.
    double epsilon = 1e-2;
    DecompositionStrategy strategy = DecompositionStrategy::CnotSandwich;
    bool peephole = true;
    /// Defaults to default_synthesizer().
    Synthesizer* synthesizer = nullptr;
};

/// One synthesized rotation.
struct RotationRecord {
    Qubit qubit;
    double angle;
    double distance;
    std::size_t word_length;
};

struct LoweringResult {
    Circuit circuit;
    std::vector<RotationRecord> rotations;

    /// Sum of per-rotation distances, an upper bound on the distance between
    /// the lowered and the original unitary (modulo global phase).
    [[nodiscard]] double error_bound() const;
};

/// Fully inlined QIR to LLQIR over {H, T, Tdg, S, Sdg, X, Z, CNOT}.
/// Throws Compile for library calls or pending controls and propagates
/// SynthesisFailure.
[[nodiscard]] LoweringResult lower(const Circuit& c, const LoweringOptions& options = {});

}  // namespace qcomp::llc
