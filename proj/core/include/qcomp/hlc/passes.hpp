#pragma once

#include <cstddef>

#include "qcomp/hlc/library.hpp"
#include "qcomp/ir/circuit.hpp"

namespace qcomp::hlc {

/// Pending controls are dropped inside compute/uncompute sections and become
/// real controls everywhere else. Library calls with a registered controlled
/// variant absorb one pending control per variant step.
/// Throws ErrorCode::Compile when a pending control reaches a Measure.
[[nodiscard]] Circuit resolve_controls(const Circuit& c, const LibraryRegistry& reg = {});

struct InlineOptions {
    std::size_t max_depth = 64;
};

/// Replaces library calls by their bodies until none but opaque ones remain.
/// Calls are expanded in program order, each fully before the next.
/// Throws UnresolvedCall for unknown names and Recursion past max_depth.
[[nodiscard]] Circuit inline_libraries(const Circuit& c, const LibraryRegistry& reg,
                                       InlineOptions options = {});

/// Merges runs of rotations of the same kind on the same qubits and controls,
/// skipping commands on unrelated qubits, and drops rotations whose angle is a
/// multiple of the period within `tol`.
[[nodiscard]] Circuit fold_rotations(const Circuit& c, double tol = 1e-12);

/// resolve_controls, inline_libraries, fold_rotations.
[[nodiscard]] Circuit compile_high_level(const Circuit& c, const LibraryRegistry& reg,
                                         InlineOptions options = {});

}  // namespace qcomp::hlc
