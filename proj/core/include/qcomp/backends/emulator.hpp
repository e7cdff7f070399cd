#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcomp/backends/simulator.hpp"
#include "qcomp/backends/statevector.hpp"
#include "qcomp/ir/circuit.hpp"

namespace qcomp::backends {

/// Classical action of a library call on the local index of its qubits: bit i
/// of the local index is the call's i-th target (registers concatenated, each
/// register least-significant bit first). Checked to be a bijection on use.
using PermutationAction = std::function<std::uint64_t(const LibCall& call, std::uint64_t local)>;
using DiagonalAction = std::function<Complex(const LibCall& call, std::uint64_t local)>;
/// In-place transform of the 2^k local amplitudes of one control-satisfying block.
using BlockAction = std::function<void(const LibCall& call, std::vector<Complex>& local)>;

struct EmulatorOptions {
    std::size_t max_qubits = 26;
    /// Largest block width emulated by dense matrix power.
    std::size_t power_threshold = 10;
};

struct EmulationResult {
    Statevector state;
    /// Exact distribution of the terminal measurement, if the circuit ends in one.
    std::optional<Distribution> distribution;
};

/// Runs circuits that still contain library calls by applying each call's
/// classical or spectral shortcut instead of its gate body. Ordinary gates go
/// through the gate-level simulator.
///
/// Built in: qft/iqft (FFT, matching the gate-level ladder) and "power" calls
/// registered with register_block. Arithmetic shortcuts are registered by the
/// library that defines the calls.
class Emulator {
public:
    explicit Emulator(EmulatorOptions options = {});

    void register_permutation(const std::string& name, PermutationAction f);
    void register_diagonal(const std::string& name, DiagonalAction f);
    void register_block(const std::string& name, BlockAction f);
    /// Calls named `name` apply `block` raised to the call's first parameter
    /// (repeated squaring of the dense block unitary). The call's targets
    /// take the place of the block's qubits 0..k-1.
    void register_power(const std::string& name, Circuit block);
    [[nodiscard]] bool handles(const std::string& name) const;

    /// Measurement may only appear at the end; its exact distribution is returned.
    [[nodiscard]] EmulationResult emulate(const Circuit& c, std::uint64_t basis_index = 0);
    [[nodiscard]] EmulationResult emulate(const Circuit& c, Statevector init);

    /// Applies one command (gate or library call) to `sv`.
    void apply(Statevector& sv, const Command& cmd);

private:
    void apply_call(Statevector& sv, const Command& cmd);
    const Matrix& power_of(const std::string& name, std::uint64_t k);

    EmulatorOptions options_;
    Simulator sim_;
    std::map<std::string, BlockAction> blocks_;
    std::map<std::string, PermutationAction> permutations_;
    std::map<std::string, DiagonalAction> diagonals_;
    std::map<std::string, Circuit> power_blocks_;
    std::map<std::pair<std::string, std::uint64_t>, Matrix> power_cache_;
};

/// Dense unitary `u` to the power k by repeated squaring.
[[nodiscard]] Matrix matrix_power(const Matrix& u, std::uint64_t k);

/// Gate-level QFT convention on 2^n local amplitudes: |x> goes to
/// sum_k e^{2 pi i x k / 2^n} |rev(k)> / sqrt(2^n), rev reversing n bits.
void fourier_transform(std::vector<Complex>& local, bool inverse);

[[nodiscard]] std::uint64_t reverse_bits(std::uint64_t v, std::size_t n);

}  // namespace qcomp::backends
