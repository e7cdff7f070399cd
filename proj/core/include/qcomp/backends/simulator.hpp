#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qcomp/backends/statevector.hpp"
#include "qcomp/ir/circuit.hpp"

namespace qcomp::backends {

/// Seeded generator shared by every sampling routine. Doubles are drawn from
/// the top 53 bits so transcripts do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [0, bound) from the high bits (low bits of nearby seeds correlate).
    std::uint64_t below(std::uint64_t bound) {
        return bound ? static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)) % bound : 0;
    }

private:
    std::mt19937_64 engine_;
};

/// Outcome probabilities over a list of measured qubits; bit i of an outcome
/// is the value read on qubits[i].
struct Distribution {
    std::vector<Qubit> qubits;
    std::map<std::uint64_t, double> probabilities;

    [[nodiscard]] double total() const;
    [[nodiscard]] double probability(std::uint64_t outcome) const;
    /// Most likely outcome (smallest index on ties).
    [[nodiscard]] std::uint64_t mode() const;
    /// Draws one outcome by inverse-CDF over ascending outcome order.
    [[nodiscard]] std::uint64_t sample(Rng& rng) const;
};

/// Marginal distribution of `qubits` in `sv`; entries below `cutoff` are dropped.
[[nodiscard]] Distribution marginal(const Statevector& sv, std::span<const Qubit> qubits,
                                    double cutoff = 0.0);

[[nodiscard]] double total_variation(const Distribution& a, const Distribution& b);

struct MeasureResult {
    std::uint64_t outcome;  // bit i = qubits[i]
    Statevector state;
};

/// Samples `qubits` from their marginal distribution and collapses the state.
/// Outcomes with probability below 1e-15 are never drawn.
[[nodiscard]] MeasureResult measure(Statevector sv, std::span<const Qubit> qubits, Rng& rng);

struct SimulatorOptions {
    std::size_t max_qubits = 26;
};

/// Gate-level statevector simulator. Each command is an in-place kernel over
/// amplitude pairs selected by target and control bits.
class Simulator {
public:
    explicit Simulator(SimulatorOptions options = {}) : options_(options) {}

    [[nodiscard]] Statevector simulate(const Circuit& c, std::uint64_t basis_index = 0);
    [[nodiscard]] Statevector simulate(const Circuit& c, Statevector init);

    /// Applies one measurement-free command.
    void apply(Statevector& sv, const Command& cmd);

    /// Warnings from the last run (e.g. deallocating a qubit not in |0>).
    [[nodiscard]] const std::vector<std::string>& warnings() const { return warnings_; }

    [[nodiscard]] const SimulatorOptions& options() const { return options_; }

private:
    void check_capacity(std::size_t n) const;

    SimulatorOptions options_;
    std::vector<std::string> warnings_;
};

/// Dense unitary of a measurement-free circuit, column i = simulate(|i>).
[[nodiscard]] Matrix unitary_of(const Circuit& c);

}  // namespace qcomp::backends
