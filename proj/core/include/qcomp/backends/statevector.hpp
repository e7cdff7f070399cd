#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qcomp/ir/gate.hpp"
#include "qcomp/ir/matrix.hpp"

namespace qcomp::backends {

/// Dense state of n qubits. Qubit 0 is the least-significant bit of the
/// logical basis index.
///
/// Amplitudes are stored under a qubit-to-storage-bit relabeling so that an
/// uncontrolled swap only permutes the labels.
class Statevector {
public:
    Statevector() = default;
    explicit Statevector(std::size_t num_qubits, std::uint64_t basis_index = 0);

    /// Builds a state from amplitudes in logical order; the size must be a power of two.
    static Statevector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::uint64_t dimension() const { return std::uint64_t{1} << num_qubits_; }

    [[nodiscard]] Complex amplitude(std::uint64_t logical_index) const;
    /// All amplitudes in logical order.
    [[nodiscard]] std::vector<Complex> amplitudes() const;
    [[nodiscard]] double norm_squared() const;
    /// Probability of reading 1 on `q`.
    [[nodiscard]] double probability_one(Qubit q) const;

    /// Applies `u` to `target` on the subspace where every qubit in `controls` is 1.
    void apply_single(const Matrix2& u, Qubit target, std::span<const Qubit> controls = {});
    /// Diagonal fast path of apply_single.
    void apply_diagonal(Complex d0, Complex d1, Qubit target, std::span<const Qubit> controls = {});
    /// Uncontrolled swaps only relabel; controlled swaps move amplitudes.
    void apply_swap(Qubit a, Qubit b, std::span<const Qubit> controls = {});

    /// |i> -> |f(i)> on logical indices; `f` must be a bijection.
    void apply_permutation(const std::function<std::uint64_t(std::uint64_t)>& f);
    /// |i> -> phase(i) |i>.
    void apply_phase(const std::function<Complex(std::uint64_t)>& phase);

    /// Overwrites the amplitude vector (logical order) and resets the relabeling.
    void assign(std::vector<Complex> amplitudes);

    /// Sets every amplitude whose bits at `qubits` differ from `outcome` to zero
    /// and rescales by 1/sqrt(probability).
    void project(std::span<const Qubit> qubits, std::uint64_t outcome, double probability);

    [[nodiscard]] std::uint64_t storage_index(std::uint64_t logical_index) const;
    [[nodiscard]] std::uint64_t logical_index(std::uint64_t storage_index) const;

private:
    [[nodiscard]] std::uint64_t control_mask(std::span<const Qubit> controls) const;
    void check_qubit(Qubit q) const;

    std::size_t num_qubits_ = 0;
    std::vector<Complex> amps_;
    std::vector<unsigned> storage_bit_;  // logical qubit -> storage bit
};

/// Number of worker threads used by amplitude kernels (default 1).
void set_kernel_threads(unsigned threads);
[[nodiscard]] unsigned kernel_threads();

}  // namespace qcomp::backends
