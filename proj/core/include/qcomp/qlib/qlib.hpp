#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qcomp/backends/emulator.hpp"
#include "qcomp/backends/resources.hpp"
#include "qcomp/builder/program_builder.hpp"
#include "qcomp/hlc/library.hpp"
#include "qcomp/ir/circuit.hpp"

/// Quantum library routines. Registers are lists of qubits, least-significant
/// bit first.
///
/// Fourier convention: qft maps |x> to sum_k e^{2 pi i x k / 2^n} |rev(k)>
/// / sqrt(2^n), rev reversing the n bits. There is no terminal swap network;
/// after qft, qubit j of the register carries the phase e^{2 pi i x / 2^{j+1}}.
namespace qcomp::qlib {

/// Ladder H(n-1), CR(pi/2) from n-2, ..., H(0) on `reg`.
void emit_qft(builder::ProgramBuilder& b, const std::vector<Qubit>& reg);
/// Inverse ladder, starting with H on reg[0].
void emit_iqft(builder::ProgramBuilder& b, const std::vector<Qubit>& reg);
[[nodiscard]] Circuit qft(std::size_t n);
[[nodiscard]] Circuit iqft(std::size_t n);

/// Adds the classical `a` to a register in Fourier space: Phase(2 pi a / 2^{j+1})
/// on reg[j], each controlled by every qubit in `controls` (at most two).
void emit_phi_add(builder::ProgramBuilder& b, std::int64_t a, const std::vector<Qubit>& reg,
                  const std::vector<Qubit>& controls = {});
/// Qubits: controls first, then the n-qubit register.
[[nodiscard]] Circuit draper_phi_add(std::int64_t a, std::size_t n, std::size_t num_controls = 0);

/// |x>|y> -> |x>|x + y mod 2^n> by Draper's Fourier-space adder.
/// Qubits: x = 0..n-1, y = n..2n-1.
[[nodiscard]] Circuit draper_add(std::size_t n);

/// Cuccaro ripple-carry adder |x>|y>|0> -> |x>|x + y mod 2^n>|0>.
/// Qubits: x = 0..n-1, y = n..2n-1, carry ancilla 2n (absent for n = 1,
/// which is a single CNOT).
void emit_cuccaro_add(builder::ProgramBuilder& b, const std::vector<Qubit>& x, const std::vector<Qubit>& y,
                      Qubit carry);
[[nodiscard]] Circuit cuccaro_add(std::size_t n);

/// Bits needed for values below N.
[[nodiscard]] std::size_t bits_for(std::uint64_t N);

/// Beauregard modular addition on a Fourier-space register as library calls:
/// phi(b) -> phi((b + a) mod N) for b < N, with `b` of n+1 qubits (the last is
/// the overflow bit) and a clean comparison ancilla. Only the additions of
/// `a` carry `controls`.
void emit_modadd(builder::ProgramBuilder& b, std::int64_t a, std::int64_t N, const std::vector<Qubit>& reg,
                 Qubit ancilla, const std::vector<Qubit>& controls = {});
/// Qubits: controls, then b (n+1), then the ancilla.
[[nodiscard]] Circuit modadd_beauregard(std::int64_t a, std::int64_t N, std::size_t num_controls = 0);

/// b -> b + a x mod N (b in the computational basis, n+1 qubits) as
/// doubly-controlled modular additions of a 2^i mod N.
void emit_mult_add(builder::ProgramBuilder& b, std::int64_t a, std::int64_t N, const std::vector<Qubit>& x,
                   const std::vector<Qubit>& acc, const std::vector<Qubit>& controls = {});

/// |x> -> |a x mod N> on x < N when every control is 1. Ancillas: n+2.
/// Throws InvalidArgument when gcd(a, N) != 1.
void emit_ua(builder::ProgramBuilder& b, std::int64_t a, std::int64_t N, const std::vector<Qubit>& x,
             const std::vector<Qubit>& controls = {});
/// Qubits: control 0, x = 1..n; ancillas above.
[[nodiscard]] Circuit controlled_ua(std::int64_t a, std::int64_t N);

/// Emits controlled U^power with `ctrl` as control.
using ControlledPower = std::function<void(builder::ProgramBuilder& b, Qubit ctrl, std::uint64_t power)>;

/// Phase estimation: H on every ancilla, ancilla k controls U^{2^{m-1-k}},
/// then iqft on the ancillas (m = ancilla count). Measuring the ancillas
/// yields round(2^m phi) directly, with no bit reversal.
void emit_qpe(builder::ProgramBuilder& b, const std::vector<Qubit>& ancillas, const ControlledPower& power);
/// Qubits: ancillas 0..m-1, then `system_qubits` for U.
[[nodiscard]] Circuit qpe(std::size_t num_ancillas, std::size_t system_qubits, const ControlledPower& power);

/// a^e mod N without overflow for N < 2^32.
[[nodiscard]] std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t N);
/// Inverse of a modulo N; throws InvalidArgument when gcd(a, N) != 1.
[[nodiscard]] std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t N);

/// Generators for qft, phiadd, cphiadd, ccphiadd, modadd, cmodadd, ccmodadd,
/// multadd, cmultadd, ua, cua, qpe, draper_add and cuccaro. Adjoint names
/// (iqft, phisub, ...) resolve through the registry.
[[nodiscard]] const hlc::LibraryRegistry& standard_registry();

/// Registers emulator shortcuts for every call of the standard registry that
/// has a classical or diagonal action (qft/iqft are built into the emulator).
void register_emulation(backends::Emulator& emu);

struct AdderChoice {
    std::size_t n = 0;
    backends::ResourceReport draper;
    backends::ResourceReport cuccaro;
    std::string chosen;  // "draper" or "cuccaro"
    double cost = 0.0;
};

struct AutotuneOptions {
    double epsilon = 1e-2;
};

/// Lowers both adders for n-bit operands, counts them under `m` and picks the
/// cheaper one; ties go to the narrower circuit, then to draper. Results are
/// cached per (n, model, epsilon).
[[nodiscard]] AdderChoice autotune_adder(std::size_t n, const backends::CostModel& m,
                                         const AutotuneOptions& options = {});

}  // namespace qcomp::qlib
