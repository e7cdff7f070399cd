#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qcomp/ir/gate.hpp"

namespace qcomp {

enum class SectionTag : std::uint8_t { None, Compute, Uncompute };

/// Compute/uncompute annotation. A compute block and the uncompute block that
/// reverses it share the same id.
struct Section {
    SectionTag tag = SectionTag::None;
    std::uint32_t id = 0;

    friend bool operator==(const Section&, const Section&) = default;
};

/// One gate application.
///
/// `controls` is kept sorted and includes the built-in control of CNOT/CR.
/// `pending` holds controls recorded by a builder `with_control` scope that the
/// high-level compiler has not resolved yet.
struct Command {
    Gate gate;
    std::vector<Qubit> targets;
    std::vector<Qubit> controls;
    std::vector<Qubit> pending;
    Section section;

    static Command single(GateKind kind, Qubit target);
    static Command rz(double theta, Qubit target);
    static Command phase(double theta, Qubit target);
    static Command cnot(Qubit control, Qubit target);
    static Command cr(double theta, Qubit control, Qubit target);
    static Command swap(Qubit a, Qubit b);
    static Command measure(std::vector<Qubit> qubits);
    static Command call(std::string name, std::vector<std::int64_t> params,
                        const std::vector<std::vector<Qubit>>& registers);

    /// Controls followed by targets (pending controls excluded).
    [[nodiscard]] std::vector<Qubit> qubits() const;
    /// Controls, pending controls and targets.
    [[nodiscard]] std::vector<Qubit> all_qubits() const;

    /// Adds controls keeping the set sorted and free of duplicates.
    void add_controls(const std::vector<Qubit>& extra);
    void add_pending(const std::vector<Qubit>& extra);

    /// Register slices of a LibCall's targets.
    [[nodiscard]] std::vector<std::vector<Qubit>> registers() const;

    friend bool operator==(const Command&, const Command&) = default;
};

enum class Level : std::uint8_t { QIR, LLQIR };

/// The discrete set every LLQIR circuit is lowered to.
[[nodiscard]] std::set<GateKind> default_llqir_gateset();

struct Circuit {
    std::size_t num_qubits = 0;
    Level level = Level::QIR;
    std::vector<Command> commands;
    std::set<GateKind> gateset;

    Circuit() = default;
    explicit Circuit(std::size_t n, Level lvl = Level::QIR);

    void push_back(Command cmd) { commands.push_back(std::move(cmd)); }
    void append(const std::vector<Command>& cmds);
    [[nodiscard]] std::size_t size() const { return commands.size(); }
    [[nodiscard]] bool empty() const { return commands.empty(); }

    /// Smallest section id not used by any command.
    [[nodiscard]] std::uint32_t next_section_id() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Commands reversed and each gate replaced by its adjoint; compute and
/// uncompute tags trade places. Throws NonInvertible on Measure.
[[nodiscard]] Circuit inverse(const Circuit& c);
[[nodiscard]] std::vector<Command> inverse(const std::vector<Command>& cmds);

struct Diagnostic {
    /// Index of the offending command, or npos for circuit-level findings.
    std::size_t index;
    std::string message;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Checks bounds, disjointness, arity, level/gateset consistency and
/// compute/uncompute pairing. An empty result means the circuit is valid.
[[nodiscard]] std::vector<Diagnostic> validate(const Circuit& c);

/// Throws ErrorCode::Validation listing every diagnostic.
void require_valid(const Circuit& c);

}  // namespace qcomp
