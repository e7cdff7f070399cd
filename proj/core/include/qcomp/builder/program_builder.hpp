#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qcomp/ir/circuit.hpp"

namespace qcomp::builder {

/// An ordered register of qubits; index 0 is the least-significant bit when the
/// register is read as an unsigned integer (quint).
struct QuReg {
    std::uint32_t id = 0;
    std::vector<Qubit> qubits;
    std::optional<std::uint64_t> init;
    bool ancilla = false;

    [[nodiscard]] std::size_t size() const { return qubits.size(); }
    [[nodiscard]] Qubit operator[](std::size_t i) const { return qubits.at(i); }
    [[nodiscard]] Qubit msb() const { return qubits.back(); }
};

/// Programmatic front-end producing tagged QIR.
///
/// Meta functions take callables that emit into the same builder:
///
///     b.with_compute([&](auto& b) { b.call("qft", {}, {x.qubits}); },
///                    [&](auto& b) { b.call("phiadd", {a}, {x.qubits}); });
///
/// emits qft{compute}; phiadd; iqft{uncompute}.
class ProgramBuilder {
public:
    using Body = std::function<void(ProgramBuilder&)>;

    ProgramBuilder() = default;
    /// Starts with `existing_qubits` qubits that are live without Allocate
    /// commands; used when generating library bodies on caller-owned qubits.
    /// Indices in `reusable` are treated as free and handed out by allocations
    /// (lowest first) before the width grows.
    explicit ProgramBuilder(std::size_t existing_qubits, std::vector<Qubit> reusable = {});

    /// Emits Allocate for n fresh qubits, then X on every 1-bit of `init`.
    QuReg allocate_qureg(std::size_t n, std::uint64_t init = 0);
    /// Scratch register that must be deallocated before finish().
    QuReg allocate_ancilla(std::size_t n);
    void deallocate(const QuReg& reg);
    /// Wraps caller-owned qubits (no commands emitted).
    [[nodiscard]] QuReg view(std::vector<Qubit> qubits) const;

    void apply(Command cmd);
    void gate(GateKind kind, Qubit target);
    void x(Qubit q) { gate(GateKind::X, q); }
    void h(Qubit q) { gate(GateKind::H, q); }
    void rz(double theta, Qubit q);
    void phase(double theta, Qubit q);
    void cnot(Qubit control, Qubit target);
    void cr(double theta, Qubit control, Qubit target);
    void swap(Qubit a, Qubit b);
    void measure(std::vector<Qubit> qubits);
    void call(std::string name, std::vector<std::int64_t> params,
              const std::vector<std::vector<Qubit>>& registers);
    void append(std::span<const Command> cmds);

    /// compute{compute}; action; inverse(compute){uncompute}.
    void with_compute(const Body& compute, const Body& action);
    /// Same, with a caller-supplied uncomputation replacing the automatic inverse.
    void with_compute(const Body& compute, const Body& action, const Body& uncompute);

    /// Records `ctrl` as a pending control on every command of `body`; the
    /// high-level compiler decides which commands actually need it.
    void with_control(Qubit ctrl, const Body& body);

    /// body0 when ctrl is |0>, body1 when ctrl is |1>. The conditional inverse
    /// rotation (body1 = Rz(-t) on the target of body0 = Rz(t)) becomes
    /// CNOT; Rz(t); CNOT.
    void quifelse(Qubit ctrl, const Body& body0, const Body& body1);

    /// Emits `body` k times; the loop bound is classical.
    void repeat_classical(std::size_t k, const Body& body);

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::span<const Command> commands() const { return commands_; }

    /// Closes the program. Throws if a scope is open, if an ancilla register is
    /// still allocated, or if the result does not validate.
    [[nodiscard]] Circuit finish();

private:
    enum class ScopeKind { Compute, Action, Uncompute, Control, IfElse, Repeat };
    struct Scope {
        ScopeKind kind;
        std::size_t start;
    };
    class ScopeGuard;

    std::vector<Command> capture(ScopeKind kind, const Body& body);
    void emit(Command cmd);
    void add_control_to(std::span<Command> cmds, Qubit ctrl) const;
    [[nodiscard]] bool inside(ScopeKind kind) const;

    std::size_t num_qubits_ = 0;
    std::uint32_t next_register_ = 0;
    std::uint32_t next_section_ = 0;
    std::vector<Command> commands_;
    std::vector<Scope> scopes_;
    std::set<Qubit> live_;
    std::vector<QuReg> ancillas_;
    std::vector<Qubit> reusable_;  // descending, so back() is the lowest
};

}  // namespace qcomp::builder
