#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcomp {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rz,
    Phase,
    CR,
    CNOT,
    Swap,
    Measure,
    Allocate,
    Deallocate,
    LibCall,
};

inline constexpr GateKind kAllGateKinds[] = {
    GateKind::X,   GateKind::Y,     GateKind::Z,  GateKind::H,    GateKind::S,       GateKind::Sdg,
    GateKind::T,   GateKind::Tdg,   GateKind::Rz, GateKind::Phase, GateKind::CR,     GateKind::CNOT,
    GateKind::Swap, GateKind::Measure, GateKind::Allocate, GateKind::Deallocate, GateKind::LibCall,
};

/// Lowercase textual name, as used by the QIR text format and resource reports.
[[nodiscard]] std::string_view gate_name(GateKind kind);
[[nodiscard]] std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// Kinds carrying a rotation angle.
[[nodiscard]] constexpr bool is_rotation(GateKind k) {
    return k == GateKind::Rz || k == GateKind::Phase || k == GateKind::CR;
}

/// Kinds with a defined unitary matrix.
[[nodiscard]] constexpr bool is_unitary(GateKind k) {
    return k != GateKind::Measure && k != GateKind::Allocate && k != GateKind::Deallocate &&
           k != GateKind::LibCall;
}

/// Measure, Allocate and Deallocate: qubit bookkeeping rather than gates.
[[nodiscard]] constexpr bool is_bookkeeping(GateKind k) {
    return k == GateKind::Measure || k == GateKind::Allocate || k == GateKind::Deallocate;
}

/// CNOT and CR carry one control as part of their definition.
[[nodiscard]] constexpr int builtin_controls(GateKind k) {
    return (k == GateKind::CNOT || k == GateKind::CR) ? 1 : 0;
}

/// Rotation period of the angle parameter (Rz is 4pi-periodic, phases 2pi).
[[nodiscard]] double rotation_period(GateKind k);

/// An unresolved library call such as `ccphiadd(qpe_ctrl, x[i], a, b)`.
struct LibCall {
    std::string name;
    std::vector<std::int64_t> params;
    std::vector<std::size_t> register_sizes;

    [[nodiscard]] std::size_t arity() const;
    friend bool operator==(const LibCall&, const LibCall&) = default;
};

struct Gate {
    GateKind kind = GateKind::X;
    double angle = 0.0;
    std::optional<LibCall> lib;

    static Gate simple(GateKind kind) { return Gate{kind, 0.0, std::nullopt}; }
    static Gate rz(double theta) { return Gate{GateKind::Rz, theta, std::nullopt}; }
    static Gate phase(double theta) { return Gate{GateKind::Phase, theta, std::nullopt}; }
    static Gate cr(double theta) { return Gate{GateKind::CR, theta, std::nullopt}; }
    static Gate call(std::string name, std::vector<std::int64_t> params,
                     std::vector<std::size_t> register_sizes);

    /// Qubits acted on, counting the built-in control of CNOT/CR.
    [[nodiscard]] std::size_t arity() const;

    /// The adjoint gate (T <-> Tdg, Rz(t) -> Rz(-t), qft <-> iqft, ...).
    [[nodiscard]] Gate adjoint() const;

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// Name of the adjoint of a library routine: known pairs (qft/iqft, phiadd/phisub, ...)
/// swap, anything else toggles a `_dg` suffix.
[[nodiscard]] std::string adjoint_library_name(std::string_view name);

}  // namespace qcomp
