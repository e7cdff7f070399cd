#include "qcomp/ir/gate.hpp"

#include <array>
#include <numbers>
#include <numeric>
#include <utility>

namespace qcomp {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 17> kNames{{
    {GateKind::X, "x"},
    {GateKind::Y, "y"},
    {GateKind::Z, "z"},
    {GateKind::H, "h"},
    {GateKind::S, "s"},
    {GateKind::Sdg, "sdg"},
    {GateKind::T, "t"},
    {GateKind::Tdg, "tdg"},
    {GateKind::Rz, "rz"},
    {GateKind::Phase, "phase"},
    {GateKind::CR, "cr"},
    {GateKind::CNOT, "cnot"},
    {GateKind::Swap, "swap"},
    {GateKind::Measure, "measure"},
    {GateKind::Allocate, "alloc"},
    {GateKind::Deallocate, "dealloc"},
    {GateKind::LibCall, "call"},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 4> kAdjointPairs{{
    {"qft", "iqft"},
    {"phiadd", "phisub"},
    {"cphiadd", "cphisub"},
    {"ccphiadd", "ccphisub"},
}};

}  // namespace

std::string_view gate_name(GateKind kind) {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (const auto& [k, n] : kNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

double rotation_period(GateKind k) {
    return k == GateKind::Rz ? 4.0 * std::numbers::pi : 2.0 * std::numbers::pi;
}

std::size_t LibCall::arity() const {
    return std::accumulate(register_sizes.begin(), register_sizes.end(), std::size_t{0});
}

Gate Gate::call(std::string name, std::vector<std::int64_t> params,
                std::vector<std::size_t> register_sizes) {
    return Gate{GateKind::LibCall, 0.0,
                LibCall{std::move(name), std::move(params), std::move(register_sizes)}};
}

std::size_t Gate::arity() const {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CR:
        case GateKind::Swap:
            return 2;
        case GateKind::LibCall:
            return lib ? lib->arity() : 0;
        default:
            return 1;
    }
}

Gate Gate::adjoint() const {
    Gate g = *this;
    switch (kind) {
        case GateKind::S: g.kind = GateKind::Sdg; break;
        case GateKind::Sdg: g.kind = GateKind::S; break;
        case GateKind::T: g.kind = GateKind::Tdg; break;
        case GateKind::Tdg: g.kind = GateKind::T; break;
        case GateKind::Rz:
        case GateKind::Phase:
        case GateKind::CR: g.angle = -angle; break;
        case GateKind::Allocate: g.kind = GateKind::Deallocate; break;
        case GateKind::Deallocate: g.kind = GateKind::Allocate; break;
        case GateKind::LibCall:
            if (g.lib) g.lib->name = adjoint_library_name(g.lib->name);
            break;
        default: break;
    }
    return g;
}

std::string adjoint_library_name(std::string_view name) {
    for (const auto& [a, b] : kAdjointPairs) {
        if (name == a) return std::string(b);
        if (name == b) return std::string(a);
    }
    constexpr std::string_view suffix = "_dg";
    if (name.size() > suffix.size() && name.substr(name.size() - suffix.size()) == suffix) {
        return std::string(name.substr(0, name.size() - suffix.size()));
    }
    return std::string(name) + std::string(suffix);
}

}  // namespace qcomp
