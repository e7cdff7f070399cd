#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qcomp/hlc/library.hpp"
#include "qcomp/ir/circuit.hpp"
#include "qcomp/layout/layout.hpp"
#include "qcomp/llc/decompose.hpp"

namespace qcomp::driver {

enum class Stage { None, Hlc, Llc, Layout };

/// "none", "hlc", "llc" or "layout".
[[nodiscard]] Stage parse_stage(const std::string& name);

struct PipelineOptions {
    double epsilon = 1e-2;
    llc::DecompositionStrategy strategy = llc::DecompositionStrategy::CnotSandwich;
    /// Routing target for the layout stage; a line over the circuit width when empty.
    std::optional<layout::ConnectivityGraph> graph;
    /// Library for the high-level stage; the standard library when null.
    const hlc::LibraryRegistry* registry = nullptr;
};

/// Runs every stage up to and including `to`. Each stage's output is validated.
[[nodiscard]] Circuit compile(const Circuit& c, Stage to, const PipelineOptions& options = {});

struct ProgramParams {
    std::uint64_t n = 3;
    std::uint64_t N = 15;
    /// Base for modular programs; the smallest base >= 2 coprime to N when unset.
    std::optional<std::uint64_t> a;
    /// Rotation angle of the fig6 programs.
    double theta = 0.8;
};

/// Built-in programs: iqft3, qft, iqft, draper_add, cuccaro, phiadd, modadd,
/// cua, shor, fig6-quifelse, fig6-naive.
[[nodiscard]] Circuit builtin_program(const std::string& name, const ProgramParams& params = {});
[[nodiscard]] std::string builtin_program_names();

}  // namespace qcomp::driver
