#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qcomp/backends/resource_report.hpp"
#include "qcomp/ir/circuit.hpp"
#include "qcomp/layout/layout.hpp"

namespace qcomp::backends {

/// Weight per gate name (the names used in ResourceReport::counts). Names
/// without an entry take `default_weight`.
struct CostModel {
    std::map<std::string, double> weights;
    double default_weight = 1.0;

    [[nodiscard]] double weight(const std::string& name) const;

    /// Every gate weighs 1.
    static CostModel uniform() { return {}; }
    /// T and Tdg weigh `t_weight`, everything else 1.
    static CostModel t_dominated(double t_weight = 100.0);

    /// {"default": w, "weights": {"t": 10, ...}}; throws InvalidArgument on
    /// negative or non-finite weights.
    static CostModel from_json(const nlohmann::json& j);
    static CostModel load(const std::filesystem::path& file);
    [[nodiscard]] nlohmann::json to_json() const;

    friend bool operator==(const CostModel&, const CostModel&) = default;
};

struct CountOptions {
    /// Count each uncontrolled Swap as three CNOTs, as hardware would run it.
    bool swaps_as_cnots = true;
    /// Durations and adjacency for the depth figure; unit durations when null.
    const layout::ConnectivityGraph* graph = nullptr;
};

/// Name under which a command is counted: one "c" per control beyond the
/// gate's built-in ones, library calls by library name.
[[nodiscard]] std::string count_name(const Command& cmd);

/// Exact counts by name, T-count, allocation high-water width, ASAP depth and
/// total cost. Allocate/Deallocate are not gates and are not counted.
[[nodiscard]] ResourceReport count_resources(const Circuit& c, const CostModel& m = {},
                                             const CountOptions& options = {});

[[nodiscard]] nlohmann::json to_json(const ResourceReport& r);
[[nodiscard]] ResourceReport report_from_json(const nlohmann::json& j);

}  // namespace qcomp::backends
