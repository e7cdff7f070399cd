#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace qcomp::backends {

/// Gate and qubit figures for one circuit. Counts are keyed by gate name with
/// one "c" prefix per control beyond a gate's built-in ones (crz, ccnot);
/// library calls count under their library name.
struct ResourceReport {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t t_count = 0;
    /// Allocation high-water mark, or the circuit width without Allocate.
    std::uint64_t width = 0;
    double depth = 0.0;
    double total_cost = 0.0;
    std::string qec = "none";

    [[nodiscard]] std::uint64_t total_gates() const;
    [[nodiscard]] std::uint64_t count(const std::string& name) const;

    friend bool operator==(const ResourceReport&, const ResourceReport&) = default;
};

}  // namespace qcomp::backends
