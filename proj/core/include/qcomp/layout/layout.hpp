#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qcomp/backends/resource_report.hpp"
#include "qcomp/ir/circuit.hpp"

namespace qcomp::layout {

/// Undirected coupling graph over hardware qubits with per-gate durations.
class ConnectivityGraph {
public:
    explicit ConnectivityGraph(std::size_t n = 0);

    static ConnectivityGraph line(std::size_t n);
    static ConnectivityGraph all_to_all(std::size_t n);
    /// `qubits <n>`, then `edge <a> <b>` and `duration <gate> <t>` lines;
    /// `#` starts a comment. Throws ParseError.
    static ConnectivityGraph parse(std::string_view text);
    static ConnectivityGraph load(const std::filesystem::path& file);
    [[nodiscard]] std::string to_text() const;

    void add_edge(Qubit a, Qubit b);
    [[nodiscard]] bool adjacent(Qubit a, Qubit b) const;
    [[nodiscard]] std::size_t num_qubits() const { return adjacency_.size(); }
    [[nodiscard]] const std::vector<Qubit>& neighbors(Qubit q) const { return adjacency_.at(q); }
    /// Shortest path from `from` to `to` inclusive (BFS, lowest-index
    /// neighbours first); empty when disconnected.
    [[nodiscard]] std::vector<Qubit> shortest_path(Qubit from, Qubit to) const;

    void set_duration(GateKind kind, double t);
    /// Allocate/Deallocate take no time; other kinds default to 1.
    [[nodiscard]] double duration(GateKind kind) const;

private:
    std::vector<std::vector<Qubit>> adjacency_;
    std::map<GateKind, double> durations_;
};

/// Logical-to-hardware bijection.
class QubitMap {
public:
    QubitMap() = default;
    static QubitMap identity(std::size_t n);
    static QubitMap from_vector(std::vector<Qubit> logical_to_hardware);

    [[nodiscard]] Qubit hardware(Qubit logical) const { return to_hw_.at(logical); }
    [[nodiscard]] Qubit logical(Qubit hardware) const { return to_logical_.at(hardware); }
    [[nodiscard]] std::size_t size() const { return to_hw_.size(); }
    [[nodiscard]] const std::vector<Qubit>& logical_to_hardware() const { return to_hw_; }
    /// Exchanges the logical qubits held by two hardware qubits.
    void swap_hardware(Qubit a, Qubit b);

    friend bool operator==(const QubitMap&, const QubitMap&) = default;

private:
    std::vector<Qubit> to_hw_;
    std::vector<Qubit> to_logical_;
};

struct RoutingResult {
    /// Commands on hardware qubits, width = graph size.
    Circuit circuit;
    QubitMap initial;
    QubitMap final_map;
    std::size_t swaps_inserted = 0;
};

/// Greedy routing: for each non-adjacent two-qubit command, Swaps walk the
/// target along a shortest path until it neighbours the control. The map is
/// tracked instead of swapping back.
/// Throws Capacity when the graph is smaller than the circuit or the qubits
/// are disconnected, Compile for commands on more than two qubits.
[[nodiscard]] RoutingResult route(const Circuit& c, const ConnectivityGraph& g);
[[nodiscard]] RoutingResult route(const Circuit& c, const ConnectivityGraph& g, const QubitMap& initial);

/// True when every command on two qubits acts on adjacent hardware qubits.
[[nodiscard]] bool all_adjacent(const Circuit& c, const ConnectivityGraph& g);

struct Schedule {
    std::vector<double> start;  // per command
    double depth = 0.0;
};

/// As-soon-as-possible schedule in program order with the graph's durations.
[[nodiscard]] Schedule schedule(const Circuit& c, const ConnectivityGraph& g);
/// Unit durations.
[[nodiscard]] Schedule schedule(const Circuit& c);

/// Error-correction overhead as configured multipliers.
struct QecScheme {
    enum class Kind { None, Repetition, Surface };
    Kind kind = Kind::None;
    unsigned distance = 1;
    double qubit_multiplier = 1.0;
    double gate_multiplier = 1.0;
    double time_multiplier = 1.0;

    static QecScheme none() { return {}; }
    /// qubits x d, gates x d, time x 1.
    static QecScheme repetition(unsigned d);
    /// qubits x d^2, gates x d^2, time x d.
    static QecScheme surface(unsigned d);
    /// "none", "repetition:<d>" or "surface:<d>".
    static QecScheme parse(std::string_view spec);
    [[nodiscard]] std::string name() const;
};

[[nodiscard]] backends::ResourceReport apply_qec_accounting(const backends::ResourceReport& r,
                                                           const QecScheme& s);

}  // namespace qcomp::layout
