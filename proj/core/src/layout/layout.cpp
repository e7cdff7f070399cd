#include "qcomp/layout/layout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include "qcomp/error.hpp"

namespace qcomp::layout {

ConnectivityGraph::ConnectivityGraph(std::size_t n) : adjacency_(n) {}

ConnectivityGraph ConnectivityGraph::line(std::size_t n) {
    ConnectivityGraph g(n);
    for (std::size_t q = 1; q < n; ++q) g.add_edge(static_cast<Qubit>(q - 1), static_cast<Qubit>(q));
    return g;
}

ConnectivityGraph ConnectivityGraph::all_to_all(std::size_t n) {
    ConnectivityGraph g(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) g.add_edge(static_cast<Qubit>(a), static_cast<Qubit>(b));
    }
    return g;
}

ConnectivityGraph ConnectivityGraph::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<ConnectivityGraph> g;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "qubits") {
            long long n = -1;
            if (!(ls >> n) || n < 0) throw ParseError(lineno, "expected qubit count");
            if (g) throw ParseError(lineno, "duplicate qubits line");
            g.emplace(static_cast<std::size_t>(n));
        } else if (word == "edge") {
            if (!g) throw ParseError(lineno, "edge before qubits line");
            long long a = -1, b = -1;
            if (!(ls >> a >> b) || a < 0 || b < 0) throw ParseError(lineno, "expected two qubit indices");
            if (static_cast<std::size_t>(std::max(a, b)) >= g->num_qubits() || a == b) {
                throw ParseError(lineno, "edge " + std::to_string(a) + " " + std::to_string(b) + " is invalid");
            }
            g->add_edge(static_cast<Qubit>(a), static_cast<Qubit>(b));
        } else if (word == "duration") {
            if (!g) throw ParseError(lineno, "duration before qubits line");
            std::string gate;
            double t = -1;
            if (!(ls >> gate >> t) || !(t >= 0) || !std::isfinite(t)) {
                throw ParseError(lineno, "expected gate name and nonnegative duration");
            }
            auto kind = gate_kind_from_name(gate);
            if (!kind) throw ParseError(lineno, "unknown gate '" + gate + "'");
            g->set_duration(*kind, t);
        } else {
            throw ParseError(lineno, "unknown directive '" + word + "'");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "trailing text '" + extra + "'");
    }
    if (!g) throw ParseError(lineno, "missing qubits line");
    return std::move(*g);
}

ConnectivityGraph ConnectivityGraph::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open graph file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ConnectivityGraph::to_text() const {
    std::ostringstream out;
    out << "qubits " << num_qubits() << '\n';
    for (std::size_t a = 0; a < num_qubits(); ++a) {
        for (Qubit b : adjacency_[a]) {
            if (b > a) out << "edge " << a << ' ' << b << '\n';
        }
    }
    for (const auto& [kind, t] : durations_) out << "duration " << gate_name(kind) << ' ' << t << '\n';
    return out.str();
}

void ConnectivityGraph::add_edge(Qubit a, Qubit b) {
    if (a >= num_qubits() || b >= num_qubits() || a == b) {
        throw Error(ErrorCode::InvalidArgument, "invalid edge");
    }
    if (adjacent(a, b)) return;
    auto insert = [](std::vector<Qubit>& v, Qubit q) { v.insert(std::lower_bound(v.begin(), v.end(), q), q); };
    insert(adjacency_[a], b);
    insert(adjacency_[b], a);
}

bool ConnectivityGraph::adjacent(Qubit a, Qubit b) const {
    if (a >= num_qubits()) return false;
    return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
}

std::vector<Qubit> ConnectivityGraph::shortest_path(Qubit from, Qubit to) const {
    if (from >= num_qubits() || to >= num_qubits()) return {};
    constexpr Qubit kNone = static_cast<Qubit>(-1);
    std::vector<Qubit> parent(num_qubits(), kNone);
    std::deque<Qubit> queue{from};
    parent[from] = from;
    while (!queue.empty()) {
        const Qubit q = queue.front();
        queue.pop_front();
        if (q == to) break;
        for (Qubit n : adjacency_[q]) {
            if (parent[n] == kNone) {
                parent[n] = q;
                queue.push_back(n);
            }
        }
    }
    if (parent[to] == kNone) return {};
    std::vector<Qubit> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

void ConnectivityGraph::set_duration(GateKind kind, double t) { durations_[kind] = t; }

double ConnectivityGraph::duration(GateKind kind) const {
    if (auto it = durations_.find(kind); it != durations_.end()) return it->second;
    return is_bookkeeping(kind) && kind != GateKind::Measure ? 0.0 : 1.0;
}

QubitMap QubitMap::identity(std::size_t n) {
    std::vector<Qubit> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Qubit>(i);
    return from_vector(std::move(v));
}

QubitMap QubitMap::from_vector(std::vector<Qubit> logical_to_hardware) {
    QubitMap m;
    m.to_logical_.assign(logical_to_hardware.size(), 0);
    std::vector<bool> seen(logical_to_hardware.size(), false);
    for (std::size_t l = 0; l < logical_to_hardware.size(); ++l) {
        const Qubit h = logical_to_hardware[l];
        if (h >= logical_to_hardware.size() || seen[h]) {
            throw Error(ErrorCode::InvalidArgument, "qubit map is not a bijection");
        }
        seen[h] = true;
        m.to_logical_[h] = static_cast<Qubit>(l);
    }
    m.to_hw_ = std::move(logical_to_hardware);
    return m;
}

void QubitMap::swap_hardware(Qubit a, Qubit b) {
    const Qubit la = to_logical_.at(a);
    const Qubit lb = to_logical_.at(b);
    std::swap(to_logical_[a], to_logical_[b]);
    to_hw_[la] = b;
    to_hw_[lb] = a;
}

RoutingResult route(const Circuit& c, const ConnectivityGraph& g) {
    return route(c, g, QubitMap::identity(g.num_qubits()));
}

RoutingResult route(const Circuit& c, const ConnectivityGraph& g, const QubitMap& initial) {
    if (c.num_qubits > g.num_qubits()) {
        throw Error(ErrorCode::Capacity, "circuit needs " + std::to_string(c.num_qubits) +
                                             " qubits; graph has " + std::to_string(g.num_qubits()));
    }
    if (initial.size() != g.num_qubits()) {
        throw Error(ErrorCode::InvalidArgument, "initial map size does not match the graph");
    }
    RoutingResult r;
    r.initial = initial;
    r.final_map = initial;
    r.circuit = Circuit(g.num_qubits(), c.level);
    r.circuit.gateset = c.gateset;
    QubitMap& map = r.final_map;
    for (const Command& cmd : c.commands) {
        if (!cmd.pending.empty()) throw Error(ErrorCode::Compile, "route expects resolved controls");
        const auto qs = cmd.qubits();
        const bool two_qubit = qs.size() == 2 && cmd.gate.kind != GateKind::Measure &&
                               cmd.gate.kind != GateKind::Allocate && cmd.gate.kind != GateKind::Deallocate;
        if (qs.size() > 2 && cmd.gate.kind != GateKind::Measure && !is_bookkeeping(cmd.gate.kind)) {
            throw Error(ErrorCode::Compile, "route handles commands on at most two qubits; lower first");
        }
        if (two_qubit) {
            // qubits() lists controls first; for Swap either end may move.
            const Qubit anchor = map.hardware(qs[0]);
            const Qubit mover = map.hardware(qs[1]);
            if (!g.adjacent(anchor, mover)) {
                const auto path = g.shortest_path(mover, anchor);
                if (path.empty()) {
                    throw Error(ErrorCode::Capacity, "hardware qubits " + std::to_string(anchor) + " and " +
                                                         std::to_string(mover) + " are not connected");
                }
                for (std::size_t i = 0; i + 2 < path.size(); ++i) {
                    const Qubit a = std::min(path[i], path[i + 1]);
                    const Qubit b = std::max(path[i], path[i + 1]);
                    r.circuit.push_back(Command::swap(a, b));
                    map.swap_hardware(a, b);
                    ++r.swaps_inserted;
                }
            }
        }
        Command out = cmd;
        for (auto& q : out.targets) q = map.hardware(q);
        for (auto& q : out.controls) q = map.hardware(q);
        std::sort(out.controls.begin(), out.controls.end());
        r.circuit.push_back(std::move(out));
    }
    if (r.swaps_inserted > 0 && c.level == Level::LLQIR) r.circuit.gateset.insert(GateKind::Swap);
    return r;
}

bool all_adjacent(const Circuit& c, const ConnectivityGraph& g) {
    for (const Command& cmd : c.commands) {
        if (cmd.gate.kind == GateKind::Measure || is_bookkeeping(cmd.gate.kind)) continue;
        const auto qs = cmd.qubits();
        if (qs.size() == 2 && !g.adjacent(qs[0], qs[1])) return false;
        if (qs.size() > 2) return false;
    }
    return true;
}

Schedule schedule(const Circuit& c, const ConnectivityGraph& g) {
    Schedule s;
    s.start.reserve(c.size());
    std::vector<double> ready(c.num_qubits, 0.0);
    for (const Command& cmd : c.commands) {
        const auto qs = cmd.all_qubits();
        double t = 0.0;
        for (Qubit q : qs) t = std::max(t, ready[q]);
        const double end = t + g.duration(cmd.gate.kind);
        for (Qubit q : qs) ready[q] = end;
        s.start.push_back(t);
        s.depth = std::max(s.depth, end);
    }
    return s;
}

Schedule schedule(const Circuit& c) { return schedule(c, ConnectivityGraph(c.num_qubits)); }

QecScheme QecScheme::repetition(unsigned d) {
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "code distance must be positive");
    return {Kind::Repetition, d, static_cast<double>(d), static_cast<double>(d), 1.0};
}

QecScheme QecScheme::surface(unsigned d) {
    if (d == 0) throw Error(ErrorCode::InvalidArgument, "code distance must be positive");
    const double dd = d;
    return {Kind::Surface, d, dd * dd, dd * dd, dd};
}

QecScheme QecScheme::parse(std::string_view spec) {
    if (spec == "none" || spec.empty()) return none();
    const auto colon = spec.find(':');
    const std::string_view kind = spec.substr(0, colon);
    unsigned d = 3;
    if (colon != std::string_view::npos) {
        const std::string digits(spec.substr(colon + 1));
        try {
            std::size_t used = 0;
            const long v = std::stol(digits, &used);
            if (used != digits.size() || v <= 0) throw std::invalid_argument("distance");
            d = static_cast<unsigned>(v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "bad code distance in '" + std::string(spec) + "'");
        }
    }
    if (kind == "repetition") return repetition(d);
    if (kind == "surface") return surface(d);
    throw Error(ErrorCode::InvalidArgument, "unknown QEC scheme '" + std::string(spec) + "'");
}

std::string QecScheme::name() const {
    switch (kind) {
        case Kind::None: return "none";
        case Kind::Repetition: return "repetition:" + std::to_string(distance);
        case Kind::Surface: return "surface:" + std::to_string(distance);
    }
    return "none";
}

backends::ResourceReport apply_qec_accounting(const backends::ResourceReport& r, const QecScheme& s) {
    if (s.kind == QecScheme::Kind::None) return r;
    auto scale = [](std::uint64_t v, double m) { return static_cast<std::uint64_t>(std::llround(static_cast<double>(v) * m)); };
    backends::ResourceReport out = r;
    for (auto& [name, n] : out.counts) n = scale(n, s.gate_multiplier);
    out.t_count = scale(r.t_count, s.gate_multiplier);
    out.width = scale(r.width, s.qubit_multiplier);
    out.depth = r.depth * s.time_multiplier;
    out.total_cost = r.total_cost * s.gate_multiplier;
    out.qec = s.name();
    return out;
}

}  // namespace qcomp::layout
