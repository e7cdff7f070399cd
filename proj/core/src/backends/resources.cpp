#include "qcomp/backends/resources.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "qcomp/error.hpp"

namespace qcomp::backends {

double CostModel::weight(const std::string& name) const {
    const auto it = weights.find(name);
    return it == weights.end() ? default_weight : it->second;
}

CostModel CostModel::t_dominated(double t_weight) {
    CostModel m;
    m.weights = {{"t", t_weight}, {"tdg", t_weight}};
    return m;
}

CostModel CostModel::from_json(const nlohmann::json& j) {
    auto check = [](double w, const std::string& what) {
        if (!std::isfinite(w) || w < 0) {
            throw Error(ErrorCode::InvalidArgument, "cost weight for " + what + " must be finite and nonnegative");
        }
        return w;
    };
    CostModel m;
    try {
        if (j.contains("default")) m.default_weight = check(j.at("default").get<double>(), "default");
        if (j.contains("weights")) {
            for (const auto& [name, w] : j.at("weights").items()) m.weights[name] = check(w.get<double>(), name);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad cost model: ") + e.what());
    }
    return m;
}

CostModel CostModel::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open cost model " + file.string());
    try {
        return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, "bad cost model " + file.string() + ": " + e.what());
    }
}

nlohmann::json CostModel::to_json() const {
    return {{"default", default_weight}, {"weights", weights}};
}

std::string count_name(const Command& cmd) {
    const std::size_t extra = cmd.controls.size() + cmd.pending.size() -
                              static_cast<std::size_t>(builtin_controls(cmd.gate.kind));
    std::string base = cmd.gate.lib ? cmd.gate.lib->name : std::string(gate_name(cmd.gate.kind));
    return std::string(extra, 'c') + base;
}

ResourceReport count_resources(const Circuit& c, const CostModel& m, const CountOptions& options) {
    ResourceReport r;
    Circuit timed = c;
    timed.commands.clear();

    std::set<Qubit> seen;
    std::uint64_t live = 0;
    for (const Command& cmd : c.commands) {
        const GateKind kind = cmd.gate.kind;
        for (Qubit q : cmd.all_qubits()) {
            if (seen.insert(q).second && kind != GateKind::Allocate) ++live;
        }
        if (kind == GateKind::Allocate) {
            live += cmd.targets.size();
        } else if (kind == GateKind::Deallocate) {
            live -= std::min<std::uint64_t>(live, cmd.targets.size());
        }
        r.width = std::max(r.width, live);

        if (kind == GateKind::Allocate || kind == GateKind::Deallocate) {
            timed.commands.push_back(cmd);
            continue;
        }
        if (options.swaps_as_cnots && kind == GateKind::Swap && cmd.controls.empty() && cmd.pending.empty()) {
            const Qubit a = cmd.targets[0];
            const Qubit b = cmd.targets[1];
            for (const Command& cx : {Command::cnot(a, b), Command::cnot(b, a), Command::cnot(a, b)}) {
                ++r.counts["cnot"];
                timed.commands.push_back(cx);
            }
            continue;
        }
        ++r.counts[count_name(cmd)];
        timed.commands.push_back(cmd);
    }
    r.t_count = r.count("t") + r.count("tdg");
    for (const auto& [name, n] : r.counts) r.total_cost += m.weight(name) * static_cast<double>(n);
    if (!c.commands.empty()) {
        r.depth = options.graph ? layout::schedule(timed, *options.graph).depth : layout::schedule(timed).depth;
    }
    return r;
}

nlohmann::json to_json(const ResourceReport& r) {
    return {{"counts", r.counts}, {"t_count", r.t_count},       {"width", r.width},
            {"depth", r.depth},   {"total_cost", r.total_cost}, {"qec", r.qec}};
}

ResourceReport report_from_json(const nlohmann::json& j) {
    ResourceReport r;
    try {
        r.counts = j.at("counts").get<std::map<std::string, std::uint64_t>>();
        r.t_count = j.at("t_count").get<std::uint64_t>();
        r.width = j.at("width").get<std::uint64_t>();
        r.depth = j.at("depth").get<double>();
        r.total_cost = j.at("total_cost").get<double>();
        r.qec = j.at("qec").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad resource report: ") + e.what());
    }
    return r;
}

}  // namespace qcomp::backends
