#include "qcomp/backends/backend.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "qcomp/error.hpp"
#include "qcomp/ir/text.hpp"

namespace qcomp::backends {

RunResult SimulatorBackend::run(const Circuit& c, const RunOptions& options) {
    RunResult r;
    r.backend = name();
    r.seed = options.seed;
    Rng rng(options.seed);
    Statevector sv = sim_.simulate(Circuit(c.num_qubits), options.basis_index);
    for (const Command& cmd : c.commands) {
        if (cmd.gate.kind != GateKind::Measure) {
            sim_.apply(sv, cmd);
            continue;
        }
        Distribution d = marginal(sv, cmd.targets);
        const std::uint64_t outcome = d.sample(rng);
        sv.project(cmd.targets, outcome, d.probability(outcome));
        r.measurements.push_back({cmd.targets, outcome});
        r.distribution = std::move(d);
    }
    r.messages = sim_.warnings();
    return r;
}

RunResult EmulatorBackend::run(const Circuit& c, const RunOptions& options) {
    RunResult r;
    r.backend = name();
    r.seed = options.seed;
    EmulationResult e = emu_.emulate(c, options.basis_index);
    if (e.distribution) {
        Rng rng(options.seed);
        r.measurements.push_back({e.distribution->qubits, e.distribution->sample(rng)});
        r.distribution = std::move(e.distribution);
    }
    return r;
}

RunResult CounterBackend::run(const Circuit& c, const RunOptions& options) {
    RunResult r;
    r.backend = name();
    r.seed = options.seed;
    r.report = count_resources(c, options.cost, CountOptions{true, options.graph});
    return r;
}

RunResult HardwareStub::run(const Circuit& c, const RunOptions& options) {
    if (c.level != Level::LLQIR) {
        throw Error(ErrorCode::Backend, "the hardware backend takes LLQIR; lower the circuit first");
    }
    require_valid(c);
    if (options.graph && !layout::all_adjacent(c, *options.graph)) {
        throw Error(ErrorCode::Backend, "circuit is not routed for the supplied connectivity graph");
    }
    const layout::Schedule s = options.graph ? layout::schedule(c, *options.graph) : layout::schedule(c);
    std::ostringstream out;
    out << serialize(c);
    out << "# schedule depth " << s.depth << '\n';
    for (std::size_t i = 0; i < s.start.size(); ++i) out << "# start " << i << ' ' << s.start[i] << '\n';
    RunResult r;
    r.backend = name();
    r.seed = options.seed;
    r.ok = false;
    r.payload = out.str();
    r.messages.push_back("no device attached");
    return r;
}

std::unique_ptr<Backend> make_backend(const std::string& name) {
    if (name == "sim") return std::make_unique<SimulatorBackend>();
    if (name == "emu") return std::make_unique<EmulatorBackend>();
    if (name == "counter") return std::make_unique<CounterBackend>();
    if (name == "hardware") return std::make_unique<HardwareStub>();
    throw Error(ErrorCode::InvalidArgument, "unknown backend '" + name + "' (sim, emu, counter, hardware)");
}

nlohmann::json to_json(const Distribution& d) {
    nlohmann::json probs = nlohmann::json::object();
    for (const auto& [outcome, p] : d.probabilities) probs[std::to_string(outcome)] = p;
    return {{"qubits", d.qubits}, {"probabilities", probs}};
}

nlohmann::json to_json(const RunResult& r) {
    nlohmann::json j = {{"backend", r.backend}, {"seed", r.seed}, {"ok", r.ok}};
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : r.measurements) ms.push_back({{"qubits", m.qubits}, {"outcome", m.outcome}});
    j["measurements"] = ms;
    if (r.distribution) j["distribution"] = to_json(*r.distribution);
    if (r.report) j["report"] = to_json(*r.report);
    if (!r.messages.empty()) j["messages"] = r.messages;
    if (!r.payload.empty()) j["payload"] = r.payload;
    return j;
}

}  // namespace qcomp::backends
