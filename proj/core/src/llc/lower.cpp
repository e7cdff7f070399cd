#include "qcomp/llc/lower.hpp"

#include <cmath>

#include "qcomp/llc/peephole.hpp"

namespace qcomp::llc {

double LoweringResult::error_bound() const {
    double sum = 0.0;
    for (const auto& r : rotations) sum += r.distance;
    return sum;
}

LoweringResult lower(const Circuit& c, const LoweringOptions& options) {
    Synthesizer& synth = options.synthesizer ? *options.synthesizer : default_synthesizer();
    const Circuit expanded = expand_controlled(c, options.strategy);
    LoweringResult result;
    result.circuit = Circuit(expanded.num_qubits, Level::LLQIR);
    for (const Command& cmd : expanded.commands) {
        const GateKind kind = cmd.gate.kind;
        if (kind != GateKind::Rz && kind != GateKind::Phase) {
            result.circuit.push_back(cmd);
            continue;
        }
        // Phase(t) and Rz(t) differ by a global phase on an uncontrolled line.
        const double theta = std::remainder(cmd.gate.angle, rotation_period(kind));
        if (std::abs(theta) < 1e-12) continue;
        const SynthesisResult s = synth.synthesize_rz(theta, options.epsilon);
        const Qubit q = cmd.targets[0];
        for (GateKind g : s.word) result.circuit.push_back(Command::single(g, q));
        result.rotations.push_back({q, theta, s.distance, s.word.size()});
    }
    if (options.peephole) result.circuit = peephole_optimize(result.circuit);
    require_valid(result.circuit);
    return result;
}

}  // namespace qcomp::llc
