#include "qcomp/llc/decompose.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qcomp/error.hpp"

namespace qcomp::llc {

namespace {

using std::numbers::pi;

constexpr double kExact = 1e-12;

bool near(double a, double b) { return std::abs(a - b) < kExact; }

Command single(GateKind k, Qubit q) { return Command::single(k, q); }

std::vector<Command> fredkin(Qubit c, Qubit a, Qubit b) {
    std::vector<Command> out{Command::cnot(b, a)};
    for (auto& cmd : toffoli(c, a, b)) out.push_back(std::move(cmd));
    out.push_back(Command::cnot(b, a));
    return out;
}

void append(std::vector<Command>& out, std::vector<Command> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

class Expander {
public:
    Expander(const Circuit& c, DecompositionStrategy strategy)
        : strategy_(strategy), out_(c.num_qubits, Level::QIR) {}

    void expand(const Command& cmd) {
        const GateKind kind = cmd.gate.kind;
        if (!cmd.pending.empty()) {
            throw Error(ErrorCode::Compile, "pending controls must be resolved before lowering");
        }
        if (kind == GateKind::LibCall) {
            throw Error(ErrorCode::Compile,
                        "library call '" + cmd.gate.lib->name + "' must be inlined before lowering");
        }
        if (kind == GateKind::Measure || kind == GateKind::Allocate || kind == GateKind::Deallocate) {
            emit(cmd);
            return;
        }
        std::vector<Qubit> controls = cmd.controls;
        const std::size_t keep = kind == GateKind::CNOT ? 2 : 1;
        if (controls.size() > keep) {
            // AND the surplus controls into a chain of ancillas.
            const std::size_t fold = controls.size() - keep + 1;
            std::vector<Command> chain;
            std::vector<Qubit> used;
            Qubit acc = controls[0];
            for (std::size_t i = 1; i < fold; ++i) {
                const Qubit a = ancilla(in_use_ + used.size());
                used.push_back(a);
                append(chain, toffoli(acc, controls[i], a));
                acc = a;
            }
            for (Qubit a : used) emit(Command{Gate::simple(GateKind::Allocate), {a}, {}, {}, {}});
            for (const auto& g : chain) emit(g);
            Command reduced = cmd;
            reduced.controls.assign(controls.begin() + static_cast<std::ptrdiff_t>(fold), controls.end());
            reduced.add_controls({acc});
            in_use_ += used.size();
            expand(reduced);
            in_use_ -= used.size();
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) emit(*it);
            for (auto it = used.rbegin(); it != used.rend(); ++it) {
                emit(Command{Gate::simple(GateKind::Deallocate), {*it}, {}, {}, {}});
            }
            return;
        }
        if (controls.empty()) {
            expand_uncontrolled(cmd);
            return;
        }
        if (kind == GateKind::CNOT && controls.size() == 2) {
            for (auto& g : toffoli(controls[0], controls[1], cmd.targets[0])) emit(g);
            return;
        }
        expand_single_control(cmd);
    }

    Circuit take() { return std::move(out_); }

private:
    Qubit ancilla(std::size_t i) {
        while (ancillas_.size() <= i) {
            ancillas_.push_back(static_cast<Qubit>(out_.num_qubits));
            ++out_.num_qubits;
        }
        return ancillas_[i];
    }

    void emit(const Command& cmd) { out_.push_back(cmd); }

    void expand_uncontrolled(const Command& cmd) {
        const Qubit t = cmd.targets[0];
        switch (cmd.gate.kind) {
            case GateKind::Y:  // Y = iXZ
                emit(single(GateKind::Z, t));
                emit(single(GateKind::X, t));
                return;
            case GateKind::Swap: {
                const Qubit a = cmd.targets[0], b = cmd.targets[1];
                emit(Command::cnot(a, b));
                emit(Command::cnot(b, a));
                emit(Command::cnot(a, b));
                return;
            }
            default:
                emit(cmd);
        }
    }

    void expand_single_control(const Command& cmd) {
        const Qubit c = cmd.controls[0];
        const Qubit t = cmd.targets[0];
        auto via_phase = [&](double theta) {
            Command cr = Command::cr(theta, c, t);
            for (auto& g : phase_path(cr)) emit(g);
        };
        switch (cmd.gate.kind) {
            case GateKind::CNOT:
            case GateKind::X:
                emit(Command::cnot(c, t));
                return;
            case GateKind::Z:
                emit(single(GateKind::H, t));
                emit(Command::cnot(c, t));
                emit(single(GateKind::H, t));
                return;
            case GateKind::Y:  // Y = S X Sdg
                emit(single(GateKind::Sdg, t));
                emit(Command::cnot(c, t));
                emit(single(GateKind::S, t));
                return;
            case GateKind::H:
                for (GateKind k : {GateKind::Sdg, GateKind::H, GateKind::Tdg}) emit(single(k, t));
                emit(Command::cnot(c, t));
                for (GateKind k : {GateKind::T, GateKind::H, GateKind::S}) emit(single(k, t));
                return;
            case GateKind::S: via_phase(pi / 2); return;
            case GateKind::Sdg: via_phase(-pi / 2); return;
            case GateKind::T: via_phase(pi / 4); return;
            case GateKind::Tdg: via_phase(-pi / 4); return;
            case GateKind::Phase:
            case GateKind::CR: via_phase(cmd.gate.angle); return;
            case GateKind::Rz: {
                const bool needs_anc = strategy_ == DecompositionStrategy::FredkinAncilla;
                std::optional<Qubit> anc;
                if (needs_anc) anc = ancilla(in_use_);
                if (anc) emit(Command{Gate::simple(GateKind::Allocate), {*anc}, {}, {}, {}});
                for (auto& g : decompose_controlled_rz(Command{cmd.gate, {t}, {c}, {}, {}}, strategy_, anc)) {
                    emit(g);
                }
                if (anc) emit(Command{Gate::simple(GateKind::Deallocate), {*anc}, {}, {}, {}});
                return;
            }
            case GateKind::Swap:
                for (auto& g : fredkin(c, cmd.targets[0], cmd.targets[1])) emit(g);
                return;
            default:
                throw Error(ErrorCode::UnsupportedKind,
                            std::string("cannot expand controlled ") + std::string(gate_name(cmd.gate.kind)));
        }
    }

    std::vector<Command> phase_path(const Command& cr) {
        const double theta = std::remainder(cr.gate.angle, 2 * pi);
        const bool exact = std::abs(theta) < kExact || near(std::abs(theta), pi / 2) || near(std::abs(theta), pi);
        if (strategy_ != DecompositionStrategy::FredkinAncilla || exact) {
            return decompose_controlled_phase(cr, strategy_ == DecompositionStrategy::FredkinAncilla
                                                      ? DecompositionStrategy::CnotSandwich
                                                      : strategy_);
        }
        const Qubit anc = ancilla(in_use_);
        std::vector<Command> out{Command{Gate::simple(GateKind::Allocate), {anc}, {}, {}, {}}};
        append(out, decompose_controlled_phase(cr, strategy_, anc));
        out.push_back(Command{Gate::simple(GateKind::Deallocate), {anc}, {}, {}, {}});
        return out;
    }

    DecompositionStrategy strategy_;
    Circuit out_;
    std::vector<Qubit> ancillas_;
    std::size_t in_use_ = 0;  // ancillas held by enclosing control chains
};

}  // namespace

std::vector<Command> toffoli(Qubit a, Qubit b, Qubit t) {
    using enum GateKind;
    return {single(H, t),        Command::cnot(b, t), single(Tdg, t), Command::cnot(a, t),
            single(T, t),        Command::cnot(b, t), single(Tdg, t), Command::cnot(a, t),
            single(T, b),        single(T, t),        single(H, t),   Command::cnot(a, b),
            single(T, a),        single(Tdg, b),      Command::cnot(a, b)};
}

std::vector<Command> decompose_controlled_rz(const Command& cmd, DecompositionStrategy strategy,
                                             std::optional<Qubit> ancilla) {
    if (cmd.gate.kind != GateKind::Rz || cmd.targets.size() != 1) {
        throw Error(ErrorCode::UnsupportedKind, "decompose_controlled_rz expects an rz command");
    }
    if (cmd.controls.size() != 1) {
        throw Error(ErrorCode::UnsupportedKind, "decompose_controlled_rz handles exactly one control");
    }
    const double theta = cmd.gate.angle;
    const Qubit c = cmd.controls[0];
    const Qubit t = cmd.targets[0];
    switch (strategy) {
        case DecompositionStrategy::CnotSandwich:
            return {Command::rz(theta / 2, t), Command::cnot(c, t), Command::rz(-theta / 2, t), Command::cnot(c, t)};
        case DecompositionStrategy::ParallelRotation:
            return {Command::cnot(t, c), Command::rz(theta / 2, t), Command::rz(-theta / 2, c), Command::cnot(t, c)};
        case DecompositionStrategy::FredkinAncilla: {
            if (!ancilla) throw Error(ErrorCode::InvalidArgument, "Fredkin decomposition needs an ancilla");
            // The rotation also hits the ancilla's |0> when the control is off;
            // the control-side rotation cancels that relative phase.
            std::vector<Command> out = fredkin(c, t, *ancilla);
            out.push_back(Command::rz(theta, *ancilla));
            append(out, fredkin(c, t, *ancilla));
            out.push_back(Command::rz(-theta / 2, c));
            return out;
        }
    }
    return {};
}

std::vector<Command> decompose_controlled_phase(const Command& cmd, DecompositionStrategy strategy,
                                                std::optional<Qubit> ancilla) {
    if ((cmd.gate.kind != GateKind::CR && cmd.gate.kind != GateKind::Phase) || cmd.controls.size() != 1) {
        throw Error(ErrorCode::UnsupportedKind, "decompose_controlled_phase expects a singly-controlled phase");
    }
    const double theta = std::remainder(cmd.gate.angle, 2 * pi);
    const Qubit c = cmd.controls[0];
    const Qubit t = cmd.targets[0];
    if (std::abs(theta) < kExact) return {};
    if (near(std::abs(theta), pi)) {
        return {single(GateKind::H, t), Command::cnot(c, t), single(GateKind::H, t)};
    }
    if (near(std::abs(theta), pi / 2)) {
        const GateKind half = theta > 0 ? GateKind::T : GateKind::Tdg;
        const GateKind undo = theta > 0 ? GateKind::Tdg : GateKind::T;
        return {single(half, t), Command::cnot(c, t), single(undo, t), Command::cnot(c, t), single(half, c)};
    }
    if (strategy == DecompositionStrategy::FredkinAncilla) {
        if (!ancilla) throw Error(ErrorCode::InvalidArgument, "Fredkin decomposition needs an ancilla");
        std::vector<Command> out = fredkin(c, t, *ancilla);
        out.push_back(Command::phase(theta, *ancilla));
        append(out, fredkin(c, t, *ancilla));
        return out;
    }
    std::vector<Command> out{Command::rz(theta / 2, c)};
    append(out, decompose_controlled_rz(Command{Gate::rz(theta), {t}, {c}, {}, {}}, strategy));
    return out;
}

Circuit expand_controlled(const Circuit& c, DecompositionStrategy strategy) {
    Expander ex(c, strategy);
    for (const Command& cmd : c.commands) ex.expand(cmd);
    return ex.take();
}

}  // namespace qcomp::llc
