#include "qcomp/builder/program_builder.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "qcomp/error.hpp"

namespace qcomp::builder {

class ProgramBuilder::ScopeGuard {
public:
    ScopeGuard(ProgramBuilder& b, ScopeKind kind) : b_(b) {
        b_.scopes_.push_back({kind, b_.commands_.size()});
    }
    ~ScopeGuard() { b_.scopes_.pop_back(); }
    ScopeGuard(const ScopeGuard&) = delete;
    ScopeGuard& operator=(const ScopeGuard&) = delete;

private:
    ProgramBuilder& b_;
};

namespace {

std::set<Qubit> touched(std::span<const Command> cmds) {
    std::set<Qubit> qs;
    for (const auto& cmd : cmds) {
        for (Qubit q : cmd.all_qubits()) qs.insert(q);
    }
    return qs;
}

bool is_conditional_inverse_rotation(const std::vector<Command>& b0, const std::vector<Command>& b1) {
    if (b0.size() != 1 || b1.size() != 1) return false;
    const Command& r0 = b0.front();
    const Command& r1 = b1.front();
    return r0.gate.kind == GateKind::Rz && r1.gate.kind == GateKind::Rz &&
           r0.targets == r1.targets && r0.controls.empty() && r1.controls.empty() &&
           r0.pending.empty() && r1.pending.empty() && r1.gate.angle == -r0.gate.angle &&
           r0.section == r1.section;
}

}  // namespace

ProgramBuilder::ProgramBuilder(std::size_t existing_qubits, std::vector<Qubit> reusable)
    : num_qubits_(existing_qubits), reusable_(std::move(reusable)) {
    std::sort(reusable_.begin(), reusable_.end(), std::greater<>());
    reusable_.erase(std::unique(reusable_.begin(), reusable_.end()), reusable_.end());
    for (std::size_t q = 0; q < existing_qubits; ++q) live_.insert(static_cast<Qubit>(q));
    for (Qubit q : reusable_) {
        if (q >= existing_qubits) throw Error(ErrorCode::InvalidArgument, "reusable qubit out of range");
        live_.erase(q);
    }
}

QuReg ProgramBuilder::allocate_qureg(std::size_t n, std::uint64_t init) {
    if (n < 64 && init >= (std::uint64_t{1} << n)) {
        throw Error(ErrorCode::InvalidArgument, "initial value " + std::to_string(init) +
                                                    " does not fit in " + std::to_string(n) +
                                                    " qubits");
    }
    QuReg reg;
    reg.id = next_register_++;
    reg.init = init;
    for (std::size_t i = 0; i < n; ++i) {
        if (!reusable_.empty()) {
            reg.qubits.push_back(reusable_.back());
            reusable_.pop_back();
        } else {
            reg.qubits.push_back(static_cast<Qubit>(num_qubits_++));
        }
    }
    for (Qubit q : reg.qubits) emit(Command{Gate::simple(GateKind::Allocate), {q}, {}, {}, {}});
    for (std::size_t i = 0; i < n; ++i) {
        if ((init >> i) & 1u) x(reg.qubits[i]);
    }
    return reg;
}

QuReg ProgramBuilder::allocate_ancilla(std::size_t n) {
    QuReg reg = allocate_qureg(n, 0);
    reg.ancilla = true;
    ancillas_.push_back(reg);
    return reg;
}

void ProgramBuilder::deallocate(const QuReg& reg) {
    for (Qubit q : reg.qubits) emit(Command{Gate::simple(GateKind::Deallocate), {q}, {}, {}, {}});
}

QuReg ProgramBuilder::view(std::vector<Qubit> qubits) const {
    QuReg reg;
    reg.qubits = std::move(qubits);
    return reg;
}

void ProgramBuilder::emit(Command cmd) {
    for (Qubit q : cmd.all_qubits()) {
        if (q >= num_qubits_) {
            throw Error(ErrorCode::InvalidArgument,
                        "qubit " + std::to_string(q) + " has not been allocated");
        }
    }
    if (cmd.gate.kind == GateKind::Allocate) {
        for (Qubit q : cmd.targets) {
            live_.insert(q);
            std::erase(reusable_, q);
        }
    } else if (cmd.gate.kind == GateKind::Deallocate) {
        for (Qubit q : cmd.targets) {
            live_.erase(q);
            reusable_.insert(std::lower_bound(reusable_.begin(), reusable_.end(), q, std::greater<>()), q);
        }
    } else if (cmd.gate.kind == GateKind::Measure && inside(ScopeKind::Compute)) {
        throw Error(ErrorCode::InvalidArgument, "measurement inside a compute section");
    }
    commands_.push_back(std::move(cmd));
}

bool ProgramBuilder::inside(ScopeKind kind) const {
    return std::any_of(scopes_.begin(), scopes_.end(), [&](const Scope& s) { return s.kind == kind; });
}

void ProgramBuilder::apply(Command cmd) { emit(std::move(cmd)); }

void ProgramBuilder::gate(GateKind kind, Qubit target) { emit(Command::single(kind, target)); }

void ProgramBuilder::rz(double theta, Qubit q) { emit(Command::rz(theta, q)); }

void ProgramBuilder::phase(double theta, Qubit q) { emit(Command::phase(theta, q)); }

void ProgramBuilder::cnot(Qubit control, Qubit target) { emit(Command::cnot(control, target)); }

void ProgramBuilder::cr(double theta, Qubit control, Qubit target) {
    emit(Command::cr(theta, control, target));
}

void ProgramBuilder::swap(Qubit a, Qubit b) { emit(Command::swap(a, b)); }

void ProgramBuilder::measure(std::vector<Qubit> qubits) { emit(Command::measure(std::move(qubits))); }

void ProgramBuilder::call(std::string name, std::vector<std::int64_t> params,
                          const std::vector<std::vector<Qubit>>& registers) {
    emit(Command::call(std::move(name), std::move(params), registers));
}

void ProgramBuilder::append(std::span<const Command> cmds) {
    for (const auto& cmd : cmds) emit(cmd);
}

std::vector<Command> ProgramBuilder::capture(ScopeKind kind, const Body& body) {
    const std::size_t start = commands_.size();
    {
        ScopeGuard guard(*this, kind);
        body(*this);
    }
    std::vector<Command> out(commands_.begin() + static_cast<std::ptrdiff_t>(start), commands_.end());
    commands_.resize(start);
    return out;
}

void ProgramBuilder::with_compute(const Body& compute, const Body& action) {
    with_compute(compute, action, Body{});
}

void ProgramBuilder::with_compute(const Body& compute, const Body& action, const Body& uncompute) {
    std::vector<Command> forward = capture(ScopeKind::Compute, compute);
    if (forward.empty()) {
        ScopeGuard guard(*this, ScopeKind::Action);
        action(*this);
        if (uncompute) uncompute(*this);
        return;
    }
    const std::uint32_t id = next_section_++;
    for (auto& cmd : forward) cmd.section = {SectionTag::Compute, id};
    for (auto& cmd : forward) emit(cmd);
    {
        ScopeGuard guard(*this, ScopeKind::Action);
        action(*this);
    }
    std::vector<Command> backward;
    if (uncompute) {
        backward = capture(ScopeKind::Uncompute, uncompute);
    } else {
        backward = inverse(forward);
    }
    for (auto& cmd : backward) {
        cmd.section = {SectionTag::Uncompute, id};
        emit(std::move(cmd));
    }
}

void ProgramBuilder::add_control_to(std::span<Command> cmds, Qubit ctrl) const {
    for (auto& cmd : cmds) {
        if (cmd.gate.kind == GateKind::Allocate || cmd.gate.kind == GateKind::Deallocate) continue;
        const auto qs = cmd.all_qubits();
        if (std::find(qs.begin(), qs.end(), ctrl) != qs.end()) {
            throw Error(ErrorCode::InvalidArgument, "control qubit " + std::to_string(ctrl) +
                                                        " is used inside the controlled body");
        }
        cmd.add_pending({ctrl});
    }
}

void ProgramBuilder::with_control(Qubit ctrl, const Body& body) {
    if (ctrl >= num_qubits_) {
        throw Error(ErrorCode::InvalidArgument, "control qubit " + std::to_string(ctrl) +
                                                    " has not been allocated");
    }
    std::vector<Command> cmds = capture(ScopeKind::Control, body);
    add_control_to(cmds, ctrl);
    commands_.insert(commands_.end(), std::make_move_iterator(cmds.begin()),
                     std::make_move_iterator(cmds.end()));
}

void ProgramBuilder::quifelse(Qubit ctrl, const Body& body0, const Body& body1) {
    std::vector<Command> b0 = capture(ScopeKind::IfElse, body0);
    std::vector<Command> b1 = capture(ScopeKind::IfElse, body1);
    if (b0.empty() && b1.empty()) return;
    if (!b0.empty() && !b1.empty() && touched(b0) != touched(b1)) {
        throw Error(ErrorCode::InvalidArgument, "quifelse branches act on different qubits");
    }
    if (is_conditional_inverse_rotation(b0, b1)) {
        const Qubit t = b0.front().targets.front();
        cnot(ctrl, t);
        emit(b0.front());
        cnot(ctrl, t);
        return;
    }
    if (!b0.empty()) {
        add_control_to(b0, ctrl);
        x(ctrl);
        commands_.insert(commands_.end(), b0.begin(), b0.end());
        x(ctrl);
    }
    add_control_to(b1, ctrl);
    commands_.insert(commands_.end(), b1.begin(), b1.end());
}

void ProgramBuilder::repeat_classical(std::size_t k, const Body& body) {
    if (k == 0) return;
    std::vector<Command> once = capture(ScopeKind::Repeat, body);
    for (std::size_t rep = 0; rep < k; ++rep) {
        std::map<std::uint32_t, std::uint32_t> fresh;
        for (Command cmd : once) {
            if (cmd.section.tag != SectionTag::None && rep > 0) {
                auto [it, inserted] = fresh.try_emplace(cmd.section.id, next_section_);
                if (inserted) ++next_section_;
                cmd.section.id = it->second;
            }
            emit(std::move(cmd));
        }
    }
}

Circuit ProgramBuilder::finish() {
    if (!scopes_.empty()) throw Error(ErrorCode::InvalidArgument, "finish() called inside an open scope");
    for (const QuReg& reg : ancillas_) {
        for (Qubit q : reg.qubits) {
            if (live_.contains(q)) {
                throw Error(ErrorCode::InvalidArgument,
                            "ancilla register " + std::to_string(reg.id) + " was never deallocated");
            }
        }
    }
    Circuit c(num_qubits_, Level::QIR);
    c.commands = commands_;
    require_valid(c);
    return c;
}

}  // namespace qcomp::builder
