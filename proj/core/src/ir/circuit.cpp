#include "qcomp/ir/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qcomp/error.hpp"

namespace qcomp {

namespace {

void insert_sorted(std::vector<Qubit>& set, const std::vector<Qubit>& extra) {
    for (Qubit q : extra) {
        auto it = std::lower_bound(set.begin(), set.end(), q);
        if (it == set.end() || *it != q) set.insert(it, q);
    }
}

}  // namespace

Command Command::single(GateKind kind, Qubit target) {
    return Command{Gate::simple(kind), {target}, {}, {}, {}};
}

Command Command::rz(double theta, Qubit target) {
    return Command{Gate::rz(theta), {target}, {}, {}, {}};
}

Command Command::phase(double theta, Qubit target) {
    return Command{Gate::phase(theta), {target}, {}, {}, {}};
}

Command Command::cnot(Qubit control, Qubit target) {
    return Command{Gate::simple(GateKind::CNOT), {target}, {control}, {}, {}};
}

Command Command::cr(double theta, Qubit control, Qubit target) {
    return Command{Gate::cr(theta), {target}, {control}, {}, {}};
}

Command Command::swap(Qubit a, Qubit b) {
    return Command{Gate::simple(GateKind::Swap), {a, b}, {}, {}, {}};
}

Command Command::measure(std::vector<Qubit> qubits) {
    return Command{Gate::simple(GateKind::Measure), std::move(qubits), {}, {}, {}};
}

Command Command::call(std::string name, std::vector<std::int64_t> params,
                      const std::vector<std::vector<Qubit>>& registers) {
    std::vector<std::size_t> sizes;
    std::vector<Qubit> targets;
    for (const auto& reg : registers) {
        sizes.push_back(reg.size());
        targets.insert(targets.end(), reg.begin(), reg.end());
    }
    return Command{Gate::call(std::move(name), std::move(params), std::move(sizes)),
                   std::move(targets), {}, {}, {}};
}

std::vector<Qubit> Command::qubits() const {
    std::vector<Qubit> out = controls;
    out.insert(out.end(), targets.begin(), targets.end());
    return out;
}

std::vector<Qubit> Command::all_qubits() const {
    std::vector<Qubit> out = controls;
    out.insert(out.end(), pending.begin(), pending.end());
    out.insert(out.end(), targets.begin(), targets.end());
    return out;
}

void Command::add_controls(const std::vector<Qubit>& extra) { insert_sorted(controls, extra); }

void Command::add_pending(const std::vector<Qubit>& extra) { insert_sorted(pending, extra); }

std::vector<std::vector<Qubit>> Command::registers() const {
    std::vector<std::vector<Qubit>> regs;
    if (!gate.lib) {
        regs.push_back(targets);
        return regs;
    }
    std::size_t pos = 0;
    for (std::size_t size : gate.lib->register_sizes) {
        const std::size_t end = std::min(pos + size, targets.size());
        regs.emplace_back(targets.begin() + static_cast<std::ptrdiff_t>(pos),
                          targets.begin() + static_cast<std::ptrdiff_t>(end));
        pos = end;
    }
    return regs;
}

std::set<GateKind> default_llqir_gateset() {
    return {GateKind::H,   GateKind::T, GateKind::Tdg, GateKind::S,
            GateKind::Sdg, GateKind::X, GateKind::Z,   GateKind::CNOT};
}

Circuit::Circuit(std::size_t n, Level lvl) : num_qubits(n), level(lvl) {
    if (lvl == Level::LLQIR) gateset = default_llqir_gateset();
}

void Circuit::append(const std::vector<Command>& cmds) {
    commands.insert(commands.end(), cmds.begin(), cmds.end());
}

std::uint32_t Circuit::next_section_id() const {
    std::uint32_t next = 0;
    for (const auto& cmd : commands) {
        if (cmd.section.tag != SectionTag::None) next = std::max(next, cmd.section.id + 1);
    }
    return next;
}

std::vector<Command> inverse(const std::vector<Command>& cmds) {
    std::vector<Command> out;
    out.reserve(cmds.size());
    for (auto it = cmds.rbegin(); it != cmds.rend(); ++it) {
        if (it->gate.kind == GateKind::Measure) {
            throw Error(ErrorCode::NonInvertible, "cannot invert a circuit containing measurement");
        }
        Command inv = *it;
        inv.gate = it->gate.adjoint();
        if (inv.section.tag == SectionTag::Compute) {
            inv.section.tag = SectionTag::Uncompute;
        } else if (inv.section.tag == SectionTag::Uncompute) {
            inv.section.tag = SectionTag::Compute;
        }
        out.push_back(std::move(inv));
    }
    return out;
}

Circuit inverse(const Circuit& c) {
    Circuit out = c;
    out.commands = inverse(c.commands);
    return out;
}

std::vector<Diagnostic> validate(const Circuit& c) {
    std::vector<Diagnostic> diags;
    auto report = [&](std::size_t i, const std::string& msg) { diags.push_back({i, msg}); };

    std::map<std::uint32_t, std::pair<std::size_t, std::size_t>> sections;  // id -> compute, uncompute counts

    for (std::size_t i = 0; i < c.commands.size(); ++i) {
        const Command& cmd = c.commands[i];
        const GateKind kind = cmd.gate.kind;
        const std::string name(gate_name(kind));

        for (const auto* group : {&cmd.targets, &cmd.controls, &cmd.pending}) {
            for (Qubit q : *group) {
                if (q >= c.num_qubits) {
                    report(i, name + ": qubit " + std::to_string(q) + " out of range for " +
                                  std::to_string(c.num_qubits) + " qubits");
                }
            }
        }

        std::vector<Qubit> all = cmd.all_qubits();
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
            report(i, name + ": targets and controls overlap");
        }

        if (is_rotation(kind) && !std::isfinite(cmd.gate.angle)) {
            report(i, name + ": rotation angle is not finite");
        }

        const std::size_t nc = cmd.controls.size();
        const std::size_t nt = cmd.targets.size();
        switch (kind) {
            case GateKind::CNOT:
            case GateKind::CR:
                if (nc < 1) report(i, name + ": requires a control qubit");
                if (nt != 1) report(i, name + ": requires exactly one target");
                break;
            case GateKind::Swap:
                if (nt != 2) report(i, "swap: requires exactly two targets");
                break;
            case GateKind::Measure:
            case GateKind::Allocate:
            case GateKind::Deallocate:
                if (nt == 0) report(i, name + ": requires at least one qubit");
                if (nc != 0 || !cmd.pending.empty()) report(i, name + ": cannot be controlled");
                break;
            case GateKind::LibCall:
                if (!cmd.gate.lib) {
                    report(i, "call: missing library call payload");
                } else if (cmd.gate.lib->arity() != nt) {
                    report(i, "call " + cmd.gate.lib->name + ": register sizes sum to " +
                                  std::to_string(cmd.gate.lib->arity()) + " but " +
                                  std::to_string(nt) + " qubits given");
                }
                break;
            default:
                if (nt != 1) report(i, name + ": requires exactly one target");
                break;
        }

        if (c.level == Level::LLQIR) {
            if (kind == GateKind::LibCall) {
                report(i, "library call in LLQIR");
            } else if (!is_bookkeeping(kind) && !c.gateset.contains(kind)) {
                report(i, "gate " + name + " not in LLQIR gateset");
            }
            if (kind == GateKind::CNOT ? nc != 1 : nc != 0) {
                report(i, name + ": LLQIR allows controls only on cnot (exactly one)");
            }
            if (!cmd.pending.empty()) report(i, name + ": unresolved pending controls in LLQIR");
            if (cmd.section.tag != SectionTag::None) report(i, name + ": section tag in LLQIR");
        }

        if (cmd.section.tag == SectionTag::Compute) {
            ++sections[cmd.section.id].first;
            if (kind == GateKind::Measure) report(i, "measure inside a compute section");
        } else if (cmd.section.tag == SectionTag::Uncompute) {
            ++sections[cmd.section.id].second;
            if (kind == GateKind::Measure) report(i, "measure inside an uncompute section");
        }
    }

    for (const auto& [id, counts] : sections) {
        if (counts.first == 0 || counts.second == 0) {
            report(Diagnostic::npos, "section " + std::to_string(id) +
                                         (counts.first == 0 ? ": uncompute without compute"
                                                            : ": compute without uncompute"));
        }
    }
    return diags;
}

void require_valid(const Circuit& c) {
    const auto diags = validate(c);
    if (diags.empty()) return;
    std::ostringstream os;
    os << "invalid circuit:";
    for (const auto& d : diags) {
        os << "\n  ";
        if (d.index != Diagnostic::npos) os << "command " << d.index << ": ";
        os << d.message;
    }
    throw Error(ErrorCode::Validation, os.str());
}

}  // namespace qcomp
