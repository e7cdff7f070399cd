#include "qcomp/hlc/passes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "qcomp/error.hpp"

namespace qcomp::hlc {

namespace {

bool bookkeeping(const Command& cmd) {
    return cmd.gate.kind == GateKind::Allocate || cmd.gate.kind == GateKind::Deallocate;
}

void prepend_control_register(Command& cmd, Qubit q, std::string variant) {
    cmd.gate.lib->name = std::move(variant);
    cmd.gate.lib->register_sizes.insert(cmd.gate.lib->register_sizes.begin(), 1);
    cmd.targets.insert(cmd.targets.begin(), q);
}

void resolve_in_place(std::vector<Command>& cmds, const LibraryRegistry& reg) {
    for (Command& cmd : cmds) {
        if (cmd.pending.empty()) continue;
        if (cmd.gate.kind == GateKind::Measure) {
            throw Error(ErrorCode::Compile, "measurement under a quantum control cannot be compiled");
        }
        if (bookkeeping(cmd) || cmd.section.tag != SectionTag::None) {
            cmd.pending.clear();
            continue;
        }
        if (cmd.gate.kind == GateKind::LibCall) {
            while (!cmd.pending.empty()) {
                auto variant = reg.controlled_variant(cmd.gate.lib->name);
                if (!variant) break;
                prepend_control_register(cmd, cmd.pending.front(), std::move(*variant));
                cmd.pending.erase(cmd.pending.begin());
            }
        }
        cmd.add_controls(cmd.pending);
        cmd.pending.clear();
        // Controlled X and Phase have dedicated kinds.
        if (cmd.gate.kind == GateKind::X) cmd.gate.kind = GateKind::CNOT;
        if (cmd.gate.kind == GateKind::Phase) cmd.gate.kind = GateKind::CR;
    }
}

class Inliner {
public:
    Inliner(const Circuit& c, const LibraryRegistry& reg, InlineOptions options)
        : reg_(reg), options_(options), out_(c.num_qubits, c.level), next_id_(c.next_section_id()) {
        out_.gateset = c.gateset;
        std::set<Qubit> allocated_later;
        for (const Command& cmd : c.commands) {
            if (cmd.gate.kind == GateKind::Allocate) {
                allocated_later.insert(cmd.targets.begin(), cmd.targets.end());
            }
        }
        for (Qubit q = 0; q < c.num_qubits; ++q) {
            if (!allocated_later.contains(q)) live_.insert(q);
        }
    }

    void stream(const Command& cmd, std::size_t depth) {
        if (cmd.gate.kind == GateKind::Allocate) {
            live_.insert(cmd.targets.begin(), cmd.targets.end());
        } else if (cmd.gate.kind == GateKind::Deallocate) {
            for (Qubit q : cmd.targets) live_.erase(q);
        }
        if (cmd.gate.kind != GateKind::LibCall || reg_.opaque(cmd.gate.lib->name)) {
            out_.push_back(cmd);
            return;
        }
        if (depth >= options_.max_depth) {
            throw Error(ErrorCode::Recursion, "library expansion of '" + cmd.gate.lib->name +
                                                  "' exceeded depth " +
                                                  std::to_string(options_.max_depth));
        }
        std::vector<Qubit> reusable;
        const auto own = cmd.all_qubits();
        for (Qubit q = 0; q < out_.num_qubits; ++q) {
            if (!live_.contains(q) && std::find(own.begin(), own.end(), q) == own.end()) {
                reusable.push_back(q);
            }
        }
        Command bare = cmd;
        bare.controls.clear();
        bare.pending.clear();
        std::size_t width = out_.num_qubits;
        std::vector<Command> body = reg_.generate(bare, out_.num_qubits, reusable, width);
        out_.num_qubits = std::max(out_.num_qubits, width);

        for (Command& b : body) {
            if (!bookkeeping(b)) b.add_pending(cmd.controls);
        }
        resolve_in_place(body, reg_);
        std::map<std::uint32_t, std::uint32_t> fresh;
        for (Command& b : body) {
            if (!bookkeeping(b)) b.add_pending(cmd.pending);
            if (cmd.section.tag != SectionTag::None) {
                b.section = cmd.section;
            } else if (b.section.tag != SectionTag::None) {
                auto [it, inserted] = fresh.try_emplace(b.section.id, next_id_);
                if (inserted) ++next_id_;
                b.section.id = it->second;
            }
        }
        for (const Command& b : body) stream(b, depth + 1);
    }

    Circuit take() { return std::move(out_); }

private:
    const LibraryRegistry& reg_;
    InlineOptions options_;
    Circuit out_;
    std::uint32_t next_id_;
    std::set<Qubit> live_;
};

bool mergeable(const Command& a, const Command& b) {
    return is_rotation(a.gate.kind) && a.gate.kind == b.gate.kind && a.targets == b.targets &&
           a.controls == b.controls && a.pending == b.pending && a.section == b.section;
}

bool negligible(double angle, double period, double tol) {
    const double r = std::abs(std::remainder(angle, period));
    return r < tol;
}

}  // namespace

Circuit resolve_controls(const Circuit& c, const LibraryRegistry& reg) {
    Circuit out = c;
    resolve_in_place(out.commands, reg);
    return out;
}

Circuit inline_libraries(const Circuit& c, const LibraryRegistry& reg, InlineOptions options) {
    Inliner inliner(c, reg, options);
    for (const Command& cmd : c.commands) inliner.stream(cmd, 0);
    return inliner.take();
}

Circuit fold_rotations(const Circuit& c, double tol) {
    std::vector<std::optional<Command>> out;
    out.reserve(c.commands.size());
    // Per qubit, indices into `out` of live commands touching it, oldest first.
    std::vector<std::vector<std::size_t>> touching(c.num_qubits);

    auto last_touching = [&](const Command& cmd) -> std::optional<std::size_t> {
        std::optional<std::size_t> best;
        for (Qubit q : cmd.all_qubits()) {
            if (q < touching.size() && !touching[q].empty()) {
                if (!best || touching[q].back() > *best) best = touching[q].back();
            }
        }
        return best;
    };

    for (const Command& cmd : c.commands) {
        if (is_rotation(cmd.gate.kind)) {
            const double period = rotation_period(cmd.gate.kind);
            if (auto prev = last_touching(cmd); prev && mergeable(*out[*prev], cmd)) {
                Command& merged = *out[*prev];
                merged.gate.angle = std::remainder(merged.gate.angle + cmd.gate.angle, period);
                if (negligible(merged.gate.angle, period, tol)) {
                    for (Qubit q : merged.all_qubits()) touching[q].pop_back();
                    out[*prev].reset();
                }
                continue;
            }
            if (negligible(cmd.gate.angle, period, tol)) continue;
        }
        for (Qubit q : cmd.all_qubits()) touching[q].push_back(out.size());
        out.push_back(cmd);
    }
    Circuit result(c.num_qubits, c.level);
    result.gateset = c.gateset;
    for (auto& cmd : out) {
        if (cmd) result.push_back(std::move(*cmd));
    }
    return result;
}

Circuit compile_high_level(const Circuit& c, const LibraryRegistry& reg, InlineOptions options) {
    return fold_rotations(inline_libraries(resolve_controls(c, reg), reg, options));
}

}  // namespace qcomp::hlc
