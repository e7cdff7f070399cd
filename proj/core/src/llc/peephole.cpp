#include "qcomp/llc/peephole.hpp"

#include <optional>
#include <vector>

namespace qcomp::llc {

namespace {

int diagonal_power(GateKind k) {
    switch (k) {
        case GateKind::T: return 1;
        case GateKind::S: return 2;
        case GateKind::Z: return 4;
        case GateKind::Sdg: return 6;
        case GateKind::Tdg: return 7;
        default: return -1;
    }
}

std::optional<GateKind> single_letter(int power) {
    switch (power & 7) {
        case 1: return GateKind::T;
        case 2: return GateKind::S;
        case 4: return GateKind::Z;
        case 6: return GateKind::Sdg;
        case 7: return GateKind::Tdg;
        default: return std::nullopt;
    }
}

bool plain(const Command& c) { return c.pending.empty(); }

enum class Outcome { None, Cancel, Replace };

Outcome combine(const Command& a, const Command& b, GateKind& replacement) {
    if (!plain(a) || !plain(b) || a.section != b.section || a.controls != b.controls) return Outcome::None;
    const GateKind ka = a.gate.kind;
    const GateKind kb = b.gate.kind;
    if (ka == GateKind::Swap && kb == GateKind::Swap && a.controls.empty()) {
        const bool same = (a.targets == b.targets) ||
                          (a.targets[0] == b.targets[1] && a.targets[1] == b.targets[0]);
        return same ? Outcome::Cancel : Outcome::None;
    }
    if (a.targets != b.targets || a.targets.size() != 1) return Outcome::None;
    if (ka == GateKind::CNOT && kb == GateKind::CNOT) return Outcome::Cancel;
    if (!a.controls.empty()) return Outcome::None;
    if (ka == kb && (ka == GateKind::H || ka == GateKind::X || ka == GateKind::Y)) return Outcome::Cancel;
    const int pa = diagonal_power(ka);
    const int pb = diagonal_power(kb);
    if (pa < 0 || pb < 0) return Outcome::None;
    const int p = (pa + pb) & 7;
    if (p == 0) return Outcome::Cancel;
    if (auto letter = single_letter(p)) {
        replacement = *letter;
        return Outcome::Replace;
    }
    return Outcome::None;
}

class Pass {
public:
    explicit Pass(std::size_t n) : touching_(n) {}

    void push(Command cmd) {
        if (auto prev = last_touching(cmd)) {
            GateKind replacement{};
            const Outcome o = combine(*out_[*prev], cmd, replacement);
            if (o != Outcome::None) {
                changed_ = true;
                Command merged = std::move(*out_[*prev]);
                remove(*prev);
                if (o == Outcome::Replace) {
                    merged.gate = Gate::simple(replacement);
                    push(std::move(merged));
                }
                return;
            }
        }
        for (Qubit q : cmd.all_qubits()) touching_[q].push_back(out_.size());
        out_.push_back(std::move(cmd));
    }

    [[nodiscard]] bool changed() const { return changed_; }

    std::vector<Command> take() {
        std::vector<Command> result;
        for (auto& c : out_) {
            if (c) result.push_back(std::move(*c));
        }
        return result;
    }

private:
    std::optional<std::size_t> last_touching(const Command& cmd) const {
        std::optional<std::size_t> best;
        for (Qubit q : cmd.all_qubits()) {
            if (!touching_[q].empty() && (!best || touching_[q].back() > *best)) best = touching_[q].back();
        }
        return best;
    }

    void remove(std::size_t idx) {
        for (Qubit q : out_[idx]->all_qubits()) touching_[q].pop_back();
        out_[idx].reset();
    }

    std::vector<std::optional<Command>> out_;
    std::vector<std::vector<std::size_t>> touching_;
    bool changed_ = false;
};

}  // namespace

Circuit peephole_optimize(const Circuit& c) {
    Circuit result = c;
    while (true) {
        Pass pass(result.num_qubits);
        for (const Command& cmd : result.commands) pass.push(cmd);
        if (!pass.changed()) return result;
        result.commands = pass.take();
    }
}

}  // namespace qcomp::llc
