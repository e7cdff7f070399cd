#include "qcomp/ir/text.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "qcomp/error.hpp"

namespace qcomp {

namespace {

std::string_view section_name(SectionTag tag) {
    return tag == SectionTag::Compute ? "compute" : "uncompute";
}

void write_qubits(std::ostringstream& os, const std::vector<Qubit>& qs) {
    for (Qubit q : qs) os << ' ' << q;
}

void write_segments(std::ostringstream& os, const std::vector<Qubit>& ctrl,
                    const std::vector<Qubit>& pending) {
    if (!ctrl.empty()) {
        os << " ctrl";
        write_qubits(os, ctrl);
        os << " :";
    }
    if (!pending.empty()) {
        os << " pctrl";
        write_qubits(os, pending);
        os << " :";
    }
}

void write_command(std::ostringstream& os, const Command& cmd) {
    const GateKind kind = cmd.gate.kind;
    if (is_bookkeeping(kind)) {
        os << gate_name(kind);
        write_segments(os, cmd.controls, cmd.pending);
        write_qubits(os, cmd.targets);
        return;
    }
    if (kind == GateKind::LibCall) {
        const LibCall& lib = *cmd.gate.lib;
        os << "call " << lib.name;
        if (!lib.params.empty()) {
            os << '(';
            for (std::size_t i = 0; i < lib.params.size(); ++i) {
                if (i) os << ',';
                os << lib.params[i];
            }
            os << ')';
        }
        write_segments(os, cmd.controls, cmd.pending);
        const auto regs = cmd.registers();
        for (std::size_t r = 0; r < regs.size(); ++r) {
            if (r) os << " |";
            write_qubits(os, regs[r]);
        }
        return;
    }
    os << "apply " << gate_name(kind);
    if (is_rotation(kind)) os << '(' << format_angle(cmd.gate.angle) << ')';
    std::vector<Qubit> extra = cmd.controls;
    std::vector<Qubit> positional;
    if (builtin_controls(kind) > 0 && !extra.empty()) {
        positional.push_back(extra.front());
        extra.erase(extra.begin());
    }
    positional.insert(positional.end(), cmd.targets.begin(), cmd.targets.end());
    write_segments(os, extra, cmd.pending);
    write_qubits(os, positional);
}

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    auto flush = [&] {
        if (!cur.empty()) tokens.push_back(std::move(cur));
        cur.clear();
    };
    for (char ch : line) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == ' ' || ch == '\t' || ch == '\r')) {
            flush();
        } else if (depth == 0 && (ch == ':' || ch == '|')) {
            flush();
            tokens.emplace_back(1, ch);
        } else if (depth > 0 && (ch == ' ' || ch == '\t')) {
            // allow "rz( 0.5 )"
        } else {
            cur.push_back(ch);
        }
    }
    flush();
    return tokens;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T value{};
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

class LineParser {
public:
    LineParser(std::size_t line, std::vector<std::string> tokens)
        : line_(line), tokens_(std::move(tokens)) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

    bool done() const { return pos_ >= tokens_.size(); }
    const std::string& peek() const { return tokens_[pos_]; }
    std::string next() {
        if (done()) fail("unexpected end of line");
        return tokens_[pos_++];
    }

    Qubit qubit(const std::string& tok) const {
        auto v = parse_number<std::uint64_t>(tok);
        if (!v || *v > 0xffffffffull) fail("expected qubit index, got '" + tok + "'");
        return static_cast<Qubit>(*v);
    }

    /// Optional `<keyword> q... :` segment.
    std::vector<Qubit> segment(std::string_view keyword) {
        std::vector<Qubit> qs;
        if (done() || peek() != keyword) return qs;
        ++pos_;
        while (true) {
            const std::string tok = next();
            if (tok == ":") break;
            qs.push_back(qubit(tok));
        }
        if (qs.empty()) fail(std::string(keyword) + " segment lists no qubits");
        return qs;
    }

    /// Remaining qubit lists separated by '|'.
    std::vector<std::vector<Qubit>> registers() {
        std::vector<std::vector<Qubit>> regs(1);
        while (!done()) {
            const std::string tok = next();
            if (tok == "|") {
                regs.emplace_back();
            } else {
                regs.back().push_back(qubit(tok));
            }
        }
        return regs;
    }

private:
    std::size_t line_;
    std::vector<std::string> tokens_;
    std::size_t pos_ = 0;
};

std::pair<std::string, std::optional<std::string>> split_call(const std::string& tok) {
    const auto open = tok.find('(');
    if (open == std::string::npos) return {tok, std::nullopt};
    return {tok.substr(0, open), tok.substr(open + 1, tok.size() - open - 2)};
}

std::vector<Qubit> sorted_unique(std::vector<Qubit> qs) {
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    return qs;
}

}  // namespace

std::string format_angle(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string serialize(const Circuit& c) {
    std::ostringstream os;
    os << "qir 1\n";
    os << "qubits " << c.num_qubits << '\n';
    os << "level " << (c.level == Level::LLQIR ? "llqir" : "qir") << '\n';
    if (c.level == Level::LLQIR) {
        os << "gateset";
        for (GateKind k : c.gateset) os << ' ' << gate_name(k);
        os << '\n';
    }
    std::optional<Section> open;
    for (const Command& cmd : c.commands) {
        if (open && !(cmd.section == *open)) {
            os << "section " << section_name(open->tag) << " end " << open->id << '\n';
            open.reset();
        }
        if (!open && cmd.section.tag != SectionTag::None) {
            open = cmd.section;
            os << "section " << section_name(open->tag) << " begin " << open->id << '\n';
        }
        write_command(os, cmd);
        os << '\n';
    }
    if (open) os << "section " << section_name(open->tag) << " end " << open->id << '\n';
    return os.str();
}

Circuit parse(std::string_view text) {
    Circuit c;
    bool seen_version = false;
    bool seen_qubits = false;
    bool seen_level = false;
    bool seen_gateset = false;
    std::optional<Section> open;
    std::vector<std::uint32_t> unmatched_compute;
    std::uint32_t next_id = 0;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = tokenize(line);
        if (tokens.empty()) {
            if (end == text.size()) break;
            continue;
        }
        LineParser p(line_no, std::move(tokens));
        const std::string head = p.next();

        if (!seen_version) {
            if (head != "qir") p.fail("expected 'qir 1' header");
            if (p.next() != "1") p.fail("unsupported format version");
            seen_version = true;
        } else if (head == "qubits") {
            if (seen_qubits) p.fail("duplicate qubits line");
            auto n = parse_number<std::size_t>(p.next());
            if (!n) p.fail("bad qubit count");
            c.num_qubits = *n;
            seen_qubits = true;
        } else if (head == "level") {
            if (seen_level) p.fail("duplicate level line");
            const std::string lv = p.next();
            if (lv == "qir") {
                c.level = Level::QIR;
            } else if (lv == "llqir") {
                c.level = Level::LLQIR;
                c.gateset = default_llqir_gateset();
            } else {
                p.fail("unknown level '" + lv + "'");
            }
            seen_level = true;
        } else if (head == "gateset") {
            if (!seen_level || c.level != Level::LLQIR) p.fail("gateset only valid for llqir");
            if (seen_gateset || !c.commands.empty()) p.fail("gateset must precede commands");
            c.gateset.clear();
            while (!p.done()) {
                const std::string name = p.next();
                auto kind = gate_kind_from_name(name);
                if (!kind || !is_unitary(*kind)) p.fail("unknown gate '" + name + "' in gateset");
                c.gateset.insert(*kind);
            }
            seen_gateset = true;
        } else if (!seen_qubits || !seen_level) {
            p.fail("'qubits' and 'level' lines must precede commands");
        } else if (head == "section") {
            const std::string which = p.next();
            const std::string edge = p.next();
            SectionTag tag;
            if (which == "compute") {
                tag = SectionTag::Compute;
            } else if (which == "uncompute") {
                tag = SectionTag::Uncompute;
            } else {
                p.fail("unknown section kind '" + which + "'");
            }
            std::optional<std::uint32_t> id;
            if (!p.done()) {
                id = parse_number<std::uint32_t>(p.next());
                if (!id) p.fail("bad section id");
            }
            if (!p.done()) p.fail("trailing tokens after section");
            if (edge == "begin") {
                if (open) p.fail("nested section");
                if (!id) {
                    if (tag == SectionTag::Compute) {
                        id = next_id;
                    } else if (!unmatched_compute.empty()) {
                        id = unmatched_compute.back();
                    } else {
                        p.fail("uncompute section without a preceding compute section");
                    }
                }
                if (tag == SectionTag::Compute) {
                    unmatched_compute.push_back(*id);
                } else {
                    auto it = std::find(unmatched_compute.begin(), unmatched_compute.end(), *id);
                    if (it != unmatched_compute.end()) unmatched_compute.erase(it);
                }
                next_id = std::max(next_id, *id + 1);
                open = Section{tag, *id};
            } else if (edge == "end") {
                if (!open || open->tag != tag || (id && *id != open->id)) {
                    p.fail("section end does not match an open section");
                }
                open.reset();
            } else {
                p.fail("expected 'begin' or 'end'");
            }
        } else {
            Command cmd;
            if (head == "apply") {
                auto [name, arg] = split_call(p.next());
                auto kind = gate_kind_from_name(name);
                if (!kind || !is_unitary(*kind)) p.fail("unknown gate '" + name + "'");
                cmd.gate = Gate::simple(*kind);
                if (is_rotation(*kind)) {
                    if (!arg) p.fail("gate '" + name + "' requires an angle");
                    auto v = parse_number<double>(*arg);
                    if (!v) p.fail("bad angle '" + *arg + "'");
                    cmd.gate.angle = *v;
                } else if (arg) {
                    p.fail("gate '" + name + "' takes no parameter");
                }
                std::vector<Qubit> ctrl = p.segment("ctrl");
                cmd.pending = sorted_unique(p.segment("pctrl"));
                auto regs = p.registers();
                if (regs.size() != 1) p.fail("'|' is only valid in call lines");
                std::vector<Qubit> positional = std::move(regs.front());
                if (builtin_controls(*kind) > 0) {
                    if (positional.empty()) p.fail(name + " requires a control qubit");
                    ctrl.push_back(positional.front());
                    positional.erase(positional.begin());
                }
                if (positional.empty()) p.fail(name + " requires target qubits");
                cmd.controls = sorted_unique(std::move(ctrl));
                cmd.targets = std::move(positional);
            } else if (head == "call") {
                auto [name, arg] = split_call(p.next());
                if (name.empty()) p.fail("missing library name");
                std::vector<std::int64_t> params;
                if (arg && !arg->empty()) {
                    std::string_view rest = *arg;
                    while (true) {
                        const auto comma = rest.find(',');
                        auto v = parse_number<std::int64_t>(rest.substr(0, comma));
                        if (!v) p.fail("bad integer parameter in '" + std::string(*arg) + "'");
                        params.push_back(*v);
                        if (comma == std::string_view::npos) break;
                        rest = rest.substr(comma + 1);
                    }
                }
                std::vector<Qubit> ctrl = p.segment("ctrl");
                std::vector<Qubit> pending = p.segment("pctrl");
                auto regs = p.registers();
                cmd = Command::call(name, std::move(params), regs);
                cmd.controls = sorted_unique(std::move(ctrl));
                cmd.pending = sorted_unique(std::move(pending));
            } else if (auto kind = gate_kind_from_name(head); kind && is_bookkeeping(*kind)) {
                cmd.gate = Gate::simple(*kind);
                cmd.controls = sorted_unique(p.segment("ctrl"));
                cmd.pending = sorted_unique(p.segment("pctrl"));
                auto regs = p.registers();
                if (regs.size() != 1 || regs.front().empty()) p.fail(head + " requires qubits");
                cmd.targets = std::move(regs.front());
            } else {
                p.fail("unknown statement '" + head + "'");
            }
            if (open) cmd.section = *open;
            c.commands.push_back(std::move(cmd));
        }
        if (end == text.size()) break;
    }
    if (!seen_version) throw ParseError(line_no, "empty input");
    if (!seen_qubits || !seen_level) throw ParseError(line_no, "missing 'qubits' or 'level' line");
    if (open) throw ParseError(line_no, "unterminated section");
    return c;
}

}  // namespace qcomp
