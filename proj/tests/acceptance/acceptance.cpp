// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcomp/backends/backend.hpp"
#include "qcomp/backends/emulator.hpp"
#include "qcomp/backends/resources.hpp"
#include "qcomp/backends/simulator.hpp"
#include "qcomp/builder/program_builder.hpp"
#include "qcomp/driver/pipeline.hpp"
#include "qcomp/driver/shor.hpp"
#include "qcomp/hlc/passes.hpp"
#include "qcomp/ir/matrix.hpp"
#include "qcomp/ir/text.hpp"
#include "qcomp/layout/layout.hpp"
#include "qcomp/llc/decompose.hpp"
#include "qcomp/llc/lower.hpp"
#include "qcomp/llc/peephole.hpp"
#include "qcomp/llc/synthesis.hpp"
#include "qcomp/qlib/qlib.hpp"
#include "support/oracle.hpp"

namespace {

using namespace qcomp;
using builder::ProgramBuilder;
using std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failed checks; the first few are kept for the report line.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        ++total_;
        if (ok) return;
        ++failed_;
        if (failed_ <= 3) failures_ += (failures_.empty() ? "" : "; ") + what;
    }
    void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }

    [[nodiscard]] Outcome outcome() const {
        if (failed_ == 0) return {true, notes_};
        return {false, std::to_string(failed_) + "/" + std::to_string(total_) + " checks failed: " + failures_};
    }

private:
    std::size_t total_ = 0;
    std::size_t failed_ = 0;
    std::string failures_;
    std::string notes_;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::vector<Qubit> iota(std::size_t first, std::size_t n) {
    std::vector<Qubit> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Qubit>(first + i);
    return v;
}

// The basis state carrying (almost) all probability, or ~0 when none does.
std::uint64_t basis_of(const backends::Statevector& sv) {
    const auto amps = sv.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (std::norm(amps[i]) > 1.0 - 1e-10) return i;
    }
    return ~std::uint64_t{0};
}

double tv_oracle(const backends::Distribution& p, const backends::Distribution& q) {
    std::map<std::uint64_t, double> diff;
    for (const auto& [k, v] : p.probabilities) diff[k] += v;
    for (const auto& [k, v] : q.probabilities) diff[k] -= v;
    double tv = 0.0;
    for (const auto& [k, v] : diff) tv += std::abs(v);
    return tv / 2;
}

Circuit inlined(const Circuit& c) { return hlc::compile_high_level(c, qlib::standard_registry()); }

std::size_t t_count_of(const Circuit& c) {
    std::size_t n = 0;
    for (const auto& cmd : c.commands) n += (cmd.gate.kind == GateKind::T || cmd.gate.kind == GateKind::Tdg) ? 1 : 0;
    return n;
}

Matrix2 letter(GateKind g) {
    Matrix2 m = Matrix2::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    switch (g) {
        case GateKind::H: m << r, r, r, -r; break;
        case GateKind::X: m << 0, 1, 1, 0; break;
        case GateKind::Z: m << 1, 0, 0, -1; break;
        case GateKind::S: m << 1, 0, 0, Complex(0, 1); break;
        case GateKind::Sdg: m << 1, 0, 0, Complex(0, -1); break;
        case GateKind::T: m << 1, 0, 0, std::polar(1.0, pi / 4); break;
        case GateKind::Tdg: m << 1, 0, 0, std::polar(1.0, -pi / 4); break;
        default: m << std::nan(""), 0, 0, std::nan(""); break;
    }
    return m;
}

// Product of the letters' tables in time order, independent of the library.
Matrix2 word_product(const llc::Word& w) {
    Matrix2 m = Matrix2::Identity();
    for (GateKind g : w) m = letter(g) * m;
    return m;
}

// Basis permutation sending logical bit l to hardware bit map(l).
Matrix permutation_matrix(const layout::QubitMap& m) {
    const std::size_t n = m.size();
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n);
    Matrix p = Matrix::Zero(dim, dim);
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
        std::uint64_t y = 0;
        for (std::size_t l = 0; l < n; ++l) {
            if ((x >> l) & 1u) y |= std::uint64_t{1} << m.hardware(static_cast<Qubit>(l));
        }
        p(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = 1.0;
    }
    return p;
}

Circuit random_llqir(std::mt19937_64& rng, std::size_t n, std::size_t length) {
    using enum GateKind;
    static const std::array<GateKind, 8> letters{H, T, Tdg, S, Sdg, X, Z, CNOT};
    Circuit c(n, Level::LLQIR);
    for (std::size_t i = 0; i < length; ++i) {
        const GateKind k = letters[rng() % letters.size()];
        const auto q = static_cast<Qubit>(rng() % n);
        if (k == CNOT) {
            c.push_back(Command::cnot(q, static_cast<Qubit>((q + 1 + rng() % (n - 1)) % n)));
        } else {
            c.push_back(Command::single(k, q));
        }
    }
    return c;
}

// --- criteria ---------------------------------------------------------------

Outcome appendix_example() {
    Checks ck;
    const Complex a0{0.6, 0.0}, a1{0.0, 0.8};
    const Complex b0{1.0 / std::sqrt(2.0), 0.0}, b1{0.5, 0.5};
    // alpha is the first (high-order) qubit, index 1.
    auto sv = backends::Statevector::from_amplitudes({a0 * b0, a0 * b1, a1 * b0, a1 * b1});
    backends::Simulator sim;
    sim.apply(sv, Command::cnot(1, 0));
    const std::array<Complex, 4> after_cnot{a0 * b0, a0 * b1, a1 * b1, a1 * b0};
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(sv.amplitude(i) - after_cnot[i]));
    ck.expect(worst < 1e-12, "CNOT mapping off by " + sci(worst));
    sim.apply(sv, Command::single(GateKind::X, 1));
    const std::array<Complex, 4> after_x{a1 * b1, a1 * b0, a0 * b0, a0 * b1};
    double worst_x = 0.0;
    for (std::size_t i = 0; i < 4; ++i) worst_x = std::max(worst_x, std::abs(sv.amplitude(i) - after_x[i]));
    ck.expect(worst_x < 1e-12, "X mapping off by " + sci(worst_x));
    ck.note("max error " + sci(std::max(worst, worst_x)));
    return ck.outcome();
}

Outcome quifelse_three_vs_ten() {
    Checks ck;
    driver::ProgramParams p;
    p.theta = 0.8;
    auto lowered = [](const Circuit& c) { return llc::expand_controlled(hlc::resolve_controls(c)); };
    const Circuit fast = lowered(driver::builtin_program("fig6-quifelse", p));
    const Circuit naive = lowered(driver::builtin_program("fig6-naive", p));
    const auto rf = backends::count_resources(fast);
    const auto rn = backends::count_resources(naive);
    ck.expect(rf.total_gates() == 3, "quifelse path has " + std::to_string(rf.total_gates()) + " gates");
    ck.expect(rn.total_gates() == 10, "naive path has " + std::to_string(rn.total_gates()) + " gates");
    const double d = testing::brute_force_distance(testing::reference_unitary(fast), testing::reference_unitary(naive));
    ck.expect(d < 1e-12, "unitaries differ by " + sci(d));
    ck.note(std::to_string(rf.total_gates()) + " vs " + std::to_string(rn.total_gates()) + " gates, distance " + sci(d));
    return ck.outcome();
}

Outcome controlled_compute_action() {
    Checks ck;
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        auto shifted = [](Circuit c) {
            c.num_qubits = 3;
            for (auto& cmd : c.commands) {
                for (auto& q : cmd.targets) ++q;
                for (auto& q : cmd.controls) ++q;
            }
            return c;
        };
        const Circuit u = shifted(testing::random_circuit(rng, 2, 6, false));
        const Circuit v = shifted(testing::random_circuit(rng, 2, 4, false));
        ProgramBuilder b(3);
        b.with_control(0, [&](ProgramBuilder& b) {
            b.with_compute([&](ProgramBuilder& b) { b.append(u.commands); },
                           [&](ProgramBuilder& b) { b.append(v.commands); });
        });
        const Circuit c = hlc::resolve_controls(b.finish());
        std::size_t controlled = 0;
        for (const auto& cmd : c.commands) {
            controlled += std::find(cmd.controls.begin(), cmd.controls.end(), Qubit{0}) != cmd.controls.end() ? 1 : 0;
        }
        ck.expect(controlled == v.size(), "trial " + std::to_string(trial) + ": " + std::to_string(controlled) +
                                              " controlled commands for an action of " + std::to_string(v.size()));
        const Matrix mu = testing::reference_unitary(u);
        const Matrix on = mu.adjoint() * testing::reference_unitary(v) * mu;
        Matrix want = Matrix::Zero(8, 8);
        for (int r = 0; r < 8; ++r) {
            for (int col = 0; col < 8; ++col) {
                if ((r & 1) != (col & 1)) continue;
                want(r, col) = (col & 1) ? on(r, col) : Complex(r == col ? 1.0 : 0.0);
            }
        }
        const double d = testing::brute_force_distance(testing::reference_unitary(c), want);
        ck.expect(d < 1e-10, "trial " + std::to_string(trial) + ": distance " + sci(d));
    }
    ck.note("20 random compute/action pairs");
    return ck.outcome();
}

Outcome lowering_soundness() {
    Checks ck;
    constexpr double eps = 1e-2;
    const auto t0 = std::chrono::steady_clock::now();
    auto db = std::make_shared<const llc::SynthesisDatabase>(
        llc::SynthesisDatabase::build(llc::SynthesisDatabase::kDefaultDepth));
    llc::Synthesizer synth(db);
    const Circuit c = qlib::iqft(3);
    const auto r = llc::lower(c, {.epsilon = eps, .synthesizer = &synth});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double sum = 0.0;
    for (const auto& rot : r.rotations) sum += rot.distance;
    const double d = testing::brute_force_distance(testing::reference_unitary(r.circuit), testing::reference_unitary(c));
    ck.expect(d <= sum + 1e-12, "distance " + sci(d) + " exceeds bound " + sci(sum));
    ck.expect(sum <= 3 * eps, "bound " + sci(sum) + " exceeds 3 eps");
    ck.expect(std::abs(sum - r.error_bound()) < 1e-15, "reported bound disagrees with per-gate sum");
    ck.expect(secs < 30.0, "took " + std::to_string(secs) + " s");
    ck.note("distance " + sci(d) + " <= bound " + sci(sum) + " <= " + sci(3 * eps) + ", " + std::to_string(secs).substr(0, 5) + " s");
    return ck.outcome();
}

Outcome synthesis_tradeoff() {
    Checks ck;
    const double theta = -pi / 8;
    Matrix2 rz = Matrix2::Zero();
    rz(0, 0) = std::polar(1.0, -theta / 2);
    rz(1, 1) = std::polar(1.0, theta / 2);
    const auto coarse = llc::synthesize_rz(theta, 1e-2);
    const auto fine = llc::synthesize_rz(theta, 1e-3);
    const double dc = testing::brute_force_distance(word_product(coarse.word), rz);
    const double df = testing::brute_force_distance(word_product(fine.word), rz);
    ck.expect(dc <= 1e-2, "coarse word misses tolerance: " + sci(dc));
    ck.expect(df <= 1e-3, "fine word misses tolerance: " + sci(df));
    ck.expect(fine.word.size() >= coarse.word.size(), "fine word is shorter than coarse word");
    ck.note("lengths " + std::to_string(coarse.word.size()) + " (1e-2) <= " + std::to_string(fine.word.size()) +
            " (1e-3)");
    return ck.outcome();
}

Outcome arithmetic_oracles() {
    Checks ck;
    backends::Simulator sim;
    {
        const Circuit c = inlined(qlib::draper_add(4));
        std::size_t cases = 0;
        for (std::uint64_t x = 0; x < 16; ++x) {
            for (std::uint64_t y = 0; y < 16; ++y, ++cases) {
                const std::uint64_t want = x | (((x + y) % 16) << 4);
                ck.expect(basis_of(sim.simulate(c, x | (y << 4))) == want,
                          "draper " + std::to_string(x) + "+" + std::to_string(y));
            }
        }
        ck.note("draper " + std::to_string(cases));
    }
    {
        const Circuit c = qlib::cuccaro_add(3);
        std::size_t cases = 0;
        for (std::uint64_t x = 0; x < 8; ++x) {
            for (std::uint64_t y = 0; y < 8; ++y, ++cases) {
                const std::uint64_t want = x | (((x + y) % 8) << 3);  // carry ancilla back at 0
                ck.expect(basis_of(sim.simulate(c, x | (y << 3))) == want,
                          "cuccaro " + std::to_string(x) + "+" + std::to_string(y));
            }
        }
        ck.note("cuccaro " + std::to_string(cases));
    }
    {
        constexpr std::int64_t N = 7;
        const std::size_t n = qlib::bits_for(N);
        std::size_t cases = 0;
        for (std::int64_t a = 0; a < N; ++a) {
            ProgramBuilder b(n + 2);
            const auto reg = iota(0, n + 1);
            qlib::emit_qft(b, reg);
            qlib::emit_modadd(b, a, N, reg, static_cast<Qubit>(n + 1), {});
            qlib::emit_iqft(b, reg);
            const Circuit c = inlined(b.finish());
            for (std::uint64_t x = 0; x < N; ++x, ++cases) {
                // Width covers the overflow qubit, the comparison ancilla and any
                // internal ancillas; all must come back at 0.
                ck.expect(basis_of(sim.simulate(c, x)) == (x + std::uint64_t(a)) % N,
                          "modadd " + std::to_string(a) + "+" + std::to_string(x));
            }
        }
        ck.note("modadd " + std::to_string(cases));
    }
    return ck.outcome();
}

Outcome emulator_agreement() {
    Checks ck;
    backends::Simulator sim;
    backends::Emulator emu;
    qlib::register_emulation(emu);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-pi, pi);
    double worst = 0.0;

    auto compare = [&](const Circuit& c, const std::string& label) {
        backends::SimulatorBackend sb;
        backends::RunOptions ro;
        const auto gate_level = sb.run(inlined(c), ro);
        const auto emulated = emu.emulate(c, 0);
        if (!gate_level.distribution || !emulated.distribution) {
            ck.expect(false, label + ": missing distribution");
            return;
        }
        const double tv = tv_oracle(*gate_level.distribution, *emulated.distribution);
        worst = std::max(worst, tv);
        ck.expect(tv <= 1e-8, label + ": TV " + sci(tv));
    };

    for (std::size_t n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            ProgramBuilder b(n);
            for (std::size_t q = 0; q < n; ++q) {
                b.h(static_cast<Qubit>(q));
                b.rz(angle(rng), static_cast<Qubit>(q));
                if (rng() % 2) b.x(static_cast<Qubit>(q));
                b.h(static_cast<Qubit>(q));
            }
            b.call(trial == 2 ? "iqft" : "qft", {}, {iota(0, n)});
            b.measure(iota(0, n));
            compare(b.finish(), "qft n=" + std::to_string(n));
        }
    }
    for (std::uint64_t a : {2, 4, 7, 11, 13}) {
        ProgramBuilder b(5);
        b.h(0);
        b.rz(angle(rng), 0);
        for (Qubit q : {1, 2, 3}) {
            b.h(q);
            b.rz(angle(rng), q);
        }
        b.call("cua", {static_cast<std::int64_t>(a), 15}, {{0}, iota(1, 4)});
        for (Qubit q = 0; q < 5; ++q) b.h(q);
        b.measure(iota(0, 5));
        compare(b.finish(), "cua a=" + std::to_string(a));
    }
    compare(driver::shor_circuit(7, 15), "order finding a=7");
    ck.note("24 qft + 6 cua circuits, max TV " + sci(worst));
    return ck.outcome();
}

Outcome shor_end_to_end() {
    Checks ck;
    struct Case {
        std::uint64_t N, p, q;
    };
    for (const Case& k : {Case{15, 3, 5}, Case{21, 3, 7}}) {
        const auto t0 = std::chrono::steady_clock::now();
        driver::ShorOptions so;
        so.seed = 7;
        so.backend = "emu";
        const auto r = driver::shor_factor(k.N, so);
        const auto again = driver::shor_factor(k.N, so);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string tag = "N=" + std::to_string(k.N);
        ck.expect(r.success && r.factors && r.factors->first == k.p && r.factors->second == k.q,
                  tag + ": " + (r.success ? "wrong factors" : r.reason));
        ck.expect(r.transcript() == again.transcript(), tag + ": transcript not deterministic");
        ck.expect(secs < 60.0, tag + ": took " + std::to_string(secs) + " s");
        ck.note(tag + " -> " + (r.factors ? std::to_string(r.factors->first) + "x" + std::to_string(r.factors->second)
                                          : std::string("none")));
    }
    // Every decoded r that passed the post-checks divides the true order.
    std::size_t checked = 0;
    for (std::uint64_t N : {15, 21}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            driver::ShorOptions so;
            so.seed = seed;
            const auto r = driver::shor_factor(N, so);
            for (const auto& t : r.trials) {
                if (!t.r || t.note != "order found") continue;
                const std::uint64_t order = driver::multiplicative_order(t.a, N);
                ck.expect(order % *t.r == 0, "N=" + std::to_string(N) + " a=" + std::to_string(t.a) + ": r=" +
                                                 std::to_string(*t.r) + " does not divide " + std::to_string(order));
                ++checked;
            }
        }
    }
    ck.expect(checked > 0, "no trial reached order finding");
    ck.note(std::to_string(checked) + " order-finding trials divide the classical order");
    return ck.outcome();
}

Outcome routing_line() {
    Checks ck;
    std::vector<Circuit> corpus;
    driver::ProgramParams p;
    for (const char* name : {"iqft3", "fig6-quifelse", "fig6-naive"}) {
        corpus.push_back(driver::compile(driver::builtin_program(name, p), driver::Stage::Llc));
    }
    p.n = 2;
    for (const char* name : {"qft", "draper_add", "cuccaro"}) {
        corpus.push_back(driver::compile(driver::builtin_program(name, p), driver::Stage::Llc));
    }
    std::mt19937_64 rng(9);
    for (int i = 0; i < 40; ++i) corpus.push_back(testing::random_circuit(rng, 2 + i % 4, 30, false));

    std::size_t verified = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const Circuit& c = corpus[i];
        const auto g = layout::ConnectivityGraph::line(c.num_qubits);
        const auto r = layout::route(c, g);
        for (const auto& cmd : r.circuit.commands) {
            std::vector<Qubit> qs = cmd.controls;
            qs.insert(qs.end(), cmd.targets.begin(), cmd.targets.end());
            if (qs.size() == 2 && cmd.gate.kind != GateKind::Allocate && cmd.gate.kind != GateKind::Deallocate) {
                const auto gap = qs[0] > qs[1] ? qs[0] - qs[1] : qs[1] - qs[0];
                ck.expect(gap == 1, "circuit " + std::to_string(i) + ": gate on " + std::to_string(qs[0]) + "," +
                                        std::to_string(qs[1]));
            }
        }
        if (c.num_qubits <= 5) {
            const Matrix lhs = testing::reference_unitary(r.circuit) * permutation_matrix(r.initial);
            const Matrix rhs = permutation_matrix(r.final_map) * testing::reference_unitary(c);
            const double err = (lhs - rhs).cwiseAbs().maxCoeff();
            ck.expect(err < 1e-10, "circuit " + std::to_string(i) + ": error " + sci(err));
            ++verified;
        }
    }
    ck.note(std::to_string(corpus.size()) + " circuits adjacent, " + std::to_string(verified) + " verified");
    return ck.outcome();
}

Outcome peephole_corpus() {
    Checks ck;
    std::mt19937_64 rng(2024);
    std::size_t before = 0, after = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Circuit c = random_llqir(rng, 4, 200);
        const Circuit once = llc::peephole_optimize(c);
        const std::string tag = "circuit " + std::to_string(trial);
        ck.expect(llc::peephole_optimize(once) == once, tag + ": not idempotent");
        ck.expect(t_count_of(once) <= t_count_of(c), tag + ": T-count grew");
        const double d = phase_invariant_distance(testing::reference_unitary(once), testing::reference_unitary(c));
        ck.expect(d < 1e-10, tag + ": distance " + sci(d));
        before += c.size();
        after += once.size();
    }
    ck.note("100 circuits, " + std::to_string(before) + " -> " + std::to_string(after) + " gates");
    return ck.outcome();
}

// Everything a run produces that must not depend on the thread count.
std::string artifacts(unsigned threads) {
    backends::set_kernel_threads(threads);
    std::ostringstream out;
    driver::ProgramParams p;
    for (const char* name : {"iqft3", "fig6-quifelse", "cua"}) {
        out << serialize(driver::compile(driver::builtin_program(name, p), driver::Stage::Layout));
    }
    std::mt19937_64 rng(31);
    Circuit c = testing::random_circuit(rng, 12, 200, false);
    for (Qubit q = 0; q < 12; ++q) c.push_back(Command::measure({q}));
    backends::SimulatorBackend sim;
    backends::RunOptions ro;
    ro.seed = 5;
    for (const auto& m : sim.run(c, ro).measurements) out << m.outcome;
    out << '\n';
    driver::ShorOptions so;
    so.seed = 7;
    out << driver::shor_factor(15, so).transcript() << driver::shor_factor(21, so).transcript();
    so.backend = "sim";
    out << driver::shor_factor(15, so).transcript();
    backends::set_kernel_threads(1);
    return out.str();
}

Outcome determinism() {
    Checks ck;
    const std::string one = artifacts(1);
    const std::string again = artifacts(1);
    const std::string four = artifacts(4);
    ck.expect(one == again, "repeat run differs");
    ck.expect(one == four, "thread count changes the artifacts");
    ck.note(std::to_string(one.size()) + " bytes of artifacts identical at 1 and 4 threads");
    return ck.outcome();
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "appendix worked example", 1.0, appendix_example},
        {2, "quifelse 3 vs naive 10 gates", 0.0, quifelse_three_vs_ten},
        {3, "controlled compute/action/uncompute", 0.0, controlled_compute_action},
        {4, "lowering soundness iqft(3)", 30.0, lowering_soundness},
        {5, "synthesis length vs tolerance", 0.0, synthesis_tradeoff},
        {6, "arithmetic oracles", 120.0, arithmetic_oracles},
        {7, "emulator/simulator agreement", 60.0, emulator_agreement},
        {8, "Shor end-to-end", 120.0, shor_end_to_end},
        {9, "routing on a line", 0.0, routing_line},
        {10, "peephole corpus", 60.0, peephole_corpus},
        {11, "determinism", 0.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && secs >= c.budget_s) {
            o.pass = false;
            o.detail += " (over the " + std::to_string(static_cast<int>(c.budget_s)) + " s budget)";
        }
        std::printf("criterion %2d %-38s %s  %.2fs  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                    o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed;
}
