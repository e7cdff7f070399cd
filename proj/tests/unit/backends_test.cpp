#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "qcomp/backends/backend.hpp"
#include "qcomp/backends/emulator.hpp"
#include "qcomp/backends/resources.hpp"
#include "qcomp/backends/simulator.hpp"
#include "qcomp/error.hpp"
#include "qcomp/ir/text.hpp"
#include "qcomp/llc/lower.hpp"
#include "support/oracle.hpp"

namespace qcomp {
namespace {

using namespace backends;
using std::numbers::pi;

Circuit gate_level_qft(std::size_t n) {
    Circuit c(n);
    for (std::size_t j = n; j-- > 0;) {
        c.push_back(Command::single(GateKind::H, static_cast<Qubit>(j)));
        for (std::size_t i = j; i-- > 0;) {
            c.push_back(Command::cr(pi / static_cast<double>(std::uint64_t{1} << (j - i)), static_cast<Qubit>(i),
                                    static_cast<Qubit>(j)));
        }
    }
    return c;
}

Circuit call_circuit(std::size_t n, const std::string& name, std::vector<std::int64_t> params,
                     const std::vector<std::vector<Qubit>>& regs) {
    Circuit c(n);
    c.push_back(Command::call(name, std::move(params), regs));
    return c;
}

std::vector<Qubit> range(std::size_t n) {
    std::vector<Qubit> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Qubit>(i);
    return v;
}

TEST(Simulator, AppendixProductStateExample) {
    const Complex a0{0.6, 0.0}, a1{0.0, 0.8};
    const Complex b0{1.0 / std::sqrt(2.0), 0.0}, b1{0.5, 0.5};
    // Qubit 1 (alpha) is the high-order bit.
    auto sv = Statevector::from_amplitudes({a0 * b0, a0 * b1, a1 * b0, a1 * b1});
    Simulator sim;
    sim.apply(sv, Command::cnot(1, 0));
    const std::vector<Complex> after_cnot{a0 * b0, a0 * b1, a1 * b1, a1 * b0};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(sv.amplitude(i) - after_cnot[i]), 1e-12);
    sim.apply(sv, Command::single(GateKind::X, 1));
    const std::vector<Complex> after_x{a1 * b1, a1 * b0, a0 * b0, a0 * b1};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(sv.amplitude(i) - after_x[i]), 1e-12);
}

TEST(Simulator, SwapMatchesMatrixOracle) {
    Circuit prep(2);
    prep.push_back(Command::rz(0.3, 0));
    prep.push_back(Command::single(GateKind::H, 0));
    prep.push_back(Command::single(GateKind::H, 1));
    prep.push_back(Command::rz(1.1, 1));
    prep.push_back(Command::cnot(0, 1));
    Circuit with_swap = prep;
    with_swap.push_back(Command::swap(0, 1));
    Simulator sim;
    const auto got = sim.simulate(with_swap).amplitudes();
    const Matrix expect = testing::reference_unitary(with_swap);
    for (Eigen::Index i = 0; i < 4; ++i) EXPECT_LT(std::abs(got[static_cast<std::size_t>(i)] - expect(i, 0)), 1e-12);
}

// Property: swaps simulated by relabeling agree with their three-CNOT expansion.
TEST(Simulator, SwapAsRelabelEquivalence) {
    std::mt19937_64 rng(31);
    Simulator sim;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const Circuit c = testing::random_circuit(rng, n, 60);
        Circuit expanded(n);
        for (const Command& cmd : c.commands) {
            if (cmd.gate.kind == GateKind::Swap && cmd.controls.empty()) {
                const Qubit a = cmd.targets[0], b = cmd.targets[1];
                expanded.push_back(Command::cnot(a, b));
                expanded.push_back(Command::cnot(b, a));
                expanded.push_back(Command::cnot(a, b));
            } else {
                expanded.push_back(cmd);
            }
        }
        const std::uint64_t start = rng() % (std::uint64_t{1} << n);
        const auto x = sim.simulate(c, start).amplitudes();
        const auto y = sim.simulate(expanded, start).amplitudes();
        for (std::size_t i = 0; i < x.size(); ++i) ASSERT_LT(std::abs(x[i] - y[i]), 1e-12);
    }
}

// Property: the norm stays 1 after every command of random circuits.
TEST(Simulator, NormPreservation) {
    std::mt19937_64 rng(8);
    Simulator sim;
    for (int trial = 0; trial < 20; ++trial) {
        const Circuit c = testing::random_circuit(rng, 5, 80);
        Statevector sv(5, rng() % 32);
        for (const Command& cmd : c.commands) {
            sim.apply(sv, cmd);
            ASSERT_LT(std::abs(sv.norm_squared() - 1.0), 1e-10);
        }
    }
}

// Property: the simulator agrees with the independent matrix oracle.
TEST(Simulator, AgreesWithReferenceUnitary) {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const Circuit c = testing::random_circuit(rng, n, 40);
        EXPECT_LT((unitary_of(c) - testing::reference_unitary(c)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Simulator, KernelThreadsAreBitwiseDeterministic) {
    std::mt19937_64 rng(4);
    const Circuit c = testing::random_circuit(rng, 12, 300);
    Simulator sim;
    set_kernel_threads(1);
    const auto one = sim.simulate(c, 5).amplitudes();
    set_kernel_threads(4);
    const auto four = sim.simulate(c, 5).amplitudes();
    set_kernel_threads(1);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        ASSERT_EQ(one[i].real(), four[i].real());
        ASSERT_EQ(one[i].imag(), four[i].imag());
    }
}

TEST(Simulator, CapacityAndUnresolvedErrors) {
    Simulator small(SimulatorOptions{3});
    EXPECT_THROW((void)small.simulate(Circuit(4)), Error);
    Circuit c = call_circuit(2, "qft", {}, {{0, 1}});
    try {
        (void)Simulator().simulate(c);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Backend);
        EXPECT_NE(std::string(e.what()).find("qft"), std::string::npos);
    }
}

TEST(Measure, BasisStateIsCertain) {
    Rng rng(1);
    const Qubit q[] = {0};
    const auto r = measure(Statevector(1, 1), q, rng);
    EXPECT_EQ(r.outcome, 1u);
    EXPECT_NEAR(r.state.norm_squared(), 1.0, 1e-12);
}

TEST(Measure, BinomialFrequency) {
    Simulator sim;
    Circuit c(1);
    c.push_back(Command::single(GateKind::H, 0));
    const Statevector plus = sim.simulate(c);
    Rng rng(2024);
    const Qubit q[] = {0};
    constexpr int kTrials = 100000;
    int ones = 0;
    for (int t = 0; t < kTrials; ++t) {
        const auto r = measure(plus, q, rng);
        ones += static_cast<int>(r.outcome);
        ASSERT_NEAR(r.state.norm_squared(), 1.0, 1e-12);
    }
    const double sigma = std::sqrt(kTrials * 0.25);
    EXPECT_LT(std::abs(ones - kTrials / 2.0), 3 * sigma);
}

TEST(Emulator, FftMatchesDftFormula) {
    for (std::size_t n = 1; n <= 6; ++n) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        Emulator emu;
        const Circuit c = call_circuit(n, "qft", {}, {range(n)});
        for (std::uint64_t x = 0; x < dim; ++x) {
            const auto amps = emu.emulate(c, x).state.amplitudes();
            for (std::uint64_t k = 0; k < dim; ++k) {
                const Complex expect = std::polar(1.0 / std::sqrt(double(dim)), 2 * pi * double(x * k) / double(dim));
                ASSERT_LT(std::abs(amps[reverse_bits(k, n)] - expect), 1e-10) << n << ' ' << x << ' ' << k;
            }
        }
    }
}

TEST(Emulator, FftMatchesGateLevelQft) {
    std::mt19937_64 rng(17);
    for (std::size_t n = 1; n <= 8; ++n) {
        std::vector<Complex> amps(std::size_t{1} << n);
        std::normal_distribution<double> g;
        double norm = 0;
        for (auto& a : amps) {
            a = {g(rng), g(rng)};
            norm += std::norm(a);
        }
        for (auto& a : amps) a /= std::sqrt(norm);
        const auto init = Statevector::from_amplitudes(amps);
        Emulator emu;
        for (const char* name : {"qft", "iqft"}) {
            const bool inv = std::string(name) == "iqft";
            const Circuit gates = inv ? inverse(gate_level_qft(n)) : gate_level_qft(n);
            const auto want = Simulator().simulate(gates, init).amplitudes();
            const auto got = emu.emulate(call_circuit(n, name, {}, {range(n)}), init).state.amplitudes();
            for (std::size_t i = 0; i < want.size(); ++i) ASSERT_LT(std::abs(want[i] - got[i]), 1e-10);
        }
    }
}

TEST(Emulator, PermutationCallMatchesArithmetic) {
    Emulator emu;
    emu.register_permutation("mulmod", [](const LibCall& call, std::uint64_t x) {
        const auto a = static_cast<std::uint64_t>(call.params[0]);
        const auto n = static_cast<std::uint64_t>(call.params[1]);
        return x < n ? (a * x) % n : x;
    });
    const Circuit c = call_circuit(4, "mulmod", {7, 15}, {range(4)});
    for (std::uint64_t x = 0; x < 16; ++x) {
        const auto sv = emu.emulate(c, x).state;
        const std::uint64_t want = x < 15 ? (7 * x) % 15 : x;
        EXPECT_NEAR(std::abs(sv.amplitude(want)), 1.0, 1e-12);
    }
    // 3 is not invertible mod 15: the action collides and must be rejected.
    EXPECT_THROW((void)emu.emulate(call_circuit(4, "mulmod", {3, 15}, {range(4)})), Error);
    EXPECT_THROW((void)emu.emulate(call_circuit(4, "unknown", {}, {range(4)})), Error);
}

TEST(Emulator, ControlsRestrictLibraryCalls) {
    Emulator emu;
    emu.register_permutation("inc", [](const LibCall&, std::uint64_t x) { return (x + 1) % 4; });
    Circuit c = call_circuit(3, "inc", {}, {{0, 1}});
    c.commands[0].controls = {2};
    EXPECT_NEAR(std::abs(emu.emulate(c, 0b001).state.amplitude(0b001)), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(emu.emulate(c, 0b101).state.amplitude(0b110)), 1.0, 1e-12);
}

TEST(Emulator, RepeatedSquaringMatchesEigendecomposition) {
    std::mt19937_64 rng(99);
    const Circuit block = testing::random_circuit(rng, 2, 12, false);
    const Matrix u = testing::reference_unitary(block);
    constexpr std::uint64_t k = std::uint64_t{1} << 20;
    Eigen::ComplexEigenSolver<Matrix> es(u);
    Matrix d = Matrix::Zero(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        const double arg = std::arg(es.eigenvalues()(i));
        d(i, i) = std::polar(1.0, std::fmod(arg * static_cast<double>(k), 2 * pi));
    }
    const Matrix oracle = es.eigenvectors() * d * es.eigenvectors().inverse();
    const Matrix fast = matrix_power(u, k);
    EXPECT_LT((fast - oracle).cwiseAbs().maxCoeff(), 1e-8);

    Emulator emu;
    emu.register_power("upow", block);
    const auto got = emu.emulate(call_circuit(2, "upow", {static_cast<std::int64_t>(k)}, {{0, 1}}), 2).state;
    for (Eigen::Index i = 0; i < 4; ++i) EXPECT_LT(std::abs(got.amplitude(std::uint64_t(i)) - oracle(i, 2)), 1e-8);
}

TEST(Emulator, TerminalMeasurementDistribution) {
    Circuit c(2);
    c.push_back(Command::single(GateKind::H, 0));
    c.push_back(Command::cnot(0, 1));
    c.push_back(Command::measure({0, 1}));
    Emulator emu;
    const auto r = emu.emulate(c);
    ASSERT_TRUE(r.distribution);
    EXPECT_NEAR(r.distribution->probability(0), 0.5, 1e-12);
    EXPECT_NEAR(r.distribution->probability(3), 0.5, 1e-12);
    c.push_back(Command::single(GateKind::H, 0));
    EXPECT_THROW((void)emu.emulate(c), Error);
}

TEST(Resources, InverseQftThreeCounts) {
    const Circuit c = inverse(gate_level_qft(3));
    const auto r = count_resources(c);
    EXPECT_EQ(r.counts, (std::map<std::string, std::uint64_t>{{"cr", 3}, {"h", 3}}));
    EXPECT_EQ(r.width, 3u);
    EXPECT_EQ(r.t_count, 0u);
    EXPECT_DOUBLE_EQ(r.total_cost, 6.0);
    EXPECT_DOUBLE_EQ(r.depth, 5.0);
}

TEST(Resources, EmptyCircuitIsZero) {
    const auto r = count_resources(Circuit(4));
    EXPECT_EQ(r, ResourceReport{});
}

TEST(Resources, LoweredCrMinusHalfPiHasTCountThree) {
    Circuit c(2);
    c.push_back(Command::cr(-pi / 2, 0, 1));
    const auto lowered = llc::lower(c);
    const auto r = count_resources(lowered.circuit);
    EXPECT_EQ(r.t_count, 3u);
    // Independent recount straight from the command list.
    std::uint64_t t = 0;
    for (const auto& cmd : lowered.circuit.commands) {
        t += cmd.gate.kind == GateKind::T || cmd.gate.kind == GateKind::Tdg;
    }
    EXPECT_EQ(t, 3u);
}

TEST(Resources, NamesWidthSwapsAndCost) {
    Circuit c(4);
    Command ccx = Command::cnot(0, 2);
    ccx.add_controls({1});
    c.push_back(ccx);
    Command crz = Command::rz(0.5, 3);
    crz.controls = {0};
    c.push_back(crz);
    c.push_back(Command::swap(0, 1));
    c.push_back(Command::call("qft", {}, {{0, 1, 2}}));
    c.push_back(Command::single(GateKind::T, 2));
    c.push_back(Command::single(GateKind::Tdg, 2));
    const auto r = count_resources(c, CostModel::t_dominated(10.0));
    EXPECT_EQ(r.count("ccnot"), 1u);
    EXPECT_EQ(r.count("crz"), 1u);
    EXPECT_EQ(r.count("cnot"), 3u);
    EXPECT_EQ(r.count("swap"), 0u);
    EXPECT_EQ(r.count("qft"), 1u);
    EXPECT_EQ(r.t_count, 2u);
    EXPECT_DOUBLE_EQ(r.total_cost, 6.0 + 2 * 10.0);
    const auto kept = count_resources(c, {}, CountOptions{false, nullptr});
    EXPECT_EQ(kept.count("swap"), 1u);

    Circuit alloc(3);
    alloc.push_back(Command{Gate::simple(GateKind::Allocate), {0, 1}, {}, {}, {}});
    alloc.push_back(Command::cnot(0, 1));
    alloc.push_back(Command{Gate::simple(GateKind::Deallocate), {1}, {}, {}, {}});
    alloc.push_back(Command{Gate::simple(GateKind::Allocate), {2}, {}, {}, {}});
    alloc.push_back(Command::cnot(0, 2));
    EXPECT_EQ(count_resources(alloc).width, 2u);
}

TEST(Resources, JsonRoundTrips) {
    Circuit c(2);
    c.push_back(Command::single(GateKind::T, 0));
    c.push_back(Command::cnot(0, 1));
    const auto r = count_resources(c);
    EXPECT_EQ(report_from_json(to_json(r)), r);
    const auto j = to_json(r);
    for (const char* key : {"counts", "t_count", "width", "depth", "total_cost", "qec"}) EXPECT_TRUE(j.contains(key));

    const CostModel m = CostModel::from_json(nlohmann::json::parse(R"({"default": 2, "weights": {"t": 9}})"));
    EXPECT_DOUBLE_EQ(m.weight("t"), 9.0);
    EXPECT_DOUBLE_EQ(m.weight("h"), 2.0);
    EXPECT_EQ(CostModel::from_json(m.to_json()), m);
    EXPECT_THROW((void)CostModel::from_json(nlohmann::json::parse(R"({"weights": {"t": -1}})")), Error);
}

TEST(Backends, SeededRunsAreDeterministic) {
    Circuit c(3);
    for (Qubit q = 0; q < 3; ++q) c.push_back(Command::single(GateKind::H, q));
    c.push_back(Command::measure({0}));
    c.push_back(Command::single(GateKind::H, 1));
    c.push_back(Command::measure({0, 2}));
    SimulatorBackend sim;
    RunOptions opts;
    opts.seed = 42;
    const auto a = sim.run(c, opts);
    const auto b = sim.run(c, opts);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    ASSERT_EQ(a.measurements.size(), 2u);
    EXPECT_EQ(a.measurements[1].outcome & 1u, a.measurements[0].outcome);
    EXPECT_EQ(to_json(a)["seed"], 42);
}

TEST(Backends, CounterAndHardwareStub) {
    Circuit c(2, Level::LLQIR);
    c.push_back(Command::single(GateKind::H, 0));
    c.push_back(Command::cnot(0, 1));
    auto counter = make_backend("counter");
    const auto r = counter->run(c, {});
    ASSERT_TRUE(r.report);
    EXPECT_EQ(r.report->total_gates(), 2u);

    auto hw = make_backend("hardware");
    const auto h = hw->run(c, {});
    EXPECT_FALSE(h.ok);
    ASSERT_EQ(h.messages.size(), 1u);
    EXPECT_EQ(h.messages[0], "no device attached");
    EXPECT_EQ(parse(h.payload).commands, c.commands);
    EXPECT_THROW((void)hw->run(Circuit(2), {}), Error);
    EXPECT_THROW((void)make_backend("quantum-annealer"), Error);
}

}  // namespace
}  // namespace qcomp
