#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "qcomp/backends/simulator.hpp"
#include "qcomp/builder/program_builder.hpp"
#include "qcomp/error.hpp"
#include "qcomp/hlc/passes.hpp"
#include "qcomp/ir/matrix.hpp"
#include "support/oracle.hpp"

namespace qcomp {
namespace {

using builder::ProgramBuilder;
using std::numbers::pi;

std::size_t controlled_count(const Circuit& c) {
    std::size_t n = 0;
    for (const auto& cmd : c.commands) n += cmd.controls.empty() ? 0 : 1;
    return n;
}

// toy(k) on one register: H on every qubit, then T^k on the first.
hlc::LibraryRegistry toy_registry() {
    hlc::LibraryRegistry reg;
    reg.add("toy", {[](ProgramBuilder& b, const LibCall& call, const auto& regs) {
                        for (Qubit q : regs[0]) b.h(q);
                        for (std::int64_t i = 0; i < call.params.at(0); ++i) b.gate(GateKind::T, regs[0][0]);
                    },
                    "", false});
    reg.add("scratch", {[](ProgramBuilder& b, const LibCall&, const auto& regs) {
                            auto anc = b.allocate_ancilla(1);
                            b.with_compute([&](ProgramBuilder& b) { b.cnot(regs[0][0], anc[0]); },
                                           [&](ProgramBuilder& b) { b.cnot(anc[0], regs[0][1]); });
                            b.deallocate(anc);
                        },
                        "", false});
    reg.add("nested", {[](ProgramBuilder& b, const LibCall&, const auto& regs) {
                           b.call("toy", {1}, {regs[0]});
                           b.call("toy", {2}, {regs[0]});
                       },
                       "", false});
    reg.add("loop", {[](ProgramBuilder& b, const LibCall&, const auto& regs) { b.call("loop", {}, {regs[0]}); },
                     "", false});
    reg.add("pa", {[](ProgramBuilder& b, const LibCall&, const auto& regs) { b.phase(0.5, regs[0][0]); },
                   "cpa", false});
    reg.add("cpa", {[](ProgramBuilder& b, const LibCall&, const auto& regs) { b.cr(0.5, regs[0][0], regs[1][0]); },
                    "", false});
    reg.add("device", {{}, "", true});
    return reg;
}

TEST(ResolveControls, OnlyActionIsControlled) {
    ProgramBuilder b(3);
    b.with_control(0, [](ProgramBuilder& b) {
        b.with_compute([](ProgramBuilder& b) {
            b.h(1);
            b.cnot(1, 2);
        },
                       [](ProgramBuilder& b) { b.rz(0.4, 2); });
    });
    const Circuit c = hlc::resolve_controls(b.finish());
    ASSERT_EQ(c.size(), 5u);
    EXPECT_EQ(controlled_count(c), 3u);  // the compute CNOT and its inverse keep their own control
    EXPECT_EQ(c.commands[2].controls, std::vector<Qubit>({0}));
    EXPECT_TRUE(c.commands[0].controls.empty());
    EXPECT_EQ(c.commands[1].controls, std::vector<Qubit>({1}));
    for (const auto& cmd : c.commands) EXPECT_TRUE(cmd.pending.empty());
}

TEST(ResolveControls, SemanticsOnThreeQubits) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const Circuit u = testing::random_circuit(rng, 2, 6);
        const Circuit v = testing::random_circuit(rng, 2, 4);
        auto shift = [](Circuit c) {
            c.num_qubits = 3;
            for (auto& cmd : c.commands) {
                for (auto& q : cmd.targets) ++q;
                for (auto& q : cmd.controls) ++q;
            }
            return c;
        };
        const Circuit us = shift(u);
        const Circuit vs = shift(v);
        ProgramBuilder b(3);
        b.with_control(0, [&](ProgramBuilder& b) {
            b.with_compute([&](ProgramBuilder& b) { b.append(us.commands); },
                           [&](ProgramBuilder& b) { b.append(vs.commands); });
        });
        const Matrix got = backends::unitary_of(hlc::resolve_controls(b.finish()));
        const Matrix mu = testing::reference_unitary(us);
        const Matrix mv = testing::reference_unitary(vs);
        const Matrix on = mu.adjoint() * mv * mu;
        Matrix expected = Matrix::Zero(8, 8);
        for (int r = 0; r < 8; ++r) {
            for (int col = 0; col < 8; ++col) {
                if ((r & 1) != (col & 1)) continue;
                expected(r, col) = (col & 1) ? on(r, col) : Complex(r == col ? 1.0 : 0.0);
            }
        }
        EXPECT_LT(phase_invariant_distance(got, expected), 1e-10);
    }
}

TEST(ResolveControls, NoPendingIsUnchanged) {
    std::mt19937_64 rng(3);
    const Circuit c = testing::random_circuit(rng, 4, 30);
    EXPECT_EQ(hlc::resolve_controls(c), c);
}

TEST(ResolveControls, PendingMeasureFails) {
    Circuit c(2);
    Command m = Command::measure({1});
    m.add_pending({0});
    c.push_back(m);
    EXPECT_THROW((void)hlc::resolve_controls(c), Error);
}

TEST(ResolveControls, SwapsInControlledVariant) {
    const auto reg = toy_registry();
    ProgramBuilder b(2);
    b.with_control(0, [](ProgramBuilder& b) { b.call("pa", {}, {{1}}); });
    const Circuit c = hlc::resolve_controls(b.finish(), reg);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c.commands[0].gate.lib->name, "cpa");
    EXPECT_EQ(c.commands[0].targets, std::vector<Qubit>({0, 1}));
    EXPECT_TRUE(c.commands[0].controls.empty());
    const Circuit inlined = hlc::inline_libraries(c, reg);
    EXPECT_EQ(inlined.commands, std::vector<Command>({Command::cr(0.5, 0, 1)}));
}

TEST(InlineLibraries, ExpandsNestedCallsInOrder) {
    const auto reg = toy_registry();
    Circuit c(2);
    c.push_back(Command::call("nested", {}, {{0, 1}}));
    const Circuit out = hlc::inline_libraries(c, reg);
    std::vector<GateKind> kinds;
    for (const auto& cmd : out.commands) kinds.push_back(cmd.gate.kind);
    using enum GateKind;
    EXPECT_EQ(kinds, std::vector<GateKind>({H, H, T, H, H, T, T}));
}

TEST(InlineLibraries, AdjointNameUsesInverseBody) {
    const auto reg = toy_registry();
    Circuit c(1);
    c.push_back(Command::call("toy_dg", {1}, {{0}}));
    const Circuit out = hlc::inline_libraries(c, reg);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out.commands[0].gate.kind, GateKind::Tdg);
    EXPECT_EQ(out.commands[1].gate.kind, GateKind::H);
}

TEST(InlineLibraries, ControlsReachOnlyTheAction) {
    const auto reg = toy_registry();
    Circuit c(3);
    Command call = Command::call("scratch", {}, {{1, 2}});
    call.add_controls({0});
    c.push_back(call);
    const Circuit out = hlc::inline_libraries(c, reg);
    require_valid(out);
    EXPECT_EQ(out.num_qubits, 4u);
    std::size_t doubly = 0;
    for (const auto& cmd : out.commands) doubly += cmd.controls.size() == 2 ? 1 : 0;
    EXPECT_EQ(doubly, 1u);
}

TEST(InlineLibraries, AncillasAreReused) {
    const auto reg = toy_registry();
    Circuit c(2);
    for (int i = 0; i < 5; ++i) c.push_back(Command::call("scratch", {}, {{0, 1}}));
    const Circuit out = hlc::inline_libraries(c, reg);
    EXPECT_EQ(out.num_qubits, 3u);
    require_valid(out);
}

TEST(InlineLibraries, UnknownNameIsReported) {
    Circuit c(1);
    c.push_back(Command::call("mystery", {}, {{0}}));
    try {
        (void)hlc::inline_libraries(c, toy_registry());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnresolvedCall);
        EXPECT_NE(std::string(e.what()).find("mystery"), std::string::npos);
    }
}

TEST(InlineLibraries, CycleHitsDepthLimit) {
    Circuit c(1);
    c.push_back(Command::call("loop", {}, {{0}}));
    try {
        (void)hlc::inline_libraries(c, toy_registry());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Recursion);
    }
}

TEST(InlineLibraries, OpaqueAndPlainCircuitsUnchanged) {
    std::mt19937_64 rng(8);
    Circuit c = testing::random_circuit(rng, 3, 20);
    EXPECT_EQ(hlc::inline_libraries(c, toy_registry()), c);
    c.push_back(Command::call("device", {}, {{0, 1}}));
    EXPECT_EQ(hlc::inline_libraries(c, toy_registry()), c);
}

TEST(FoldRotations, MergesRuns) {
    Circuit c(1);
    c.push_back(Command::rz(0.25, 0));
    c.push_back(Command::rz(0.5, 0));
    const Circuit out = hlc::fold_rotations(c);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_NEAR(out.commands[0].gate.angle, 0.75, 1e-15);
}

TEST(FoldRotations, CancelsInverses) {
    Circuit c(1);
    c.push_back(Command::rz(0.7, 0));
    c.push_back(Command::rz(-0.7, 0));
    EXPECT_TRUE(hlc::fold_rotations(c).empty());
}

TEST(FoldRotations, NonRotationIsBarrier) {
    Circuit c(1);
    c.push_back(Command::rz(0.7, 0));
    c.push_back(Command::single(GateKind::H, 0));
    c.push_back(Command::rz(0.2, 0));
    EXPECT_EQ(hlc::fold_rotations(c), c);
}

TEST(FoldRotations, PeriodDependsOnKind) {
    Circuit c(2);
    c.push_back(Command::rz(2 * pi, 0));  // -I, kept
    c.push_back(Command::phase(pi, 1));
    c.push_back(Command::phase(pi, 1));  // identity
    const Circuit out = hlc::fold_rotations(c);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out.commands[0].gate.kind, GateKind::Rz);
}

TEST(FoldRotations, SkipsUnrelatedQubits) {
    Circuit c(2);
    c.push_back(Command::cr(0.3, 0, 1));
    c.push_back(Command::single(GateKind::H, 1));
    c.push_back(Command::cr(0.3, 0, 1));
    c.push_back(Command::rz(0.1, 0));
    c.push_back(Command::single(GateKind::X, 1));
    c.push_back(Command::rz(0.2, 0));
    const Circuit out = hlc::fold_rotations(c);
    EXPECT_EQ(out.size(), 5u);
}

Circuit rotation_heavy(std::mt19937_64& rng, std::size_t n, std::size_t len) {
    Circuit c(n);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (std::size_t i = 0; i < len; ++i) {
        const Qubit q = static_cast<Qubit>(rng() % n);
        const Qubit other = static_cast<Qubit>((q + 1) % n);
        switch (rng() % 6) {
            case 0: c.push_back(Command::rz(angle(rng), q)); break;
            case 1: c.push_back(Command::phase(angle(rng), q)); break;
            case 2: c.push_back(Command::cr(angle(rng), other, q)); break;
            case 3: c.push_back(Command::rz(pi / 4, q)); c.push_back(Command::rz(-pi / 4, q)); break;
            case 4: c.push_back(Command::single(GateKind::H, q)); break;
            default: c.push_back(Command::cnot(other, q)); break;
        }
    }
    return c;
}

TEST(HlcProperty, FoldIsIdempotentAndSound) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const Circuit c = rotation_heavy(rng, 2 + trial % 3, 40);
        const Circuit once = hlc::fold_rotations(c);
        EXPECT_EQ(hlc::fold_rotations(once), once);
        EXPECT_LE(once.size(), c.size());
        EXPECT_LT(phase_invariant_distance(testing::reference_unitary(once), testing::reference_unitary(c)),
                  1e-10);
    }
}

TEST(HlcProperty, PipelinePreservesSemantics) {
    const auto reg = toy_registry();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const Circuit body = testing::random_circuit(rng, 4, 15);
        ProgramBuilder b(5);
        b.call("toy", {static_cast<std::int64_t>(trial % 3)}, {{1, 2}});
        b.with_control(0, [&](ProgramBuilder& b) {
            b.with_compute([&](ProgramBuilder& b) { b.h(4); },
                           [&](ProgramBuilder& b) { b.call("nested", {}, {{1, 3}}); });
        });
        for (auto cmd : body.commands) {
            for (auto& q : cmd.targets) ++q;
            for (auto& q : cmd.controls) ++q;
            b.apply(cmd);
        }
        b.with_control(2, [](ProgramBuilder& b) { b.call("pa", {}, {{4}}); });
        const Circuit program = b.finish();
        const Circuit reference = hlc::inline_libraries(hlc::resolve_controls(program, reg), reg);
        const Circuit compiled = hlc::compile_high_level(program, reg);
        EXPECT_LT(phase_invariant_distance(testing::reference_unitary(compiled),
                                           testing::reference_unitary(reference)),
                  1e-10);
    }
}

}  // namespace
}  // namespace qcomp
