#include "qcomp/backends/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "qcomp/error.hpp"

namespace qcomp::backends {

namespace {

constexpr double kNeverSample = 1e-15;

}  // namespace

double Distribution::total() const {
    double sum = 0.0;
    for (const auto& [_, p] : probabilities) sum += p;
    return sum;
}

double Distribution::probability(std::uint64_t outcome) const {
    const auto it = probabilities.find(outcome);
    return it == probabilities.end() ? 0.0 : it->second;
}

std::uint64_t Distribution::mode() const {
    std::uint64_t best = 0;
    double best_p = -1.0;
    for (const auto& [outcome, p] : probabilities) {
        if (p > best_p) {
            best = outcome;
            best_p = p;
        }
    }
    return best;
}

std::uint64_t Distribution::sample(Rng& rng) const {
    const double u = rng.uniform() * total();
    double acc = 0.0;
    std::uint64_t last = 0;
    for (const auto& [outcome, p] : probabilities) {
        if (p < kNeverSample) continue;
        acc += p;
        last = outcome;
        if (u < acc) return outcome;
    }
    return last;
}

Distribution marginal(const Statevector& sv, std::span<const Qubit> qubits, double cutoff) {
    Distribution d;
    d.qubits.assign(qubits.begin(), qubits.end());
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    const auto amps = sv.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        std::uint64_t outcome = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            if ((i >> qubits[k]) & 1u) outcome |= std::uint64_t{1} << k;
        }
        probs[outcome] += p;
    }
    for (std::uint64_t o = 0; o < probs.size(); ++o) {
        if (probs[o] > cutoff) d.probabilities.emplace(o, probs[o]);
    }
    return d;
}

double total_variation(const Distribution& a, const Distribution& b) {
    double sum = 0.0;
    auto ia = a.probabilities.begin();
    auto ib = b.probabilities.begin();
    while (ia != a.probabilities.end() || ib != b.probabilities.end()) {
        if (ib == b.probabilities.end() || (ia != a.probabilities.end() && ia->first < ib->first)) {
            sum += ia->second;
            ++ia;
        } else if (ia == a.probabilities.end() || ib->first < ia->first) {
            sum += ib->second;
            ++ib;
        } else {
            sum += std::abs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return 0.5 * sum;
}

MeasureResult measure(Statevector sv, std::span<const Qubit> qubits, Rng& rng) {
    const Distribution d = marginal(sv, qubits);
    const std::uint64_t outcome = d.sample(rng);
    sv.project(qubits, outcome, d.probability(outcome));
    return {outcome, std::move(sv)};
}

void Simulator::check_capacity(std::size_t n) const {
    if (n > options_.max_qubits) {
        throw Error(ErrorCode::Capacity, "circuit needs " + std::to_string(n) +
                                             " qubits; simulator cap is " +
                                             std::to_string(options_.max_qubits));
    }
}

Statevector Simulator::simulate(const Circuit& c, std::uint64_t basis_index) {
    check_capacity(c.num_qubits);
    return simulate(c, Statevector(c.num_qubits, basis_index));
}

Statevector Simulator::simulate(const Circuit& c, Statevector init) {
    check_capacity(c.num_qubits);
    if (init.num_qubits() != c.num_qubits) {
        throw Error(ErrorCode::InvalidArgument, "initial state width does not match circuit");
    }
    warnings_.clear();
    for (const Command& cmd : c.commands) apply(init, cmd);
    return init;
}

void Simulator::apply(Statevector& sv, const Command& cmd) {
    if (!cmd.pending.empty()) {
        throw Error(ErrorCode::Backend,
                    "command '" + std::string(gate_name(cmd.gate.kind)) +
                        "' carries unresolved pending controls; run the high-level compiler first");
    }
    const GateKind kind = cmd.gate.kind;
    switch (kind) {
        case GateKind::Allocate:
            return;
        case GateKind::Deallocate:
            for (Qubit q : cmd.targets) {
                const double p1 = sv.probability_one(q);
                if (p1 > 1e-10) {
                    warnings_.push_back("deallocating qubit " + std::to_string(q) +
                                        " with |1> probability " + std::to_string(p1));
                }
            }
            return;
        case GateKind::Measure:
            throw Error(ErrorCode::Backend, "simulate() is measurement-free; use measure()");
        case GateKind::LibCall:
            throw Error(ErrorCode::Backend, "unresolved library call '" + cmd.gate.lib->name +
                                                "' cannot be simulated at gate level");
        case GateKind::Swap:
            sv.apply_swap(cmd.targets[0], cmd.targets[1], cmd.controls);
            return;
        default:
            break;
    }
    const Matrix m = base_matrix(cmd.gate);
    const Matrix2 u = m;
    if (u(0, 1) == Complex{0.0, 0.0} && u(1, 0) == Complex{0.0, 0.0}) {
        sv.apply_diagonal(u(0, 0), u(1, 1), cmd.targets[0], cmd.controls);
    } else {
        sv.apply_single(u, cmd.targets[0], cmd.controls);
    }
}

Matrix unitary_of(const Circuit& c) {
    Simulator sim;
    const std::uint64_t dim = std::uint64_t{1} << c.num_qubits;
    Matrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t col = 0; col < dim; ++col) {
        const auto amps = sim.simulate(c, col).amplitudes();
        for (std::uint64_t row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amps[row];
        }
    }
    return u;
}

}  // namespace qcomp::backends
