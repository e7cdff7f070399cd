#include "qcomp/backends/emulator.hpp"

#include <cmath>

#include <unsupported/Eigen/FFT>

#include "qcomp/error.hpp"

namespace qcomp::backends {

std::uint64_t reverse_bits(std::uint64_t v, std::size_t n) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < n; ++i) out |= ((v >> i) & 1u) << (n - 1 - i);
    return out;
}

void fourier_transform(std::vector<Complex>& local, bool inverse) {
    const std::size_t dim = local.size();
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    const double root = std::sqrt(static_cast<double>(dim));
    Eigen::FFT<double> fft;
    std::vector<Complex> out;
    if (!inverse) {
        // Eigen's inverse transform carries the e^{+2 pi i xk/N} kernel and a 1/N factor.
        fft.inv(out, local);
        for (std::size_t k = 0; k < dim; ++k) local[reverse_bits(k, n)] = out[k] * root;
    } else {
        std::vector<Complex> in(dim);
        for (std::size_t k = 0; k < dim; ++k) in[k] = local[reverse_bits(k, n)];
        fft.fwd(out, in);
        for (std::size_t x = 0; x < dim; ++x) local[x] = out[x] / root;
    }
}

Matrix matrix_power(const Matrix& u, std::uint64_t k) {
    Matrix result = Matrix::Identity(u.rows(), u.cols());
    Matrix base = u;
    while (k > 0) {
        if (k & 1u) result = base * result;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

Emulator::Emulator(EmulatorOptions options)
    : options_(options), sim_(SimulatorOptions{options.max_qubits}) {
    register_block("qft", [](const LibCall&, std::vector<Complex>& v) { fourier_transform(v, false); });
    register_block("iqft", [](const LibCall&, std::vector<Complex>& v) { fourier_transform(v, true); });
}

void Emulator::register_permutation(const std::string& name, PermutationAction f) {
    permutations_[name] = std::move(f);
}

void Emulator::register_diagonal(const std::string& name, DiagonalAction f) { diagonals_[name] = std::move(f); }

void Emulator::register_block(const std::string& name, BlockAction f) { blocks_[name] = std::move(f); }

void Emulator::register_power(const std::string& name, Circuit block) {
    if (block.num_qubits > options_.power_threshold) {
        throw Error(ErrorCode::Capacity, "power block '" + name + "' has " + std::to_string(block.num_qubits) +
                                             " qubits; threshold is " +
                                             std::to_string(options_.power_threshold));
    }
    power_blocks_[name] = std::move(block);
    std::erase_if(power_cache_, [&](const auto& kv) { return kv.first.first == name; });
}

bool Emulator::handles(const std::string& name) const {
    return blocks_.contains(name) || permutations_.contains(name) || diagonals_.contains(name) ||
           power_blocks_.contains(name);
}

EmulationResult Emulator::emulate(const Circuit& c, std::uint64_t basis_index) {
    if (c.num_qubits > options_.max_qubits) {
        throw Error(ErrorCode::Capacity, "circuit needs " + std::to_string(c.num_qubits) +
                                             " qubits; emulator cap is " + std::to_string(options_.max_qubits));
    }
    return emulate(c, Statevector(c.num_qubits, basis_index));
}

EmulationResult Emulator::emulate(const Circuit& c, Statevector init) {
    if (c.num_qubits > options_.max_qubits) {
        throw Error(ErrorCode::Capacity, "circuit needs " + std::to_string(c.num_qubits) +
                                             " qubits; emulator cap is " + std::to_string(options_.max_qubits));
    }
    if (init.num_qubits() != c.num_qubits) {
        throw Error(ErrorCode::InvalidArgument, "initial state width does not match circuit");
    }
    EmulationResult result;
    std::vector<Qubit> measured;
    bool measuring = false;
    for (const Command& cmd : c.commands) {
        if (cmd.gate.kind == GateKind::Measure) {
            measuring = true;
            measured.insert(measured.end(), cmd.targets.begin(), cmd.targets.end());
            continue;
        }
        if (measuring && cmd.gate.kind != GateKind::Deallocate) {
            throw Error(ErrorCode::Backend, "the emulator supports terminal measurement only; '" +
                                                std::string(gate_name(cmd.gate.kind)) + "' follows a measure");
        }
        if (!measuring) apply(init, cmd);
    }
    if (measuring) result.distribution = marginal(init, measured);
    result.state = std::move(init);
    return result;
}

void Emulator::apply(Statevector& sv, const Command& cmd) {
    if (cmd.gate.kind == GateKind::LibCall) {
        apply_call(sv, cmd);
    } else if (cmd.gate.kind == GateKind::Deallocate) {
        return;
    } else {
        sim_.apply(sv, cmd);
    }
}

const Matrix& Emulator::power_of(const std::string& name, std::uint64_t k) {
    const auto key = std::make_pair(name, k);
    if (auto it = power_cache_.find(key); it != power_cache_.end()) return it->second;
    const Matrix u = unitary_of(power_blocks_.at(name));
    return power_cache_.emplace(key, matrix_power(u, k)).first->second;
}

void Emulator::apply_call(Statevector& sv, const Command& cmd) {
    const LibCall& call = *cmd.gate.lib;
    const std::size_t k = cmd.targets.size();
    const std::uint64_t local_dim = std::uint64_t{1} << k;

    std::function<void(std::vector<Complex>&)> transform;
    if (auto it = blocks_.find(call.name); it != blocks_.end()) {
        transform = [&f = it->second, &call](std::vector<Complex>& v) { f(call, v); };
    } else if (auto pit = permutations_.find(call.name); pit != permutations_.end()) {
        std::vector<std::uint64_t> image(local_dim);
        std::vector<bool> hit(local_dim, false);
        for (std::uint64_t l = 0; l < local_dim; ++l) {
            const std::uint64_t to = pit->second(call, l);
            if (to >= local_dim || hit[to]) {
                throw Error(ErrorCode::Backend, "classical action of '" + call.name + "' is not a bijection on " +
                                                    std::to_string(k) + " qubits");
            }
            hit[to] = true;
            image[l] = to;
        }
        transform = [image = std::move(image)](std::vector<Complex>& v) {
            std::vector<Complex> out(v.size());
            for (std::size_t l = 0; l < v.size(); ++l) out[image[l]] = v[l];
            v = std::move(out);
        };
    } else if (auto dit = diagonals_.find(call.name); dit != diagonals_.end()) {
        std::vector<Complex> diag(local_dim);
        for (std::uint64_t l = 0; l < local_dim; ++l) diag[l] = dit->second(call, l);
        transform = [diag = std::move(diag)](std::vector<Complex>& v) {
            for (std::size_t l = 0; l < v.size(); ++l) v[l] *= diag[l];
        };
    } else if (power_blocks_.contains(call.name)) {
        if (power_blocks_.at(call.name).num_qubits != k) {
            throw Error(ErrorCode::Backend, "power call '" + call.name + "' has the wrong number of qubits");
        }
        const std::uint64_t exponent = call.params.empty() ? 1 : static_cast<std::uint64_t>(call.params[0]);
        const Matrix& u = power_of(call.name, exponent);
        transform = [&u](std::vector<Complex>& v) {
            const Eigen::Map<const Eigen::VectorXcd> in(v.data(), static_cast<Eigen::Index>(v.size()));
            const Eigen::VectorXcd out = u * in;
            for (std::size_t l = 0; l < v.size(); ++l) v[l] = out(static_cast<Eigen::Index>(l));
        };
    } else {
        throw Error(ErrorCode::Backend, "no emulator action registered for library call '" + call.name + "'");
    }

    std::vector<std::uint64_t> offset(local_dim, 0);
    std::uint64_t tmask = 0;
    for (std::size_t i = 0; i < k; ++i) tmask |= std::uint64_t{1} << cmd.targets[i];
    for (std::uint64_t l = 0; l < local_dim; ++l) {
        for (std::size_t i = 0; i < k; ++i) {
            if ((l >> i) & 1u) offset[l] |= std::uint64_t{1} << cmd.targets[i];
        }
    }
    std::uint64_t cmask = 0;
    for (Qubit q : cmd.controls) cmask |= std::uint64_t{1} << q;
    for (Qubit q : cmd.pending) cmask |= std::uint64_t{1} << q;

    std::vector<Complex> amps = sv.amplitudes();
    std::vector<Complex> local(local_dim);
    for (std::uint64_t base = 0; base < amps.size(); ++base) {
        if ((base & tmask) != 0 || (base & cmask) != cmask) continue;
        for (std::uint64_t l = 0; l < local_dim; ++l) local[l] = amps[base | offset[l]];
        transform(local);
        for (std::uint64_t l = 0; l < local_dim; ++l) amps[base | offset[l]] = local[l];
    }
    sv.assign(std::move(amps));
}

}  // namespace qcomp::backends
