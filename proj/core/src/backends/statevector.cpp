#include "qcomp/backends/statevector.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

#include "qcomp/error.hpp"

namespace qcomp::backends {

namespace {

std::atomic<unsigned> g_threads{1};

constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 14;

/// Runs body(begin, end) over [0, count) split into contiguous chunks. Every
/// chunk writes a disjoint set of amplitudes, so the result does not depend on
/// the number of threads.
template <typename Body>
void parallel_for(std::uint64_t count, Body&& body) {
    const unsigned threads = g_threads.load(std::memory_order_relaxed);
    if (threads <= 1 || count < kParallelThreshold) {
        body(std::uint64_t{0}, count);
        return;
    }
    std::vector<std::jthread> workers;
    const std::uint64_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t begin = chunk * t;
        const std::uint64_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&body, begin, end] { body(begin, end); });
    }
}

/// Inserts a zero bit at position `bit` of `i`.
inline std::uint64_t insert_zero(std::uint64_t i, unsigned bit) {
    const std::uint64_t low = i & ((std::uint64_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

}  // namespace

void set_kernel_threads(unsigned threads) { g_threads.store(std::max(1u, threads)); }

unsigned kernel_threads() { return g_threads.load(); }

Statevector::Statevector(std::size_t num_qubits, std::uint64_t basis_index)
    : num_qubits_(num_qubits),
      amps_(std::size_t{1} << num_qubits, Complex{0.0, 0.0}),
      storage_bit_(num_qubits) {
    if (num_qubits >= 63) throw Error(ErrorCode::Capacity, "too many qubits for a statevector");
    if (basis_index >= dimension()) {
        throw Error(ErrorCode::InvalidArgument, "basis index out of range");
    }
    for (std::size_t q = 0; q < num_qubits; ++q) storage_bit_[q] = static_cast<unsigned>(q);
    amps_[basis_index] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
    if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
        throw Error(ErrorCode::InvalidArgument, "amplitude count must be a power of two");
    }
    Statevector sv(static_cast<std::size_t>(std::countr_zero(amplitudes.size())));
    sv.amps_ = std::move(amplitudes);
    return sv;
}

void Statevector::check_qubit(Qubit q) const {
    if (q >= num_qubits_) {
        throw Error(ErrorCode::InvalidArgument, "qubit " + std::to_string(q) + " out of range");
    }
}

std::uint64_t Statevector::storage_index(std::uint64_t logical) const {
    std::uint64_t s = 0;
    for (std::size_t q = 0; q < num_qubits_; ++q) {
        if ((logical >> q) & 1u) s |= std::uint64_t{1} << storage_bit_[q];
    }
    return s;
}

std::uint64_t Statevector::logical_index(std::uint64_t storage) const {
    std::uint64_t l = 0;
    for (std::size_t q = 0; q < num_qubits_; ++q) {
        if ((storage >> storage_bit_[q]) & 1u) l |= std::uint64_t{1} << q;
    }
    return l;
}

Complex Statevector::amplitude(std::uint64_t logical) const { return amps_[storage_index(logical)]; }

std::vector<Complex> Statevector::amplitudes() const {
    std::vector<Complex> out(amps_.size());
    for (std::uint64_t s = 0; s < amps_.size(); ++s) out[logical_index(s)] = amps_[s];
    return out;
}

double Statevector::norm_squared() const {
    double sum = 0.0;
    for (const Complex& a : amps_) sum += std::norm(a);
    return sum;
}

double Statevector::probability_one(Qubit q) const {
    check_qubit(q);
    const std::uint64_t bit = std::uint64_t{1} << storage_bit_[q];
    double p = 0.0;
    for (std::uint64_t s = 0; s < amps_.size(); ++s) {
        if (s & bit) p += std::norm(amps_[s]);
    }
    return p;
}

std::uint64_t Statevector::control_mask(std::span<const Qubit> controls) const {
    std::uint64_t mask = 0;
    for (Qubit c : controls) {
        check_qubit(c);
        mask |= std::uint64_t{1} << storage_bit_[c];
    }
    return mask;
}

void Statevector::apply_single(const Matrix2& u, Qubit target, std::span<const Qubit> controls) {
    check_qubit(target);
    const unsigned bit = storage_bit_[target];
    const std::uint64_t stride = std::uint64_t{1} << bit;
    const std::uint64_t mask = control_mask(controls);
    const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    Complex* amps = amps_.data();
    parallel_for(amps_.size() / 2, [=](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t k = begin; k < end; ++k) {
            const std::uint64_t i0 = insert_zero(k, bit);
            if ((i0 & mask) != mask) continue;
            const std::uint64_t i1 = i0 | stride;
            const Complex a0 = amps[i0];
            const Complex a1 = amps[i1];
            amps[i0] = u00 * a0 + u01 * a1;
            amps[i1] = u10 * a0 + u11 * a1;
        }
    });
}

void Statevector::apply_diagonal(Complex d0, Complex d1, Qubit target,
                                 std::span<const Qubit> controls) {
    check_qubit(target);
    const unsigned bit = storage_bit_[target];
    const std::uint64_t stride = std::uint64_t{1} << bit;
    const std::uint64_t mask = control_mask(controls);
    const bool skip0 = d0 == Complex{1.0, 0.0};
    Complex* amps = amps_.data();
    parallel_for(amps_.size() / 2, [=](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t k = begin; k < end; ++k) {
            const std::uint64_t i0 = insert_zero(k, bit);
            if ((i0 & mask) != mask) continue;
            if (!skip0) amps[i0] *= d0;
            amps[i0 | stride] *= d1;
        }
    });
}

void Statevector::apply_swap(Qubit a, Qubit b, std::span<const Qubit> controls) {
    check_qubit(a);
    check_qubit(b);
    if (a == b) return;
    if (controls.empty()) {
        std::swap(storage_bit_[a], storage_bit_[b]);
        return;
    }
    const std::uint64_t ba = std::uint64_t{1} << storage_bit_[a];
    const std::uint64_t bb = std::uint64_t{1} << storage_bit_[b];
    const std::uint64_t mask = control_mask(controls);
    for (std::uint64_t s = 0; s < amps_.size(); ++s) {
        if ((s & mask) != mask) continue;
        if ((s & ba) && !(s & bb)) std::swap(amps_[s], amps_[(s & ~ba) | bb]);
    }
}

void Statevector::apply_permutation(const std::function<std::uint64_t(std::uint64_t)>& f) {
    std::vector<Complex> out(amps_.size(), Complex{0.0, 0.0});
    std::vector<bool> hit(amps_.size(), false);
    for (std::uint64_t l = 0; l < amps_.size(); ++l) {
        const std::uint64_t image = f(l);
        if (image >= amps_.size() || hit[image]) {
            throw Error(ErrorCode::Backend, "classical action is not a bijection on basis states");
        }
        hit[image] = true;
        out[storage_index(image)] = amps_[storage_index(l)];
    }
    amps_ = std::move(out);
}

void Statevector::apply_phase(const std::function<Complex(std::uint64_t)>& phase) {
    for (std::uint64_t s = 0; s < amps_.size(); ++s) {
        if (amps_[s] != Complex{0.0, 0.0}) amps_[s] *= phase(logical_index(s));
    }
}

void Statevector::assign(std::vector<Complex> amplitudes) {
    if (amplitudes.size() != amps_.size()) {
        throw Error(ErrorCode::InvalidArgument, "amplitude count mismatch");
    }
    amps_ = std::move(amplitudes);
    for (std::size_t q = 0; q < num_qubits_; ++q) storage_bit_[q] = static_cast<unsigned>(q);
}

void Statevector::project(std::span<const Qubit> qubits, std::uint64_t outcome, double probability) {
    std::uint64_t mask = 0;
    std::uint64_t want = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        check_qubit(qubits[i]);
        const std::uint64_t bit = std::uint64_t{1} << storage_bit_[qubits[i]];
        mask |= bit;
        if ((outcome >> i) & 1u) want |= bit;
    }
    const double scale = 1.0 / std::sqrt(probability);
    for (std::uint64_t s = 0; s < amps_.size(); ++s) {
        if ((s & mask) == want) {
            amps_[s] *= scale;
        } else {
            amps_[s] = 0.0;
        }
    }
}

}  // namespace qcomp::backends
