#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qcomp/ir/circuit.hpp"

namespace qcomp::driver {

/// Denominator of the last convergent of m/q whose denominator is at most
/// `bound`; 1 for m = 0.
[[nodiscard]] std::uint64_t continued_fraction_denominator(std::uint64_t m, std::uint64_t q, std::uint64_t bound);

/// Multiplicative order of a modulo N by brute force (a classical oracle).
[[nodiscard]] std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t N);

/// Order finding for a^x mod N: x = 1 on n = bits_for(N) qubits (0..n-1),
/// 2n phase-estimation ancillas above it, cua calls with a^{2^k} mod N, iqft
/// and a final measurement of the ancillas.
[[nodiscard]] Circuit shor_circuit(std::uint64_t a, std::uint64_t N);

struct ShorOptions {
    std::uint64_t seed = 0;
    /// "emu" (library calls emulated) or "sim" (inlined gate-level simulation).
    std::string backend = "emu";
    unsigned max_trials = 20;
};

struct ShorTrial {
    std::uint64_t seed = 0;
    std::uint64_t a = 0;
    std::optional<std::uint64_t> m;
    std::optional<std::uint64_t> r;
    std::string note;
};

struct ShorResult {
    std::uint64_t N = 0;
    bool success = false;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;  // ascending
    std::string reason;
    std::vector<ShorTrial> trials;
    std::uint64_t seed = 0;
    std::string backend;

    /// Human-readable transcript ending in the factors or the failure reason.
    [[nodiscard]] std::string transcript() const;
};

/// Classical pre-checks (even, prime, prime power) answer directly. Otherwise
/// trial t draws a from a generator seeded with seed + t, tries gcd(a, N),
/// then runs order finding, decodes r by continued fractions, reduces it to
/// the least exponent with a^r = 1 and applies the even-r / a^{r/2} != -1
/// checks. Fails after max_trials.
[[nodiscard]] ShorResult shor_factor(std::uint64_t N, const ShorOptions& options = {});

[[nodiscard]] nlohmann::json to_json(const ShorResult& r);

}  // namespace qcomp::driver
