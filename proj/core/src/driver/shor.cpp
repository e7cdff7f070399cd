#include "qcomp/driver/shor.hpp"

#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcomp/backends/backend.hpp"
#include "qcomp/builder/program_builder.hpp"
#include "qcomp/error.hpp"
#include "qcomp/hlc/passes.hpp"
#include "qcomp/qlib/qlib.hpp"

namespace qcomp::driver {

std::uint64_t continued_fraction_denominator(std::uint64_t m, std::uint64_t q, std::uint64_t bound) {
    if (q == 0 || m >= q) throw Error(ErrorCode::InvalidArgument, "continued fraction needs 0 <= m < q");
    if (m == 0) return 1;
    // Convergents h/k of m/q with k_{-1} = 0, k_0 = 1.
    std::uint64_t num = m, den = q;
    std::uint64_t k_prev = 0, k = 1;
    std::uint64_t best = 1;
    // m/q < 1, so the first partial quotient is 0 and k stays 1.
    std::uint64_t a = num / den;
    std::tie(num, den) = std::make_pair(den, num - a * den);
    while (den != 0) {
        a = num / den;
        const std::uint64_t k_next = a * k + k_prev;
        if (k_next > bound) break;
        k_prev = k;
        k = k_next;
        best = k;
        std::tie(num, den) = std::make_pair(den, num - a * den);
    }
    return best;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t N) {
    if (std::gcd(a, N) != 1) throw Error(ErrorCode::InvalidArgument, "order undefined when gcd(a, N) != 1");
    std::uint64_t x = a % N;
    for (std::uint64_t r = 1; r <= N; ++r) {
        if (x == 1 % N) return r;
        x = x * a % N;
    }
    throw Error(ErrorCode::InvalidArgument, "order search exceeded N");
}

Circuit shor_circuit(std::uint64_t a, std::uint64_t N) {
    if (N < 3 || N >= (std::uint64_t{1} << 20)) throw Error(ErrorCode::InvalidArgument, "N out of range");
    if (std::gcd(a, N) != 1) throw Error(ErrorCode::InvalidArgument, "base must be coprime to N");
    const std::size_t n = qlib::bits_for(N);
    builder::ProgramBuilder b;
    const auto x = b.allocate_qureg(n, 1);
    const auto anc = b.allocate_qureg(2 * n);
    qlib::emit_qpe(b, anc.qubits, [&](builder::ProgramBuilder& bb, Qubit ctrl, std::uint64_t power) {
        // a(k) = a^{2^k} mod N, precomputed classically.
        const std::uint64_t ak = qlib::pow_mod(a, power, N);
        bb.call("cua", {static_cast<std::int64_t>(ak), static_cast<std::int64_t>(N)}, {{ctrl}, x.qubits});
    });
    b.measure(anc.qubits);
    return b.finish();
}

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Base p and exponent k >= 2 when N = p^k for a prime p.
std::optional<std::uint64_t> prime_power_base(std::uint64_t N) {
    for (std::uint64_t p = 2; p * p <= N; ++p) {
        if (N % p != 0) continue;
        std::uint64_t v = N;
        while (v % p == 0) v /= p;
        return v == 1 && is_prime(p) ? std::optional(p) : std::nullopt;
    }
    return std::nullopt;
}

std::uint64_t measure_order_register(const Circuit& c, const ShorOptions& options, std::uint64_t seed) {
    backends::RunOptions run;
    run.seed = seed;
    backends::RunResult r;
    if (options.backend == "emu") {
        backends::EmulatorBackend emu;
        qlib::register_emulation(emu.emulator());
        r = emu.run(c, run);
    } else if (options.backend == "sim") {
        backends::SimulatorBackend sim;
        r = sim.run(hlc::compile_high_level(c, qlib::standard_registry()), run);
    } else {
        throw Error(ErrorCode::InvalidArgument, "Shor runs on the emu or sim backend, not '" + options.backend + "'");
    }
    if (r.measurements.empty()) throw Error(ErrorCode::Backend, "order-finding circuit produced no measurement");
    return r.measurements.back().outcome;
}

}  // namespace

ShorResult shor_factor(std::uint64_t N, const ShorOptions& options) {
    ShorResult res;
    res.N = N;
    res.seed = options.seed;
    res.backend = options.backend;
    auto found = [&](std::uint64_t f, std::string why) {
        const std::uint64_t g = N / f;
        res.factors = std::make_pair(std::min(f, g), std::max(f, g));
        res.success = true;
        res.reason = std::move(why);
        return res;
    };
    if (N < 4) {
        res.reason = "N must be composite and at least 4";
        return res;
    }
    if (N % 2 == 0) return found(2, "classical: N is even");
    if (is_prime(N)) {
        res.reason = "classical: N is prime";
        return res;
    }
    if (auto p = prime_power_base(N)) return found(*p, "classical: N is a prime power");

    const std::size_t n = qlib::bits_for(N);
    const std::uint64_t q = std::uint64_t{1} << (2 * n);
    for (unsigned t = 0; t < options.max_trials; ++t) {
        ShorTrial trial;
        trial.seed = options.seed + t;
        backends::Rng rng(trial.seed);
        trial.a = 2 + rng.below(N - 3);
        const std::uint64_t g = std::gcd(trial.a, N);
        if (g != 1) {
            trial.note = "gcd(a, N) = " + std::to_string(g);
            res.trials.push_back(trial);
            return found(g, "classical: shared factor with the random base");
        }
        const std::uint64_t m = measure_order_register(shor_circuit(trial.a, N), options, trial.seed);
        trial.m = m;
        std::uint64_t r = continued_fraction_denominator(m, q, N);
        // m/q near s/r with gcd(s, r) > 1 yields a divisor of the order; its
        // multiples up to log2(N) times are tried.
        for (std::uint64_t k = 2; r > 1 && qlib::pow_mod(trial.a, r, N) != 1 && k <= n; ++k) {
            if (qlib::pow_mod(trial.a, k * r, N) == 1) r *= k;
        }
        if (qlib::pow_mod(trial.a, r, N) != 1) {
            trial.r = r;
            trial.note = m == 0 ? "degenerate measurement" : "a^r != 1 mod N";
            res.trials.push_back(trial);
            continue;
        }
        // Smallest divisor d of r with a^d = 1 is the order itself.
        for (std::uint64_t d = 1; d <= r; ++d) {
            if (r % d == 0 && qlib::pow_mod(trial.a, d, N) == 1) {
                r = d;
                break;
            }
        }
        trial.r = r;
        if (r % 2 != 0) {
            trial.note = "odd order";
            res.trials.push_back(trial);
            continue;
        }
        const std::uint64_t half = qlib::pow_mod(trial.a, r / 2, N);
        if (half == N - 1) {
            trial.note = "a^(r/2) = -1 mod N";
            res.trials.push_back(trial);
            continue;
        }
        const std::uint64_t f = std::gcd(half + 1, N) != 1 && std::gcd(half + 1, N) != N ? std::gcd(half + 1, N)
                                                                                          : std::gcd(half + N - 1, N);
        if (f == 1 || f == N) {
            trial.note = "trivial factor";
            res.trials.push_back(trial);
            continue;
        }
        trial.note = "order found";
        res.trials.push_back(trial);
        return found(f, "order finding");
    }
    res.reason = "no factor after " + std::to_string(options.max_trials) + " trials";
    return res;
}

std::string ShorResult::transcript() const {
    std::ostringstream out;
    out << "shor N=" << N << " seed=" << seed << " backend=" << backend << '\n';
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const ShorTrial& t = trials[i];
        out << "trial " << i << " seed=" << t.seed << " a=" << t.a;
        if (t.m) out << " m=" << *t.m;
        if (t.r) out << " r=" << *t.r;
        out << " : " << t.note << '\n';
    }
    if (factors) {
        out << "factors " << factors->first << ' ' << factors->second << " (" << reason << ")\n";
    } else {
        out << "failed: " << reason << '\n';
    }
    return out.str();
}

nlohmann::json to_json(const ShorResult& r) {
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& t : r.trials) {
        nlohmann::json j = {{"seed", t.seed}, {"a", t.a}, {"note", t.note}};
        if (t.m) j["m"] = *t.m;
        if (t.r) j["r"] = *t.r;
        trials.push_back(j);
    }
    nlohmann::json j = {{"N", r.N},           {"seed", r.seed},     {"backend", r.backend},
                        {"success", r.success}, {"reason", r.reason}, {"trials", trials}};
    if (r.factors) j["factors"] = {r.factors->first, r.factors->second};
    return j;
}

}  // namespace qcomp::driver
