#include "qcomp/qlib/qlib.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <tuple>

#include <nlohmann/json.hpp>

#include "qcomp/error.hpp"
#include "qcomp/llc/lower.hpp"

namespace qcomp::qlib {

namespace {

using builder::ProgramBuilder;
using std::numbers::pi;

std::vector<Command> qft_commands(const std::vector<Qubit>& reg) {
    std::vector<Command> out;
    const std::size_t n = reg.size();
    for (std::size_t j = n; j-- > 0;) {
        out.push_back(Command::single(GateKind::H, reg[j]));
        for (std::size_t i = j; i-- > 0;) {
            out.push_back(Command::cr(pi / static_cast<double>(std::uint64_t{1} << (j - i)), reg[i], reg[j]));
        }
    }
    return out;
}

std::vector<Qubit> iota(std::size_t first, std::size_t n) {
    std::vector<Qubit> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Qubit>(first + i);
    return v;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::string prefixed(std::size_t controls, const std::string& name) { return std::string(controls, 'c') + name; }

std::vector<std::vector<Qubit>> with_control_registers(const std::vector<Qubit>& controls,
                                                       std::initializer_list<std::vector<Qubit>> rest) {
    std::vector<std::vector<Qubit>> regs;
    for (Qubit c : controls) regs.push_back({c});
    regs.insert(regs.end(), rest.begin(), rest.end());
    return regs;
}

/// Leading one-qubit registers of a `c...name` call are its controls.
std::vector<Qubit> leading_controls(const std::vector<std::vector<Qubit>>& regs, std::size_t count) {
    std::vector<Qubit> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(regs.at(i).at(0));
    return out;
}

void require_params(const LibCall& call, std::size_t n) {
    if (call.params.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "library call '" + call.name + "' takes " + std::to_string(n) +
                                                    " parameters, got " + std::to_string(call.params.size()));
    }
}

void require_registers(const LibCall& call, const std::vector<std::vector<Qubit>>& regs, std::size_t n) {
    if (regs.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "library call '" + call.name + "' takes " + std::to_string(n) +
                                                    " registers, got " + std::to_string(regs.size()));
    }
}

void check_modulus(std::int64_t a, std::int64_t N) {
    if (N < 2 || N >= (std::int64_t{1} << 31)) throw Error(ErrorCode::InvalidArgument, "modulus out of range");
    if (a < 0 || a >= N) throw Error(ErrorCode::InvalidArgument, "addend must lie in [0, N)");
}

}  // namespace

void emit_qft(ProgramBuilder& b, const std::vector<Qubit>& reg) {
    for (Command& c : qft_commands(reg)) b.apply(std::move(c));
}

void emit_iqft(ProgramBuilder& b, const std::vector<Qubit>& reg) {
    for (Command& c : inverse(qft_commands(reg))) b.apply(std::move(c));
}

Circuit qft(std::size_t n) {
    ProgramBuilder b(n);
    emit_qft(b, iota(0, n));
    return b.finish();
}

Circuit iqft(std::size_t n) { return inverse(qft(n)); }

void emit_phi_add(ProgramBuilder& b, std::int64_t a, const std::vector<Qubit>& reg,
                  const std::vector<Qubit>& controls) {
    if (controls.size() > 2) throw Error(ErrorCode::InvalidArgument, "phi-adder takes at most two controls");
    if (reg.size() > 62) throw Error(ErrorCode::InvalidArgument, "phi-adder register too wide");
    for (std::size_t j = 0; j < reg.size(); ++j) {
        const std::int64_t m = std::int64_t{1} << (j + 1);
        std::int64_t r = mod_floor(a, m);
        if (r == 0) continue;
        if (2 * r > m) r -= m;
        const double angle = 2.0 * pi * static_cast<double>(r) / static_cast<double>(m);
        Command cmd = Command::phase(angle, reg[j]);
        if (controls.size() == 1) {
            cmd = Command::cr(angle, controls[0], reg[j]);
        } else if (controls.size() == 2) {
            cmd.add_controls(controls);
        }
        b.apply(std::move(cmd));
    }
}

Circuit draper_phi_add(std::int64_t a, std::size_t n, std::size_t num_controls) {
    ProgramBuilder b(num_controls + n);
    emit_phi_add(b, a, iota(num_controls, n), iota(0, num_controls));
    return b.finish();
}

Circuit draper_add(std::size_t n) {
    ProgramBuilder b(2 * n);
    const auto x = iota(0, n);
    const auto y = iota(n, n);
    emit_qft(b, y);
    for (std::size_t i = 0; i < n; ++i) emit_phi_add(b, std::int64_t{1} << i, y, {x[i]});
    emit_iqft(b, y);
    return b.finish();
}

void emit_cuccaro_add(ProgramBuilder& b, const std::vector<Qubit>& x, const std::vector<Qubit>& y, Qubit carry) {
    const std::size_t n = x.size();
    if (y.size() != n || n == 0) throw Error(ErrorCode::InvalidArgument, "adder operands must have equal width");
    if (n == 1) {
        b.cnot(x[0], y[0]);
        return;
    }
    auto toffoli = [&](Qubit c1, Qubit c2, Qubit t) {
        Command cmd = Command::cnot(c1, t);
        cmd.add_controls({c2});
        b.apply(std::move(cmd));
    };
    auto maj = [&](Qubit c, Qubit bb, Qubit a) {
        b.cnot(a, bb);
        b.cnot(a, c);
        toffoli(c, bb, a);
    };
    auto uma = [&](Qubit c, Qubit bb, Qubit a) {
        toffoli(c, bb, a);
        b.cnot(a, c);
        b.cnot(c, bb);
    };
    maj(carry, y[0], x[0]);
    for (std::size_t i = 1; i < n; ++i) maj(x[i - 1], y[i], x[i]);
    for (std::size_t i = n; i-- > 1;) uma(x[i - 1], y[i], x[i]);
    uma(carry, y[0], x[0]);
}

Circuit cuccaro_add(std::size_t n) {
    ProgramBuilder b(n == 1 ? 2 : 2 * n + 1);
    emit_cuccaro_add(b, iota(0, n), iota(n, n), static_cast<Qubit>(2 * n));
    return b.finish();
}

std::size_t bits_for(std::uint64_t N) {
    std::size_t n = 1;
    while ((std::uint64_t{1} << n) < N) ++n;
    return n;
}

void emit_modadd(ProgramBuilder& b, std::int64_t a, std::int64_t N, const std::vector<Qubit>& reg, Qubit ancilla,
                 const std::vector<Qubit>& controls) {
    check_modulus(a, N);
    if (controls.size() > 2) throw Error(ErrorCode::InvalidArgument, "modular adder takes at most two controls");
    if ((std::int64_t{1} << (reg.size() - 1)) < N) {
        throw Error(ErrorCode::InvalidArgument, "modular adder register too narrow for N");
    }
    const std::size_t k = controls.size();
    const Qubit top = reg.back();
    b.call(prefixed(k, "phiadd"), {a}, with_control_registers(controls, {reg}));
    b.call("phisub", {N}, {reg});
    b.call("iqft", {}, {reg});
    b.cnot(top, ancilla);
    b.call("qft", {}, {reg});
    b.call("cphiadd", {N}, {{ancilla}, reg});
    b.call(prefixed(k, "phisub"), {a}, with_control_registers(controls, {reg}));
    b.call("iqft", {}, {reg});
    b.x(top);
    b.cnot(top, ancilla);
    b.x(top);
    b.call("qft", {}, {reg});
    b.call(prefixed(k, "phiadd"), {a}, with_control_registers(controls, {reg}));
}

Circuit modadd_beauregard(std::int64_t a, std::int64_t N, std::size_t num_controls) {
    const std::size_t n = bits_for(static_cast<std::uint64_t>(N));
    ProgramBuilder b(num_controls + n + 2);
    emit_modadd(b, a, N, iota(num_controls, n + 1), static_cast<Qubit>(num_controls + n + 1),
                iota(0, num_controls));
    return b.finish();
}

void emit_mult_add(ProgramBuilder& b, std::int64_t a, std::int64_t N, const std::vector<Qubit>& x,
                   const std::vector<Qubit>& acc, const std::vector<Qubit>& controls) {
    check_modulus(a, N);
    if (controls.size() > 1) throw Error(ErrorCode::InvalidArgument, "multiply-add takes at most one control");
    const auto anc = b.allocate_ancilla(1);
    emit_qft(b, acc);
    std::int64_t term = a;
    for (Qubit xi : x) {
        std::vector<Qubit> ctrls = controls;
        ctrls.push_back(xi);
        b.call(prefixed(ctrls.size(), "modadd"), {term, N}, with_control_registers(ctrls, {acc, {anc[0]}}));
        term = (2 * term) % N;
    }
    emit_iqft(b, acc);
    b.deallocate(anc);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t N) {
    std::uint64_t result = 1 % N;
    a %= N;
    while (e > 0) {
        if (e & 1u) result = result * a % N;
        a = a * a % N;
        e >>= 1;
    }
    return result;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t N) {
    std::int64_t t = 0, new_t = 1;
    auto r = static_cast<std::int64_t>(N), new_r = static_cast<std::int64_t>(a % N);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1) {
        throw Error(ErrorCode::InvalidArgument,
                    std::to_string(a) + " is not invertible modulo " + std::to_string(N));
    }
    return static_cast<std::uint64_t>(mod_floor(t, static_cast<std::int64_t>(N)));
}

void emit_ua(ProgramBuilder& b, std::int64_t a, std::int64_t N, const std::vector<Qubit>& x,
             const std::vector<Qubit>& controls) {
    check_modulus(a, N);
    const auto ainv = static_cast<std::int64_t>(inverse_mod(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(N)));
    if (x.size() < bits_for(static_cast<std::uint64_t>(N))) {
        throw Error(ErrorCode::InvalidArgument, "register too narrow for N");
    }
    const std::size_t k = controls.size();
    const auto acc = b.allocate_ancilla(x.size() + 1);
    b.call(prefixed(k, "multadd"), {a, N}, with_control_registers(controls, {x, acc.qubits}));
    for (std::size_t i = 0; i < x.size(); ++i) {
        Command sw = Command::swap(x[i], acc[i]);
        sw.add_controls(controls);
        b.apply(std::move(sw));
    }
    b.call(prefixed(k, "multadd_dg"), {ainv, N}, with_control_registers(controls, {x, acc.qubits}));
    b.deallocate(acc);
}

Circuit controlled_ua(std::int64_t a, std::int64_t N) {
    const std::size_t n = bits_for(static_cast<std::uint64_t>(N));
    ProgramBuilder b(n + 1);
    emit_ua(b, a, N, iota(1, n), {0});
    return b.finish();
}

void emit_qpe(ProgramBuilder& b, const std::vector<Qubit>& ancillas, const ControlledPower& power) {
    const std::size_t m = ancillas.size();
    for (Qubit q : ancillas) b.h(q);
    for (std::size_t k = 0; k < m; ++k) power(b, ancillas[k], std::uint64_t{1} << (m - 1 - k));
    b.call("iqft", {}, {ancillas});
}

Circuit qpe(std::size_t num_ancillas, std::size_t system_qubits, const ControlledPower& power) {
    ProgramBuilder b(num_ancillas + system_qubits);
    emit_qpe(b, iota(0, num_ancillas), power);
    return b.finish();
}

const hlc::LibraryRegistry& standard_registry() {
    static const hlc::LibraryRegistry reg = [] {
        hlc::LibraryRegistry r;
        r.add("qft", {[](ProgramBuilder& b, const LibCall& call, const auto& regs) {
                          require_registers(call, regs, 1);
                          emit_qft(b, regs[0]);
                      },
                      "", false});
        const char* phi_names[] = {"phiadd", "cphiadd", "ccphiadd"};
        for (std::size_t k = 0; k < 3; ++k) {
            r.add(phi_names[k], {[k](ProgramBuilder& b, const LibCall& call, const auto& regs) {
                                     require_params(call, 1);
                                     require_registers(call, regs, k + 1);
                                     emit_phi_add(b, call.params[0], regs[k], leading_controls(regs, k));
                                 },
                                 k < 2 ? phi_names[k + 1] : "", false});
        }
        const char* modadd_names[] = {"modadd", "cmodadd", "ccmodadd"};
        for (std::size_t k = 0; k < 3; ++k) {
            r.add(modadd_names[k], {[k](ProgramBuilder& b, const LibCall& call, const auto& regs) {
                                        require_params(call, 2);
                                        require_registers(call, regs, k + 2);
                                        emit_modadd(b, call.params[0], call.params[1], regs[k],
                                                    regs[k + 1].at(0), leading_controls(regs, k));
                                    },
                                    k < 2 ? modadd_names[k + 1] : "", false});
        }
        const char* mult_names[] = {"multadd", "cmultadd"};
        for (std::size_t k = 0; k < 2; ++k) {
            r.add(mult_names[k], {[k](ProgramBuilder& b, const LibCall& call, const auto& regs) {
                                      require_params(call, 2);
                                      require_registers(call, regs, k + 2);
                                      emit_mult_add(b, call.params[0], call.params[1], regs[k], regs[k + 1],
                                                    leading_controls(regs, k));
                                  },
                                  k == 0 ? "cmultadd" : "", false});
        }
        const char* ua_names[] = {"ua", "cua"};
        for (std::size_t k = 0; k < 2; ++k) {
            r.add(ua_names[k], {[k](ProgramBuilder& b, const LibCall& call, const auto& regs) {
                                    require_params(call, 2);
                                    require_registers(call, regs, k + 1);
                                    emit_ua(b, call.params[0], call.params[1], regs[k], leading_controls(regs, k));
                                },
                                k == 0 ? "cua" : "", false});
        }
        r.add("qpe", {[](ProgramBuilder& b, const LibCall& call, const auto& regs) {
                          require_params(call, 2);
                          require_registers(call, regs, 2);
                          const auto a = static_cast<std::uint64_t>(call.params[0]);
                          const auto N = static_cast<std::uint64_t>(call.params[1]);
                          const auto& x = regs[1];
                          emit_qpe(b, regs[0], [&](ProgramBuilder& bb, Qubit ctrl, std::uint64_t power) {
                              std::uint64_t ak = a % N;
                              for (std::uint64_t p = power; p > 1; p >>= 1) ak = ak * ak % N;
                              bb.call("cua", {static_cast<std::int64_t>(ak), static_cast<std::int64_t>(N)},
                                      {{ctrl}, x});
                          });
                      },
                      "", false});
        r.add("draper_add", {[](ProgramBuilder& b, const LibCall& call, const auto& regs) {
                                 require_registers(call, regs, 2);
                                 emit_qft(b, regs[1]);
                                 for (std::size_t i = 0; i < regs[0].size(); ++i) {
                                     emit_phi_add(b, std::int64_t{1} << i, regs[1], {regs[0][i]});
                                 }
                                 emit_iqft(b, regs[1]);
                             },
                             "", false});
        r.add("cuccaro", {[](ProgramBuilder& b, const LibCall& call, const auto& regs) {
                              require_registers(call, regs, 2);
                              if (regs[0].size() == 1) {
                                  emit_cuccaro_add(b, regs[0], regs[1], 0);
                                  return;
                              }
                              const auto carry = b.allocate_ancilla(1);
                              emit_cuccaro_add(b, regs[0], regs[1], carry[0]);
                              b.deallocate(carry);
                          },
                          "", false});
        return r;
    }();
    return reg;
}

namespace {

std::uint64_t field(std::uint64_t local, std::size_t offset, std::size_t width) {
    return (local >> offset) & ((std::uint64_t{1} << width) - 1);
}

bool controls_set(std::uint64_t local, std::size_t k) {
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    return (local & mask) == mask;
}

/// Number of leading control registers in a c...name call.
std::size_t control_prefix(const std::string& name, const std::string& base) {
    return name.size() - base.size();
}

std::string strip_dg(const std::string& name, bool& dg) {
    dg = name.size() > 3 && name.ends_with("_dg");
    return dg ? name.substr(0, name.size() - 3) : name;
}

}  // namespace

void register_emulation(backends::Emulator& emu) {
    // Fourier-space addition: phase e^{2 pi i a rev(y) / 2^n}.
    for (const std::string base : {"phiadd", "phisub"}) {
        for (std::size_t k = 0; k < 3; ++k) {
            const bool sub = base == "phisub";
            emu.register_diagonal(prefixed(k, base), [k, sub](const LibCall& call, std::uint64_t local) -> Complex {
                if (!controls_set(local, k)) return 1.0;
                const std::size_t n = call.register_sizes.back();
                const auto m = static_cast<std::int64_t>(std::uint64_t{1} << n);
                const std::int64_t a = mod_floor(sub ? -call.params.at(0) : call.params.at(0), m);
                const auto y = static_cast<std::int64_t>(backends::reverse_bits(field(local, k, n), n));
                // Both factors stay below 2^26 within the emulator's qubit cap.
                const std::int64_t r = (a * y) % m;
                return std::polar(1.0, 2.0 * pi * static_cast<double>(r) / static_cast<double>(m));
            });
        }
    }
    // Modular addition on the Fourier-space register, defined on b < N with a
    // clean ancilla; identity elsewhere.
    for (const std::string name : {"modadd", "cmodadd", "ccmodadd", "modadd_dg", "cmodadd_dg", "ccmodadd_dg"}) {
        bool dg = false;
        const std::size_t k = control_prefix(strip_dg(name, dg), "modadd");
        emu.register_block(name, [k, dg](const LibCall& call, std::vector<Complex>& v) {
            const std::size_t width = call.register_sizes.at(k);
            const auto a = static_cast<std::uint64_t>(call.params.at(0));
            const auto N = static_cast<std::uint64_t>(call.params.at(1));
            const std::uint64_t bdim = std::uint64_t{1} << width;
            // Controls all 1 and the ancilla (top bit) 0; other blocks are left alone.
            const std::uint64_t base = (std::uint64_t{1} << k) - 1;
            std::vector<Complex> sub(bdim);
            for (std::uint64_t b = 0; b < bdim; ++b) sub[b] = v[base | (b << k)];
            backends::fourier_transform(sub, true);
            std::vector<Complex> moved(sub);
            for (std::uint64_t b = 0; b < N && b < bdim; ++b) moved[dg ? (b + N - a) % N : (b + a) % N] = sub[b];
            backends::fourier_transform(moved, false);
            for (std::uint64_t b = 0; b < bdim; ++b) v[base | (b << k)] = moved[b];
        });
    }
    for (const std::string name : {"multadd", "cmultadd", "multadd_dg", "cmultadd_dg"}) {
        bool dg = false;
        const std::size_t k = control_prefix(strip_dg(name, dg), "multadd");
        emu.register_permutation(name, [k, dg](const LibCall& call, std::uint64_t local) {
            if (!controls_set(local, k)) return local;
            const std::size_t nx = call.register_sizes.at(k);
            const std::size_t na = call.register_sizes.at(k + 1);
            const auto a = static_cast<std::uint64_t>(call.params.at(0));
            const auto N = static_cast<std::uint64_t>(call.params.at(1));
            const std::uint64_t x = field(local, k, nx);
            const std::uint64_t acc = field(local, k + nx, na);
            if (acc >= N) return local;
            const std::uint64_t term = a * (x % N) % N;
            const std::uint64_t out = dg ? (acc + N - term) % N : (acc + term) % N;
            return (local & ~(((std::uint64_t{1} << na) - 1) << (k + nx))) | (out << (k + nx));
        });
    }
    for (const std::string name : {"ua", "cua", "ua_dg", "cua_dg"}) {
        bool dg = false;
        const std::size_t k = control_prefix(strip_dg(name, dg), "ua");
        emu.register_permutation(name, [k, dg](const LibCall& call, std::uint64_t local) {
            if (!controls_set(local, k)) return local;
            const std::size_t nx = call.register_sizes.at(k);
            const auto N = static_cast<std::uint64_t>(call.params.at(1));
            std::uint64_t a = static_cast<std::uint64_t>(call.params.at(0));
            if (dg) a = inverse_mod(a, N);
            const std::uint64_t x = field(local, k, nx);
            if (x >= N) return local;
            return (local & ((std::uint64_t{1} << k) - 1)) | ((a * x % N) << k);
        });
    }
    for (const std::string name : {"draper_add", "cuccaro", "draper_add_dg", "cuccaro_dg"}) {
        const bool dg = name.ends_with("_dg");
        emu.register_permutation(name, [dg](const LibCall& call, std::uint64_t local) {
            const std::size_t n = call.register_sizes.at(0);
            const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
            const std::uint64_t x = local & mask;
            const std::uint64_t y = (local >> n) & mask;
            const std::uint64_t s = (dg ? y - x : y + x) & mask;
            return x | (s << n);
        });
    }
}

AdderChoice autotune_adder(std::size_t n, const backends::CostModel& m, const AutotuneOptions& options) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "adder width must be positive");
    using Key = std::tuple<std::size_t, std::string, double>;
    static std::mutex mutex;
    static std::map<Key, AdderChoice> cache;
    const Key key{n, m.to_json().dump(), options.epsilon};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    llc::LoweringOptions lo;
    lo.epsilon = options.epsilon;
    AdderChoice choice;
    choice.n = n;
    choice.draper = backends::count_resources(llc::lower(draper_add(n), lo).circuit, m);
    choice.cuccaro = backends::count_resources(llc::lower(cuccaro_add(n), lo).circuit, m);
    const bool cuccaro_wins =
        choice.cuccaro.total_cost < choice.draper.total_cost ||
        (choice.cuccaro.total_cost == choice.draper.total_cost && choice.cuccaro.width < choice.draper.width);
    choice.chosen = cuccaro_wins ? "cuccaro" : "draper";
    choice.cost = cuccaro_wins ? choice.cuccaro.total_cost : choice.draper.total_cost;
    std::lock_guard lock(mutex);
    return cache.emplace(key, choice).first->second;
}

}  // namespace qcomp::qlib
