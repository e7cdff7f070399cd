#include "qcomp/driver/pipeline.hpp"

#include <numeric>

#include "qcomp/builder/program_builder.hpp"
#include "qcomp/driver/shor.hpp"
#include "qcomp/error.hpp"
#include "qcomp/hlc/passes.hpp"
#include "qcomp/llc/lower.hpp"
#include "qcomp/qlib/qlib.hpp"

namespace qcomp::driver {

Stage parse_stage(const std::string& name) {
    if (name == "none") return Stage::None;
    if (name == "hlc") return Stage::Hlc;
    if (name == "llc") return Stage::Llc;
    if (name == "layout") return Stage::Layout;
    throw Error(ErrorCode::InvalidArgument, "unknown stage '" + name + "' (none, hlc, llc, layout)");
}

Circuit compile(const Circuit& c, Stage to, const PipelineOptions& options) {
    require_valid(c);
    if (to == Stage::None) return c;
    const hlc::LibraryRegistry& reg = options.registry ? *options.registry : qlib::standard_registry();
    Circuit out = hlc::compile_high_level(c, reg);
    require_valid(out);
    if (to == Stage::Hlc) return out;

    llc::LoweringOptions lo;
    lo.epsilon = options.epsilon;
    lo.strategy = options.strategy;
    out = llc::lower(out, lo).circuit;
    if (to == Stage::Llc) return out;

    const layout::ConnectivityGraph graph =
        options.graph ? *options.graph : layout::ConnectivityGraph::line(out.num_qubits);
    out = layout::route(out, graph).circuit;
    require_valid(out);
    return out;
}

namespace {

std::uint64_t default_base(std::uint64_t N) {
    for (std::uint64_t a = 2; a < N; ++a) {
        if (std::gcd(a, N) == 1) return a;
    }
    throw Error(ErrorCode::InvalidArgument, "no base coprime to " + std::to_string(N));
}

std::vector<Qubit> iota(std::size_t first, std::size_t n) {
    std::vector<Qubit> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Qubit>(first + i);
    return v;
}

}  // namespace

Circuit builtin_program(const std::string& name, const ProgramParams& p) {
    const auto n = static_cast<std::size_t>(p.n);
    if (name == "iqft3") return qlib::iqft(3);
    if (name == "qft") return qlib::qft(n);
    if (name == "iqft") return qlib::iqft(n);
    if (name == "draper_add") return qlib::draper_add(n);
    if (name == "cuccaro") return qlib::cuccaro_add(n);
    if (name == "phiadd") {
        const auto a = static_cast<std::int64_t>(p.a.value_or(1));
        return qlib::draper_phi_add(a, n);
    }
    const std::uint64_t a = p.a ? *p.a : (p.N >= 3 ? default_base(p.N) : 1);
    if (name == "modadd") return qlib::modadd_beauregard(static_cast<std::int64_t>(a % p.N), static_cast<std::int64_t>(p.N));
    if (name == "cua") {
        builder::ProgramBuilder b(1 + qlib::bits_for(p.N));
        b.call("cua", {static_cast<std::int64_t>(a), static_cast<std::int64_t>(p.N)},
               {{0}, iota(1, qlib::bits_for(p.N))});
        return b.finish();
    }
    if (name == "shor") return shor_circuit(a, p.N);
    if (name == "fig6-quifelse") {
        builder::ProgramBuilder b(2);
        b.quifelse(0, [&](auto& bb) { bb.rz(p.theta, 1); }, [&](auto& bb) { bb.rz(-p.theta, 1); });
        return b.finish();
    }
    if (name == "fig6-naive") {
        builder::ProgramBuilder b(2);
        b.x(0);
        b.with_control(0, [&](auto& bb) { bb.rz(p.theta, 1); });
        b.x(0);
        b.with_control(0, [&](auto& bb) { bb.rz(-p.theta, 1); });
        return b.finish();
    }
    throw Error(ErrorCode::InvalidArgument, "unknown program '" + name + "' (" + builtin_program_names() + ")");
}

std::string builtin_program_names() {
    return "iqft3, qft, iqft, draper_add, cuccaro, phiadd, modadd, cua, shor, fig6-quifelse, fig6-naive";
}

}  // namespace qcomp::driver
