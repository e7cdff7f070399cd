// qcomp: command-line front end for the compiler pipeline, the backends and
// the Shor demonstration.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qcomp/backends/backend.hpp"
#include "qcomp/backends/resources.hpp"
#include "qcomp/driver/pipeline.hpp"
#include "qcomp/driver/shor.hpp"
#include "qcomp/error.hpp"
#include "qcomp/ir/text.hpp"
#include "qcomp/layout/layout.hpp"
#include "qcomp/qlib/qlib.hpp"

namespace {

using namespace qcomp;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitShorFailed = 2;

struct InputOptions {
    std::string input;
    std::string program;
    std::optional<std::uint64_t> n;
    std::optional<std::uint64_t> N;
    std::optional<std::uint64_t> a;
    std::optional<double> theta;
};

struct StageOptions {
    std::string to;
    double epsilon = 1e-2;
    std::string graph;
};

void add_input_options(CLI::App* app, InputOptions& in) {
    auto* input = app->add_option("--input,-i", in.input, "Textual QIR file ('-' for stdin)");
    auto* program = app->add_option("--program,-p", in.program, "Built-in program name");
    input->excludes(program);
    app->add_option("--n", in.n, "Operand width; the modulus for the shor program");
    app->add_option("--N", in.N, "Modulus for modular programs");
    app->add_option("--a", in.a, "Base for modular programs");
    app->add_option("--theta", in.theta, "Rotation angle of the fig6 programs");
}

// The stage default depends on the subcommand and is filled in after parsing.
void add_stage_options(CLI::App* app, StageOptions& st, const std::string& default_help) {
    app->add_option("--to", st.to, "Last stage to run: none|hlc|llc|layout (default " + default_help + ")")
        ->check(CLI::IsMember({"none", "hlc", "llc", "layout"}));
    app->add_option("--epsilon", st.epsilon, "Per-gate synthesis tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--graph", st.graph, "Connectivity graph file")->check(CLI::ExistingFile);
}

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

driver::ProgramParams program_params(const InputOptions& in) {
    driver::ProgramParams p;
    if (in.program == "shor") {
        if (in.n) p.N = *in.n;
    } else if (in.n) {
        p.n = *in.n;
    }
    if (in.N) p.N = *in.N;
    p.a = in.a;
    if (in.theta) p.theta = *in.theta;
    return p;
}

Circuit load_input(const InputOptions& in) {
    if (!in.input.empty()) return parse(read_all(in.input));
    if (!in.program.empty()) return driver::builtin_program(in.program, program_params(in));
    throw Error(ErrorCode::InvalidArgument,
                "one of --input or --program is required (programs: " + driver::builtin_program_names() + ")");
}

std::optional<layout::ConnectivityGraph> load_graph(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return layout::ConnectivityGraph::load(path);
}

Circuit run_stages(const Circuit& c, const StageOptions& st, const std::optional<layout::ConnectivityGraph>& graph) {
    driver::PipelineOptions po;
    po.epsilon = st.epsilon;
    po.graph = graph;
    return driver::compile(c, driver::parse_stage(st.to), po);
}

backends::CostModel load_cost(const std::string& spec) {
    if (spec.empty() || spec == "uniform") return backends::CostModel::uniform();
    if (spec == "t-dominated") return backends::CostModel::t_dominated();
    return backends::CostModel::load(spec);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    f << text;
}

void write_json(const std::string& path, const json& j) {
    if (!path.empty()) write_output(path, j.dump(2) + "\n");
}

std::string format_bits(std::uint64_t value, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t i = 0; i < width; ++i)
        if ((value >> i) & 1U) s[width - 1 - i] = '1';
    return s;
}

void print_run(const backends::RunResult& r) {
    std::cout << "backend " << r.backend << " seed " << r.seed << '\n';
    for (const auto& m : r.measurements) {
        std::cout << "measure";
        for (auto q : m.qubits) std::cout << ' ' << q;
        std::cout << " -> " << format_bits(m.outcome, m.qubits.size()) << '\n';
    }
    if (r.distribution) {
        std::size_t width = r.distribution->qubits.size();
        for (const auto& [outcome, p] : r.distribution->probabilities) {
            if (p < 1e-12) continue;
            std::cout << "p " << format_bits(outcome, width) << ' ' << p << '\n';
        }
    }
    if (r.report) std::cout << backends::to_json(*r.report).dump() << '\n';
    for (const auto& msg : r.messages) std::cout << msg << '\n';
    if (!r.payload.empty()) std::cout << r.payload;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcomp: quantum program compiler, simulator and resource estimator"};
    app.require_subcommand(1);

    InputOptions in;
    StageOptions st;
    std::string out;
    std::string cost_spec;
    std::string qec_spec = "none";
    std::string backend = "emu";
    std::uint64_t seed = 0;
    std::size_t adder_n = 4;

    auto* compile = app.add_subcommand("compile", "Run pipeline stages and write textual QIR/LLQIR");
    add_input_options(compile, in);
    add_stage_options(compile, st, "llc");
    compile->add_option("--out,-o", out, "Output file (stdout by default)");

    auto* run = app.add_subcommand("run", "Execute a program on a backend");
    add_input_options(run, in);
    add_stage_options(run, st, "none, hlc for sim, layout for hardware");
    run->add_option("--backend,-b", backend, "sim|emu|counter|hardware")
        ->check(CLI::IsMember({"sim", "emu", "counter", "hardware"}))
        ->capture_default_str();
    run->add_option("--seed,-s", seed, "Seed for sampling and base selection")->capture_default_str();
    run->add_option("--cost", cost_spec, "uniform|t-dominated|<cost model file>");
    run->add_option("--out,-o", out, "Write the structured result document here");

    auto* report = app.add_subcommand("report", "Emit the structured resource document");
    add_input_options(report, in);
    add_stage_options(report, st, "llc");
    report->add_option("--cost", cost_spec, "uniform|t-dominated|<cost model file>");
    report->add_option("--qec", qec_spec, "none|repetition:<d>|surface:<d>")->capture_default_str();
    report->add_option("--out,-o", out, "Output file (stdout by default)");

    auto* bench = app.add_subcommand("bench-adders", "Compare the Draper and Cuccaro adders");
    bench->add_option("--n", adder_n, "Operand width")->check(CLI::Range(1, 16))->capture_default_str();
    bench->add_option("--epsilon", st.epsilon, "Per-gate synthesis tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--cost", cost_spec, "uniform|t-dominated|<cost model file>");
    bench->add_option("--out,-o", out, "Write the structured document here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compile->parsed()) {
            if (st.to.empty()) st.to = "llc";
            auto graph = load_graph(st.graph);
            Circuit c = run_stages(load_input(in), st, graph);
            write_output(out, serialize(c));
            return kExitOk;
        }

        if (run->parsed()) {
            if (in.program == "shor" && in.input.empty() && (backend == "sim" || backend == "emu")) {
                driver::ShorOptions so;
                so.seed = seed;
                so.backend = backend;
                auto result = driver::shor_factor(program_params(in).N, so);
                std::cout << result.transcript();
                write_json(out, driver::to_json(result));
                return result.success ? kExitOk : kExitShorFailed;
            }
            auto graph = load_graph(st.graph);
            if (st.to.empty()) st.to = backend == "sim" ? "hlc" : backend == "hardware" ? "layout" : "none";
            Circuit c = run_stages(load_input(in), st, graph);
            backends::RunOptions ro;
            ro.seed = seed;
            ro.cost = load_cost(cost_spec);
            ro.graph = graph ? &*graph : nullptr;
            auto target = backends::make_backend(backend);
            if (auto* emu = dynamic_cast<backends::EmulatorBackend*>(target.get()))
                qlib::register_emulation(emu->emulator());
            auto result = target->run(c, ro);
            print_run(result);
            write_json(out, backends::to_json(result));
            return result.ok ? kExitOk : kExitError;
        }

        if (report->parsed()) {
            if (st.to.empty()) st.to = "llc";
            auto graph = load_graph(st.graph);
            Circuit c = run_stages(load_input(in), st, graph);
            backends::CountOptions co;
            co.graph = graph ? &*graph : nullptr;
            auto r = backends::count_resources(c, load_cost(cost_spec), co);
            r = layout::apply_qec_accounting(r, layout::QecScheme::parse(qec_spec));
            write_output(out, backends::to_json(r).dump(2) + "\n");
            return kExitOk;
        }

        if (bench->parsed()) {
            auto model = load_cost(cost_spec);
            qlib::AutotuneOptions ao;
            ao.epsilon = st.epsilon;
            auto choice = qlib::autotune_adder(adder_n, model, ao);
            json j = {{"n", choice.n},
                      {"draper", backends::to_json(choice.draper)},
                      {"cuccaro", backends::to_json(choice.cuccaro)},
                      {"chosen", choice.chosen},
                      {"cost", choice.cost},
                      {"cost_model", model.to_json()}};
            std::cout << "draper  " << j["draper"].dump() << '\n'
                      << "cuccaro " << j["cuccaro"].dump() << '\n'
                      << "chosen " << choice.chosen << " cost " << choice.cost << '\n';
            write_json(out, j);
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "qcomp: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
