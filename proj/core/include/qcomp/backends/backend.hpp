#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qcomp/backends/emulator.hpp"
#include "qcomp/backends/resources.hpp"
#include "qcomp/backends/simulator.hpp"
#include "qcomp/ir/circuit.hpp"
#include "qcomp/layout/layout.hpp"

namespace qcomp::backends {

struct RunOptions {
    std::uint64_t seed = 0;
    std::uint64_t basis_index = 0;
    CostModel cost;
    /// Connectivity for depth figures and the hardware payload; may be null.
    const layout::ConnectivityGraph* graph = nullptr;
};

struct MeasurementRecord {
    std::vector<Qubit> qubits;
    std::uint64_t outcome = 0;  // bit i = qubits[i]

    friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

struct RunResult {
    std::string backend;
    std::uint64_t seed = 0;
    bool ok = true;
    std::vector<MeasurementRecord> measurements;
    /// Exact distribution of the last measurement.
    std::optional<Distribution> distribution;
    std::optional<ResourceReport> report;
    std::vector<std::string> messages;
    /// Serialized program handed to a device (hardware stub only).
    std::string payload;
};

/// One execution target. Implementations are not thread-safe; use one
/// instance per concurrently executing circuit.
class Backend {
public:
    virtual ~Backend() = default;
    [[nodiscard]] virtual std::string name() const = 0;
    [[nodiscard]] virtual RunResult run(const Circuit& c, const RunOptions& options) = 0;
};

/// Gate-level simulation; measurements are sampled and collapse the state.
class SimulatorBackend final : public Backend {
public:
    explicit SimulatorBackend(SimulatorOptions options = {}) : sim_(options) {}
    [[nodiscard]] std::string name() const override { return "sim"; }
    [[nodiscard]] RunResult run(const Circuit& c, const RunOptions& options) override;

private:
    Simulator sim_;
};

/// Shortcut emulation of library calls; terminal measurement only.
class EmulatorBackend final : public Backend {
public:
    explicit EmulatorBackend(EmulatorOptions options = {}) : emu_(options) {}
    [[nodiscard]] std::string name() const override { return "emu"; }
    [[nodiscard]] RunResult run(const Circuit& c, const RunOptions& options) override;
    [[nodiscard]] Emulator& emulator() { return emu_; }

private:
    Emulator emu_;
};

/// Resource counting without execution.
class CounterBackend final : public Backend {
public:
    [[nodiscard]] std::string name() const override { return "counter"; }
    [[nodiscard]] RunResult run(const Circuit& c, const RunOptions& options) override;
};

/// Serializes validated LLQIR plus its schedule and stops: no device is attached.
class HardwareStub final : public Backend {
public:
    [[nodiscard]] std::string name() const override { return "hardware"; }
    [[nodiscard]] RunResult run(const Circuit& c, const RunOptions& options) override;
};

/// "sim", "emu", "counter" or "hardware"; throws InvalidArgument otherwise.
[[nodiscard]] std::unique_ptr<Backend> make_backend(const std::string& name);

[[nodiscard]] nlohmann::json to_json(const Distribution& d);
[[nodiscard]] nlohmann::json to_json(const RunResult& r);

}  // namespace qcomp::backends
