#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcomp/builder/program_builder.hpp"
#include "qcomp/ir/gate.hpp"

namespace qcomp::hlc {

/// Emits the body of a library call onto the call's registers. The builder
/// already owns every qubit of the enclosing circuit; ancillas allocated by
/// the generator must be deallocated before it returns.
using Generator = std::function<void(builder::ProgramBuilder& b, const LibCall& call,
                                     const std::vector<std::vector<Qubit>>& registers)>;

struct LibraryEntry {
    Generator generator;
    /// Name of a hand-written variant taking one extra leading 1-qubit control
    /// register. Empty when only the generic construction exists.
    std::string controlled_variant;
    /// Opaque entries are left in place by inlining (backends implement them).
    bool opaque = false;
};

/// Maps library-call names to generators. A name that is not registered but
/// whose adjoint name is (iqft for qft, phisub for phiadd, foo_dg for foo)
/// resolves to the inverse of the registered body.
class LibraryRegistry {
public:
    void add(const std::string& name, LibraryEntry entry);
    [[nodiscard]] bool contains(const std::string& name) const;
    /// True when the name resolves directly or through its adjoint.
    [[nodiscard]] bool resolvable(const std::string& name) const;
    [[nodiscard]] const LibraryEntry* find(const std::string& name) const;
    /// Controlled variant of `name`, following adjoint names when needed.
    [[nodiscard]] std::optional<std::string> controlled_variant(const std::string& name) const;
    [[nodiscard]] bool opaque(const std::string& name) const;
    [[nodiscard]] std::vector<std::string> names() const;

    /// Body of one call, generated on a circuit of `width` qubits. Ancillas are
    /// taken from `reusable` first, then appended above `width`.
    [[nodiscard]] std::vector<Command> generate(const Command& call, std::size_t width,
                                                const std::vector<Qubit>& reusable,
                                                std::size_t& new_width) const;

private:
    std::map<std::string, LibraryEntry> entries_;
};

}  // namespace qcomp::hlc
