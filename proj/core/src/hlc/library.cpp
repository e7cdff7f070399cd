#include "qcomp/hlc/library.hpp"

#include "qcomp/error.hpp"

namespace qcomp::hlc {

void LibraryRegistry::add(const std::string& name, LibraryEntry entry) {
    entries_[name] = std::move(entry);
}

bool LibraryRegistry::contains(const std::string& name) const { return entries_.contains(name); }

bool LibraryRegistry::resolvable(const std::string& name) const {
    return contains(name) || contains(adjoint_library_name(name));
}

const LibraryEntry* LibraryRegistry::find(const std::string& name) const {
    auto it = entries_.find(name);
    return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> LibraryRegistry::controlled_variant(const std::string& name) const {
    if (const LibraryEntry* e = find(name); e && !e->controlled_variant.empty()) {
        return e->controlled_variant;
    }
    const std::string adj = adjoint_library_name(name);
    if (const LibraryEntry* e = find(adj); e && !e->controlled_variant.empty()) {
        return adjoint_library_name(e->controlled_variant);
    }
    return std::nullopt;
}

bool LibraryRegistry::opaque(const std::string& name) const {
    if (const LibraryEntry* e = find(name)) return e->opaque;
    if (const LibraryEntry* e = find(adjoint_library_name(name))) return e->opaque;
    return false;
}

std::vector<std::string> LibraryRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, entry] : entries_) out.push_back(name);
    return out;
}

std::vector<Command> LibraryRegistry::generate(const Command& call, std::size_t width,
                                               const std::vector<Qubit>& reusable,
                                               std::size_t& new_width) const {
    const LibCall& lib = *call.gate.lib;
    const LibraryEntry* entry = find(lib.name);
    bool adjoint = false;
    LibCall effective = lib;
    if (entry == nullptr) {
        effective.name = adjoint_library_name(lib.name);
        entry = find(effective.name);
        adjoint = true;
    }
    if (entry == nullptr || !entry->generator) {
        throw Error(ErrorCode::UnresolvedCall, "no library implementation for '" + lib.name + "'");
    }
    builder::ProgramBuilder b(width, reusable);
    entry->generator(b, effective, call.registers());
    Circuit body = b.finish();
    new_width = body.num_qubits;
    return adjoint ? inverse(body.commands) : body.commands;
}

}  // namespace qcomp::hlc
