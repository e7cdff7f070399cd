#include "qcomp/backends/resource_report.hpp"

namespace qcomp::backends {

std::uint64_t ResourceReport::total_gates() const {
    std::uint64_t n = 0;
    for (const auto& [_, c] : counts) n += c;
    return n;
}

std::uint64_t ResourceReport::count(const std::string& name) const {
    const auto it = counts.find(name);
    return it == counts.end() ? 0 : it->second;
}

}  // namespace qcomp::backends
