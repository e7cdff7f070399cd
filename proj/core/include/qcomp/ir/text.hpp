#pragma once

#include <string>
#include <string_view>

#include "qcomp/ir/circuit.hpp"

namespace qcomp {

/// Textual QIR, one command per line:
///
///     qir 1
///     qubits <n>
///     level <qir|llqir>
///     gateset <names...>                       (llqir only)
///     apply <gate>[(<angle>)] [ctrl <c...> :] [pctrl <p...> :] <targets...>
///     call <name>[(<ints>)] [ctrl <c...> :] [pctrl <p...> :] <reg> | <reg> ...
///     section <compute|uncompute> <begin|end> [<id>]
///     measure <q...>
///     alloc <q...>
///     dealloc <q...>
///
/// For cnot and cr the first positional qubit is a control. Angles are written
/// with 12 significant digits.
[[nodiscard]] std::string serialize(const Circuit& c);
[[nodiscard]] Circuit parse(std::string_view text);

/// Formats an angle the way serialize() does.
[[nodiscard]] std::string format_angle(double value);

}  // namespace qcomp
