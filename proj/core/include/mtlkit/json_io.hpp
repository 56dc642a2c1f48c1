#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mtlkit/fo.hpp"
#include "mtlkit/interval.hpp"
#include "mtlkit/mtl.hpp"
#include "mtlkit/signal.hpp"
#include "mtlkit/transform.hpp"

namespace mtlkit {

/// Signal file format; rationals are strings. Throws std::invalid_argument on bad input.
std::string signal_to_json(const Signal& s, int indent = 2);
Signal signal_from_json(std::string_view text);

/// [{"lo":..,"hi":..,"lo_closed":..,"hi_closed":..}, ...]
std::string satset_to_json(const SatSet& s, int indent = -1);
SatSet satset_from_json(std::string_view text);

/// AST dumps.
std::string mtl_to_json(const Mtl& f, int indent = -1);
std::string fo_to_json(const Fo& f, int indent = -1);
std::string separated_to_json(const SeparatedForm& s, int indent = -1);
std::string trace_to_json(const std::vector<StageTrace>& trace, int indent = -1);

}  // namespace mtlkit
