#pragma once

#include "imds/lts.hpp"
#include "imds/petri.hpp"

#include <span>
#include <string>
#include <string_view>

namespace imds {

// Line-oriented run record: one line per transition with step index, fired
// action names, consumed and produced items, and fresh-name substitutions,
// all in sorted order so identical runs serialize to identical bytes.
std::string format_trace(const SystemSpec&, std::span<const Transition>);

// Colored variant: one line per firing, each consumed and produced token
// annotated with its color, plus the colors acquired and released. Starts
// with the initial token line so extraction can run on the text alone.
std::string format_colored_trace(const ColoredTrace&);

ColoredTrace parse_colored_trace(std::string_view text);

}  // namespace imds
