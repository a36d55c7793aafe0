#pragma once

#include "imds/lts.hpp"
#include "imds/petri.hpp"

#include <string>

namespace imds {

struct DotOptions {
    bool show_marking = true;  // fill the initially marked places
    enum class ColorBy { None, Tag, Location } color_by = ColorBy::None;
};

// Places as circles, transitions as boxes, arcs directed; nodes emitted in
// lexicographic name order so the output is byte-stable.
std::string export_dot(const PetriNet&, const DotOptions& = {});

// States as nodes (s0 is the initial one, terminal states doubly circled),
// action names as edge labels.
std::string export_dot(const SystemSpec&, const ReachGraph&);

}  // namespace imds
