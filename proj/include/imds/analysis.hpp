#pragma once

#include "imds/lts.hpp"
#include "imds/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace imds {

// What a state with nothing prepared means: clean termination when no
// passed item is left, deadlock when some matter is still pending.
struct Verdict {
    enum class Kind { Termination, Deadlock };
    Kind kind = Kind::Termination;
    std::vector<Tag> stuck_tags;
    std::vector<Tag> live_tags;  // empty for terminal states: nothing moves on
};

Verdict classify_terminal(const SystemSpec&, const Configuration&);  // throws NotTerminalError

struct TagStatus {
    enum class Kind { Absent, Live, Deadlocked };
    Kind kind = Kind::Absent;
    std::vector<std::uint32_t> deadlocked_from;  // states where the tag can no longer move
};

struct ProgressReport {
    std::vector<std::pair<Tag, TagStatus>> tags;  // ascending tag id
    bool partial_deadlock = false;
    std::vector<std::uint32_t> partial_witnesses;  // states with both stuck and live tags
};

// Per-tag progress over a complete reachability graph: a tag is deadlocked
// from a state when it has a pending item there and no path ever consumes an
// item of that tag again. Throws TruncatedGraphError on truncated graphs,
// where the verdict would be unsound.
ProgressReport tag_progress(const SystemSpec&, const ReachGraph&);

}  // namespace imds
