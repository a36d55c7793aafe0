#include "imds/analysis.hpp"

#include "imds/errors.hpp"

#include <deque>

namespace imds {

Verdict classify_terminal(const SystemSpec& spec, const Configuration& c) {
    if (!prepared(spec, c).empty())
        throw NotTerminalError("configuration still has prepared actions");
    Verdict v;
    if (c.passed.empty()) {
        v.kind = Verdict::Kind::Termination;
    } else {
        v.kind = Verdict::Kind::Deadlock;
        v.stuck_tags = pending_tags(c);
    }
    return v;
}

ProgressReport tag_progress(const SystemSpec& spec, const ReachGraph& g) {
    if (g.truncated)
        throw TruncatedGraphError("tag progress needs a complete reachability graph");

    const auto n = static_cast<std::uint32_t>(g.states.size());

    std::vector<std::vector<std::uint32_t>> reverse(n);
    for (const auto& e : g.edges) reverse[e.target].push_back(e.source);

    // every tag that is declared (pool names only when they actually occur)
    std::vector<Tag> tags;
    for (std::uint32_t i = 0; i < spec.symbols.size(Space::Tag); ++i) {
        Tag t{i};
        if (!spec.is_pool_tag(t)) tags.push_back(t);
    }
    for (const auto& state : g.states)
        for (const auto& p : state.passed)
            if (spec.is_pool_tag(p.tag)) tags.push_back(p.tag);
    sort_unique(tags);

    ProgressReport report;
    std::vector<std::vector<bool>> stuck_at(tags.size(), std::vector<bool>(n, false));

    for (std::size_t ti = 0; ti < tags.size(); ++ti) {
        Tag t = tags[ti];

        // states from which some future edge consumes an item of this tag
        std::vector<bool> can_consume(n, false);
        std::deque<std::uint32_t> work;
        for (const auto& e : g.edges) {
            if (spec.action(e.action).in_passed.tag != t) continue;
            if (!can_consume[e.source]) {
                can_consume[e.source] = true;
                work.push_back(e.source);
            }
        }
        while (!work.empty()) {
            auto s = work.front();
            work.pop_front();
            for (auto pred : reverse[s])
                if (!can_consume[pred]) {
                    can_consume[pred] = true;
                    work.push_back(pred);
                }
        }

        TagStatus status;
        bool ever_pending = false;
        for (std::uint32_t s = 0; s < n; ++s) {
            bool pending = g.states[s].with_tag(t) != nullptr;
            if (!pending) continue;
            ever_pending = true;
            if (!can_consume[s]) {
                status.deadlocked_from.push_back(s);
                stuck_at[ti][s] = true;
            }
        }
        if (!ever_pending)
            status.kind = TagStatus::Kind::Absent;
        else if (status.deadlocked_from.empty())
            status.kind = TagStatus::Kind::Live;
        else
            status.kind = TagStatus::Kind::Deadlocked;
        report.tags.emplace_back(t, std::move(status));
    }

    for (std::uint32_t s = 0; s < n; ++s) {
        bool any_stuck = false, any_live = false;
        for (std::size_t ti = 0; ti < tags.size(); ++ti) {
            bool pending = g.states[s].with_tag(tags[ti]) != nullptr;
            if (!pending) continue;
            if (stuck_at[ti][s])
                any_stuck = true;
            else
                any_live = true;
        }
        if (any_stuck && any_live) {
            report.partial_deadlock = true;
            report.partial_witnesses.push_back(s);
        }
    }
    return report;
}

}  // namespace imds
