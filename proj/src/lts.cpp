#include "imds/lts.hpp"

#include "imds/errors.hpp"

#include <deque>

namespace imds {

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

}  // namespace

std::vector<ActionId> prepared(const SystemSpec& spec, const Configuration& c) {
    std::vector<ActionId> out;
    for (std::size_t i = 0; i < spec.actions.size(); ++i) {
        const auto& a = spec.actions[i];
        if (c.contains(a.in_passed) && c.contains(a.in_stored))
            out.push_back(static_cast<ActionId>(i));
    }
    return out;
}

Transition fire_all(const SystemSpec& spec, const Configuration& source,
                    std::span<const ActionId> ids) {
    if (ids.empty()) throw NotPreparedError("empty action set");

    std::vector<ActionId> sorted_ids(ids.begin(), ids.end());
    sort_unique(sorted_ids);
    if (sorted_ids.size() != ids.size())
        throw ModelError("an action appears twice in one step");

    std::vector<Label> nodes;
    for (ActionId id : sorted_ids) {
        const auto& a = spec.action(id);
        if (!source.contains(a.in_passed) || !source.contains(a.in_stored))
            throw NotPreparedError("action '" + a.name + "' is not prepared");
        nodes.push_back(a.in_stored.location);
    }
    std::sort(nodes.begin(), nodes.end());
    if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
        throw ModelError("conflicting actions on one node fired together");

    const auto tags_in_use = pending_tags(source);
    const auto labels_in_use = present_labels(source);
    std::vector<Tag> used_tags;
    std::vector<Label> used_labels;

    Transition tr;
    tr.source = source;
    Configuration next = source;

    for (ActionId id : sorted_ids) {
        const auto& a = spec.action(id);
        FiredAction f;
        f.action = id;
        f.name = a.name;
        f.in_passed = a.in_passed;
        f.in_stored = a.in_stored;
        for (std::size_t i = 0; i < a.out_stored.size(); ++i) {
            const auto& o = a.out_stored[i];
            Label loc = o.location ? *o.location
                                   : allocate_pool_label(spec, labels_in_use, used_labels);
            if (!o.location) f.fresh_labels.emplace_back(i, loc);
            f.out_stored.push_back({loc, o.resource});
        }
        for (std::size_t i = 0; i < a.out_passed.size(); ++i) {
            const auto& o = a.out_passed[i];
            Tag tag = o.tag ? *o.tag : allocate_pool_tag(spec, tags_in_use, used_tags);
            if (!o.tag) f.fresh_tags.emplace_back(i, tag);
            f.out_passed.push_back({tag, o.destination, o.service});
        }
        tr.fired.push_back(std::move(f));
    }

    for (const auto& f : tr.fired) {
        sorted_erase(next.passed, f.in_passed);
        sorted_erase(next.stored, f.in_stored);
    }
    for (const auto& f : tr.fired) {
        for (const auto& p : f.out_passed) next.passed.push_back(p);
        for (const auto& s : f.out_stored) next.stored.push_back(s);
    }
    if (!normalize(next))
        throw ModelError("firing produced colliding items");
    if (!configuration_valid(next))
        throw ModelError("firing produced a passed item directed at a node that does not exist");

    tr.target = std::move(next);
    return tr;
}

std::pair<Configuration, FiredAction> fire(const SystemSpec& spec, const Configuration& c,
                                           ActionId id) {
    auto tr = fire_all(spec, c, std::span<const ActionId>(&id, 1));
    return {std::move(tr.target), std::move(tr.fired.front())};
}

std::map<Label, std::vector<ActionId>> group_by_node(const SystemSpec& spec,
                                                     std::span<const ActionId> ids) {
    std::map<Label, std::vector<ActionId>> by_node;
    for (ActionId id : ids) by_node[spec.action(id).in_stored.location].push_back(id);
    return by_node;
}

std::vector<ActionId> choose_step(const std::map<Label, std::vector<ActionId>>& by_node,
                                  const Policy& policy, std::mt19937_64& rng) {
    if (by_node.empty()) throw NotPreparedError("no prepared action");
    if (policy.kind == Policy::Kind::Intermediate && policy.k == 0)
        throw Error("policy parameter k must be at least 1");

    std::vector<ActionId> chosen;
    switch (policy.kind) {
        case Policy::Kind::Interleaving: {
            std::vector<ActionId> all;
            for (const auto& [node, group] : by_node)
                all.insert(all.end(), group.begin(), group.end());
            std::sort(all.begin(), all.end());
            chosen.push_back(all[pick(rng, all.size())]);
            break;
        }
        case Policy::Kind::MaxConcurrency: {
            for (const auto& [node, group] : by_node)
                chosen.push_back(group[pick(rng, group.size())]);
            break;
        }
        case Policy::Kind::Intermediate: {
            std::vector<Label> nodes;
            for (const auto& [node, group] : by_node) nodes.push_back(node);
            std::size_t take = std::min<std::size_t>(policy.k, nodes.size());
            std::vector<Label> picked;
            for (std::size_t i = 0; i < take; ++i) {
                std::size_t j = pick(rng, nodes.size());
                picked.push_back(nodes[j]);
                nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(j));
            }
            std::sort(picked.begin(), picked.end());
            for (Label node : picked) {
                const auto& group = by_node.at(node);
                chosen.push_back(group[pick(rng, group.size())]);
            }
            break;
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

Transition step(const SystemSpec& spec, const Configuration& c, const Policy& policy,
                std::mt19937_64& rng) {
    auto ready = prepared(spec, c);
    auto by_node = group_by_node(spec, ready);
    auto chosen = choose_step(by_node, policy, rng);
    return fire_all(spec, c, chosen);
}

std::vector<Transition> run(const SystemSpec& spec, const Policy& policy,
                            std::size_t max_steps) {
    std::mt19937_64 rng(policy.seed);
    std::vector<Transition> trace;
    Configuration current = spec.initial;
    for (std::size_t i = 0; i < max_steps; ++i) {
        if (prepared(spec, current).empty()) break;
        Transition tr = step(spec, current, policy, rng);
        tr.step_index = i + 1;
        current = tr.target;
        trace.push_back(std::move(tr));
    }
    return trace;
}

std::optional<std::uint32_t> ReachGraph::find_state(const Configuration& c) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == c) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

ReachGraph reach(const SystemSpec& spec, const ReachBounds& bounds) {
    ReachGraph g;
    std::map<Configuration, std::uint32_t> index;

    g.states.push_back(spec.initial);
    index.emplace(spec.initial, 0);

    std::deque<std::uint32_t> frontier{0};
    while (!frontier.empty()) {
        std::uint32_t sid = frontier.front();
        frontier.pop_front();
        // states vector may reallocate while we expand, so copy the source
        const Configuration source = g.states[sid];

        auto ready = prepared(spec, source);
        if (ready.empty()) {
            g.terminal.push_back(sid);
            continue;
        }
        for (ActionId id : ready) {
            Configuration target;
            try {
                target = fire(spec, source, id).first;
            } catch (const PoolExhaustedError&) {
                g.truncated = true;
                continue;
            }
            auto it = index.find(target);
            std::uint32_t tid;
            if (it != index.end()) {
                tid = it->second;
            } else {
                if (g.states.size() >= bounds.max_states) {
                    g.truncated = true;
                    continue;
                }
                tid = static_cast<std::uint32_t>(g.states.size());
                g.states.push_back(target);
                index.emplace(std::move(target), tid);
                frontier.push_back(tid);
            }
            g.edges.push_back({sid, tid, id});
        }
    }
    return g;
}

}  // namespace imds
