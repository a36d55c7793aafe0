#include "imds/canonical.hpp"

#include "imds/errors.hpp"

#include <map>

namespace imds {

namespace {

std::vector<StoredItem> derived_stored(const SystemSpec& spec,
                                       const std::vector<PassedItem>& qp) {
    std::vector<StoredItem> out;
    std::vector<Label> dests;
    for (const auto& p : qp) dests.push_back(p.destination);
    sort_unique(dests);
    for (Label l : dests)
        for (const auto& s : stored_at(spec, l)) out.push_back(s);
    sort_unique(out);
    return out;
}

}  // namespace

bool is_async_process(const SystemSpec& spec, const Quota& q) {
    return q.stored == derived_stored(spec, q.passed);
}

bool is_async_process_oracle(const SystemSpec& spec, const Quota& q,
                             const OracleBudget& budget) {
    // Choice groups: at most one passed item per tag, one stored per location.
    std::map<Tag, std::vector<const PassedItem*>> by_tag;
    for (const auto& p : q.passed) by_tag[p.tag].push_back(&p);
    std::map<Label, std::vector<const StoredItem*>> by_loc;
    for (const auto& s : q.stored) by_loc[s.location].push_back(&s);

    double combos = 1.0;
    for (const auto& [t, g] : by_tag) combos *= double(g.size() + 1);
    for (const auto& [l, g] : by_loc) combos *= double(g.size() + 1);
    if (combos > budget.max_component_configs)
        throw UniverseTooLargeError("component configuration space too large to enumerate");

    // Labels whose node can be present in the wider configuration without the
    // quota seeing it: a stored item at the label exists outside the quota.
    std::vector<Label> outside;
    for (const auto& s : spec.stored_universe)
        if (!q.contains(s)) outside.push_back(s.location);
    sort_unique(outside);

    std::vector<std::vector<const PassedItem*>> pgroups;
    for (auto& [t, g] : by_tag) pgroups.push_back(std::move(g));
    std::vector<std::vector<const StoredItem*>> sgroups;
    for (auto& [l, g] : by_loc) sgroups.push_back(std::move(g));

    const std::size_t np = pgroups.size(), ns = sgroups.size();
    std::vector<std::size_t> odo(np + ns, 0);  // 0 = absent, i = group[i-1]

    std::vector<bool> reachable_dest(spec.symbols.size(Space::Label), false);

    for (;;) {
        std::vector<const PassedItem*> cp;
        std::vector<Label> clocs;
        for (std::size_t i = 0; i < np; ++i)
            if (odo[i] > 0) cp.push_back(pgroups[i][odo[i] - 1]);
        for (std::size_t i = 0; i < ns; ++i)
            if (odo[np + i] > 0) clocs.push_back(sgroups[i][odo[np + i] - 1]->location);

        bool realizable = true;
        bool dangling = false;  // a destination with no matching location in c
        for (const auto* p : cp) {
            Label l = p->destination;
            if (std::find(clocs.begin(), clocs.end(), l) != clocs.end()) continue;
            if (sorted_contains(outside, l))
                dangling = true;
            else {
                realizable = false;
                break;
            }
        }
        if (realizable) {
            if (dangling) return false;  // destinations(c) escapes locations(c)
            for (const auto* p : cp) reachable_dest[p->destination.value] = true;
        }

        std::size_t i = 0;
        for (; i < odo.size(); ++i) {
            std::size_t limit = i < np ? pgroups[i].size() : sgroups[i - np].size();
            if (odo[i] < limit) {
                ++odo[i];
                break;
            }
            odo[i] = 0;
        }
        if (i == odo.size()) break;
    }

    for (const auto& s : q.stored)
        if (!reachable_dest[s.location.value]) return false;  // never processed
    return true;
}

ProcessSpec make_process(const SystemSpec& spec, std::vector<PassedItem> qp) {
    sort_unique(qp);
    ProcessSpec p;
    p.kind = ProcessKind::Custom;
    p.quota.stored = derived_stored(spec, qp);
    std::string items;
    for (const auto& i : qp) items += (items.empty() ? "" : ",") + format_item(spec.symbols, i);
    p.quota.name = "PR{" + items + "}";
    p.quota.passed = std::move(qp);
    return p;
}

std::optional<SequentialWitness> is_sequential(const SystemSpec&,
                                               std::span<const PassedItem> qp) {
    SequentialWitness w;
    if (qp.empty()) return w;  // vacuously sequential, no specific witness

    bool same_tag = true, same_dest = true;
    for (const auto& p : qp) {
        if (p.tag != qp.front().tag) same_tag = false;
        if (p.destination != qp.front().destination) same_dest = false;
    }
    if (!same_tag && !same_dest) return std::nullopt;
    if (same_tag) w.tag = qp.front().tag;
    if (same_dest) w.label = qp.front().destination;
    return w;
}

bool is_sequential_oracle(const SystemSpec& spec, std::span<const PassedItem> qp,
                          const OracleBudget& budget) {
    std::map<Tag, std::vector<const PassedItem*>> by_tag;
    for (const auto& p : qp) by_tag[p.tag].push_back(&p);

    double combos = 1.0;
    for (const auto& [t, g] : by_tag) combos *= double(g.size() + 1);
    if (combos > budget.max_component_configs)
        throw UniverseTooLargeError("component configuration space too large to enumerate");

    // A pending item towards a label only occurs in configurations where the
    // node exists, which needs some stored item at that label.
    auto stocked = [&](Label l) { return !stored_at(spec, l).empty(); };

    std::vector<std::vector<const PassedItem*>> groups;
    for (auto& [t, g] : by_tag) groups.push_back(std::move(g));
    std::vector<std::size_t> odo(groups.size(), 0);

    for (;;) {
        std::vector<Label> dests;
        bool realizable = true;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            if (odo[i] == 0) continue;
            Label l = groups[i][odo[i] - 1]->destination;
            if (!stocked(l)) {
                realizable = false;
                break;
            }
            dests.push_back(l);
        }
        if (realizable) {
            sort_unique(dests);
            if (dests.size() > 1) return false;
        }

        std::size_t i = 0;
        for (; i < odo.size(); ++i) {
            if (odo[i] < groups[i].size()) {
                ++odo[i];
                break;
            }
            odo[i] = 0;
        }
        if (i == odo.size()) break;
    }
    return true;
}

bool process_less(const SystemSpec& spec, const ProcessSpec& a, const ProcessSpec& b) {
    std::vector<PassedItem> joint = a.quota.passed;
    joint.insert(joint.end(), b.quota.passed.begin(), b.quota.passed.end());
    sort_unique(joint);
    if (!is_sequential(spec, joint))
        throw IncompatibleError("processes '" + a.quota.name + "' and '" + b.quota.name +
                                "' are not in one tag- or label-oriented class");
    const auto& pa = a.quota.passed;
    const auto& pb = b.quota.passed;
    return pa.size() < pb.size() &&
           std::includes(pb.begin(), pb.end(), pa.begin(), pa.end());
}

ProcessSpec traveler_process(const SystemSpec& spec, Tag t) {
    ProcessSpec p;
    p.kind = ProcessKind::Traveler;
    p.tag = t;
    p.quota.name = "TR_" + spec.symbols.name(t);
    p.quota.passed = passed_with_tag(spec, t);
    p.quota.stored = spec.stored_universe;  // a traveler may act on any node
    p.quota.passed_tag = t;
    p.quota.stored_all = true;
    return p;
}

ProcessSpec resident_process(const SystemSpec& spec, Label l) {
    ProcessSpec p;
    p.kind = ProcessKind::Resident;
    p.label = l;
    p.quota.name = "RE_" + spec.symbols.name(l);
    p.quota.passed = passed_to(spec, l);
    p.quota.stored = stored_at(spec, l);
    p.quota.passed_label = l;
    p.quota.stored_label = l;
    return p;
}

ProcessSpec class_maximum(const SystemSpec& spec, Tag t) { return traveler_process(spec, t); }
ProcessSpec class_maximum(const SystemSpec& spec, Label l) { return resident_process(spec, l); }

Decomposition canonical_decomposition(const SystemSpec& spec, ProcessKind mode) {
    Decomposition d;
    if (mode == ProcessKind::Traveler) {
        std::vector<Tag> tags;
        for (const auto& p : spec.passed_universe) tags.push_back(p.tag);
        sort_unique(tags);
        for (Tag t : tags) d.quotas.push_back(traveler_process(spec, t).quota);
    } else if (mode == ProcessKind::Resident) {
        std::vector<Label> labels;
        for (const auto& p : spec.passed_universe) labels.push_back(p.destination);
        for (const auto& s : spec.stored_universe) labels.push_back(s.location);
        sort_unique(labels);
        for (Label l : labels) d.quotas.push_back(resident_process(spec, l).quota);
    } else {
        throw IncompatibleError("canonical decomposition requires traveler or resident mode");
    }
    return d;
}

}  // namespace imds
