#include "imds/model.hpp"

#include "imds/errors.hpp"

#include <map>

namespace imds {

const PassedItem* Configuration::with_tag(Tag t) const {
    for (const auto& p : passed)
        if (p.tag == t) return &p;
    return nullptr;
}

const StoredItem* Configuration::at_location(Label l) const {
    for (const auto& s : stored)
        if (s.location == l) return &s;
    return nullptr;
}

std::vector<Item> Configuration::items() const {
    std::vector<Item> out;
    out.reserve(passed.size() + stored.size());
    for (const auto& p : passed) out.emplace_back(p);
    for (const auto& s : stored) out.emplace_back(s);
    return out;
}

bool normalize(Configuration& c) {
    sort_unique(c.passed);
    sort_unique(c.stored);
    for (std::size_t i = 1; i < c.passed.size(); ++i)
        if (c.passed[i].tag == c.passed[i - 1].tag) return false;
    for (std::size_t i = 1; i < c.stored.size(); ++i)
        if (c.stored[i].location == c.stored[i - 1].location) return false;
    return true;
}

bool configuration_valid(const Configuration& c) {
    for (const auto& p : c.passed)
        if (!c.at_location(p.destination)) return false;
    return true;
}

std::optional<std::size_t> ActionDef::continuation_stored_index() const {
    for (std::size_t i = 0; i < out_stored.size(); ++i)
        if (out_stored[i].location && *out_stored[i].location == in_stored.location) return i;
    return std::nullopt;
}

std::optional<std::size_t> ActionDef::continuation_passed_index() const {
    for (std::size_t i = 0; i < out_passed.size(); ++i)
        if (out_passed[i].tag && *out_passed[i].tag == in_passed.tag) return i;
    return std::nullopt;
}

bool ActionDef::has_fresh_outputs() const {
    for (const auto& s : out_stored)
        if (!s.location) return true;
    for (const auto& p : out_passed)
        if (!p.tag) return true;
    return false;
}

std::optional<ActionId> SystemSpec::find_action(std::string_view name) const {
    for (std::size_t i = 0; i < actions.size(); ++i)
        if (actions[i].name == name) return static_cast<ActionId>(i);
    return std::nullopt;
}

void SystemSpec::rebuild_universe() {
    passed_universe.clear();
    stored_universe.clear();
    for (const auto& p : initial.passed) passed_universe.push_back(p);
    for (const auto& s : initial.stored) stored_universe.push_back(s);
    for (const auto& a : actions) {
        passed_universe.push_back(a.in_passed);
        stored_universe.push_back(a.in_stored);
        for (const auto& o : a.out_stored)
            if (o.location) stored_universe.push_back({*o.location, o.resource});
        for (const auto& o : a.out_passed)
            if (o.tag) passed_universe.push_back({*o.tag, o.destination, o.service});
    }
    sort_unique(passed_universe);
    sort_unique(stored_universe);
}

std::vector<PassedItem> passed_with_tag(const SystemSpec& spec, Tag t) {
    std::vector<PassedItem> out;
    for (const auto& p : spec.passed_universe)
        if (p.tag == t) out.push_back(p);
    return out;
}

std::vector<PassedItem> passed_to(const SystemSpec& spec, Label l) {
    std::vector<PassedItem> out;
    for (const auto& p : spec.passed_universe)
        if (p.destination == l) out.push_back(p);
    return out;
}

std::vector<StoredItem> stored_at(const SystemSpec& spec, Label l) {
    std::vector<StoredItem> out;
    for (const auto& s : spec.stored_universe)
        if (s.location == l) out.push_back(s);
    return out;
}

std::vector<Tag> pending_tags(const Configuration& c) {
    std::vector<Tag> out;
    for (const auto& p : c.passed) out.push_back(p.tag);
    sort_unique(out);
    return out;
}

std::vector<Label> present_labels(const Configuration& c) {
    std::vector<Label> out;
    for (const auto& p : c.passed) out.push_back(p.destination);
    for (const auto& s : c.stored) out.push_back(s.location);
    sort_unique(out);
    return out;
}

Tag allocate_pool_tag(const SystemSpec& spec, const std::vector<Tag>& live,
                      std::vector<Tag>& used) {
    for (Tag t : spec.pool.tags) {
        if (sorted_contains(live, t)) continue;
        if (std::find(used.begin(), used.end(), t) != used.end()) continue;
        used.push_back(t);
        return t;
    }
    throw PoolExhaustedError("fresh tag pool exhausted", true);
}

Label allocate_pool_label(const SystemSpec& spec, const std::vector<Label>& live,
                          std::vector<Label>& used) {
    for (Label l : spec.pool.labels) {
        if (sorted_contains(live, l)) continue;
        if (std::find(used.begin(), used.end(), l) != used.end()) continue;
        used.push_back(l);
        return l;
    }
    throw PoolExhaustedError("fresh label pool exhausted", false);
}

std::vector<Item> item_class(const SystemSpec& spec, ItemClass cls, std::string_view key) {
    std::vector<Item> out;
    switch (cls) {
        case ItemClass::PassedByTag: {
            auto t = spec.symbols.find_tag(key);
            if (!t) throw ResolveError("unknown tag '" + std::string(key) + "'");
            for (const auto& p : passed_with_tag(spec, *t)) out.emplace_back(p);
            break;
        }
        case ItemClass::PassedByDestination: {
            auto l = spec.symbols.find_label(key);
            if (!l) throw ResolveError("unknown label '" + std::string(key) + "'");
            for (const auto& p : passed_to(spec, *l)) out.emplace_back(p);
            break;
        }
        case ItemClass::StoredByLocation: {
            auto l = spec.symbols.find_label(key);
            if (!l) throw ResolveError("unknown label '" + std::string(key) + "'");
            for (const auto& s : stored_at(spec, *l)) out.emplace_back(s);
            break;
        }
    }
    return out;
}

const char* violation_name(Violation v) {
    switch (v) {
        case Violation::DuplicateActionInput: return "duplicate-action-input";
        case Violation::InputsNotColocated: return "inputs-not-colocated";
        case Violation::ContinuationStoredCount: return "continuation-stored-count";
        case Violation::ContinuationPassedCount: return "continuation-passed-count";
        case Violation::NonFreshOutputTag: return "non-fresh-output-tag";
        case Violation::NonFreshOutputLocation: return "non-fresh-output-location";
        case Violation::OutputCollision: return "output-collision";
        case Violation::InitialShape: return "initial-shape";
        case Violation::InitialUnrouted: return "initial-unrouted";
    }
    return "?";
}

namespace {

void check_action(const SymbolTable& sym, const ActionDef& a, std::vector<Diagnostic>& out) {
    auto report = [&](Violation v, std::string msg) {
        out.push_back({a.name, v, std::move(msg)});
    };

    if (a.in_passed.destination != a.in_stored.location)
        report(Violation::InputsNotColocated,
               "passed input is directed at '" + sym.name(a.in_passed.destination) +
                   "' but the stored input is located at '" + sym.name(a.in_stored.location) +
                   "'");

    std::size_t continuation_stored = 0;
    for (const auto& o : a.out_stored) {
        if (!o.location) continue;
        if (*o.location == a.in_stored.location)
            ++continuation_stored;
        else
            report(Violation::NonFreshOutputLocation,
                   "stored output at '" + sym.name(*o.location) +
                       "' is neither the continuation nor a fresh node");
    }
    if (continuation_stored != 1)
        report(Violation::ContinuationStoredCount,
               "expected exactly one stored output at '" + sym.name(a.in_stored.location) +
                   "', found " + std::to_string(continuation_stored));

    std::size_t continuation_passed = 0;
    for (const auto& o : a.out_passed) {
        if (!o.tag) continue;
        if (*o.tag == a.in_passed.tag)
            ++continuation_passed;
        else
            report(Violation::NonFreshOutputTag,
                   "passed output under tag '" + sym.name(*o.tag) +
                       "' is neither the continuation nor a fresh branch");
    }
    if (continuation_passed > 1)
        report(Violation::ContinuationPassedCount,
               "more than one passed output carries the input tag '" +
                   sym.name(a.in_passed.tag) + "'");

    // Concrete outputs must form a valid item set on their own; fresh
    // placeholders always instantiate to distinct new names.
    std::vector<Tag> tags;
    for (const auto& o : a.out_passed)
        if (o.tag) tags.push_back(*o.tag);
    std::sort(tags.begin(), tags.end());
    for (std::size_t i = 1; i < tags.size(); ++i)
        if (tags[i] == tags[i - 1]) {
            report(Violation::OutputCollision,
                   "two passed outputs share the tag '" + sym.name(tags[i]) + "'");
            break;
        }
    std::vector<Label> locs;
    for (const auto& o : a.out_stored)
        if (o.location) locs.push_back(*o.location);
    std::sort(locs.begin(), locs.end());
    for (std::size_t i = 1; i < locs.size(); ++i)
        if (locs[i] == locs[i - 1]) {
            report(Violation::OutputCollision,
                   "two stored outputs share the location '" + sym.name(locs[i]) + "'");
            break;
        }
}

}  // namespace

std::vector<Diagnostic> validate_system(const SystemSpec& spec) {
    std::vector<Diagnostic> out;
    const auto& sym = spec.symbols;

    std::map<std::pair<PassedItem, StoredItem>, std::string> inputs_seen;
    for (const auto& a : spec.actions) {
        check_action(sym, a, out);
        auto key = std::make_pair(a.in_passed, a.in_stored);
        auto [it, inserted] = inputs_seen.emplace(key, a.name);
        if (!inserted)
            out.push_back({a.name, Violation::DuplicateActionInput,
                           "consumes the same input pair as action '" + it->second + "'"});
    }

    Configuration init = spec.initial;
    if (!normalize(init))
        out.push_back({"", Violation::InitialShape,
                       "initial configuration repeats a tag or a location"});
    for (const auto& p : init.passed)
        if (!init.at_location(p.destination))
            out.push_back({"", Violation::InitialUnrouted,
                           "initial passed item '" + format_item(sym, p) +
                               "' is directed at a node with no stored item"});
    return out;
}

}  // namespace imds
