#pragma once

#include "imds/items.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace imds {

// One system state: at most one passed item per tag and one stored item per
// location. Both parts are kept sorted so that equality and ordering are
// representation independent.
struct Configuration {
    std::vector<PassedItem> passed;
    std::vector<StoredItem> stored;

    friend auto operator<=>(const Configuration&, const Configuration&) = default;

    bool empty() const { return passed.empty() && stored.empty(); }
    bool contains(const PassedItem& p) const { return sorted_contains(passed, p); }
    bool contains(const StoredItem& s) const { return sorted_contains(stored, s); }
    const PassedItem* with_tag(Tag t) const;
    const StoredItem* at_location(Label l) const;
    std::vector<Item> items() const;
};

// Sorts and dedupes both parts; false when two distinct items share a tag or
// a location.
bool normalize(Configuration&);

// Every pending passed item is directed at a node that currently exists.
bool configuration_valid(const Configuration&);

// Stored output of an action. An empty location means "create a new node":
// a pool label is substituted when the action fires.
struct StoredOutput {
    std::optional<Label> location;
    Resource resource;
    friend bool operator==(const StoredOutput&, const StoredOutput&) = default;
};

// Passed output of an action. An empty tag means "branch a new thread of
// control" with a pool tag substituted at firing time.
struct PassedOutput {
    std::optional<Tag> tag;
    Label destination;
    Service service;
    friend bool operator==(const PassedOutput&, const PassedOutput&) = default;
};

struct ActionDef {
    std::string name;
    PassedItem in_passed;
    StoredItem in_stored;
    std::vector<StoredOutput> out_stored;
    std::vector<PassedOutput> out_passed;

    friend bool operator==(const ActionDef&, const ActionDef&) = default;

    // The stored output at the input's location; carries the node forward.
    std::optional<std::size_t> continuation_stored_index() const;
    // The passed output with the input's tag, when the control flow goes on.
    std::optional<std::size_t> continuation_passed_index() const;
    bool has_fresh_outputs() const;
};

using ActionId = std::uint32_t;

struct FreshPool {
    std::vector<Tag> tags;
    std::vector<Label> labels;
    friend bool operator==(const FreshPool&, const FreshPool&) = default;
};

struct SystemSpec {
    SymbolTable symbols;
    std::vector<ActionDef> actions;
    Configuration initial;
    FreshPool pool;

    // Every concrete item the model mentions (action inputs and outputs plus
    // the initial configuration). Fresh instantiations are not included; they
    // join configurations only at runtime.
    std::vector<PassedItem> passed_universe;
    std::vector<StoredItem> stored_universe;

    friend bool operator==(const SystemSpec&, const SystemSpec&) = default;

    const ActionDef& action(ActionId id) const { return actions[id]; }
    std::optional<ActionId> find_action(std::string_view name) const;
    bool is_pool_tag(Tag t) const { return sorted_contains_pool(pool.tags, t); }
    bool is_pool_label(Label l) const { return sorted_contains_pool(pool.labels, l); }
    void rebuild_universe();

private:
    template <class T>
    static bool sorted_contains_pool(const std::vector<T>& v, const T& x) {
        return std::find(v.begin(), v.end(), x) != v.end();
    }
};

std::vector<PassedItem> passed_with_tag(const SystemSpec&, Tag);
std::vector<PassedItem> passed_to(const SystemSpec&, Label);
std::vector<StoredItem> stored_at(const SystemSpec&, Label);

std::vector<Tag> pending_tags(const Configuration&);
std::vector<Label> present_labels(const Configuration&);

// First pool name that is neither live nor already handed out in the current
// step; the name joins `used`.
Tag allocate_pool_tag(const SystemSpec&, const std::vector<Tag>& live, std::vector<Tag>& used);
Label allocate_pool_label(const SystemSpec&, const std::vector<Label>& live,
                          std::vector<Label>& used);

enum class ItemClass { PassedByTag, PassedByDestination, StoredByLocation };

// The named item classes over the model's universe; the key must resolve in
// the matching namespace.
std::vector<Item> item_class(const SystemSpec&, ItemClass, std::string_view key);

enum class Violation {
    DuplicateActionInput,     // two actions consume the same input pair
    InputsNotColocated,       // passed destination differs from stored location
    ContinuationStoredCount,  // not exactly one stored output at the input location
    ContinuationPassedCount,  // more than one passed output with the input tag
    NonFreshOutputTag,        // concrete passed output under a foreign tag
    NonFreshOutputLocation,   // concrete stored output at a foreign location
    OutputCollision,          // two outputs sharing a tag or a location
    InitialShape,             // duplicate tag or location in the initial configuration
    InitialUnrouted,          // initial passed item without a matching node
};

const char* violation_name(Violation);

struct Diagnostic {
    std::string action;  // empty for initial-configuration findings
    Violation code;
    std::string message;
};

// Checks every action and the initial configuration, collecting all
// violations instead of stopping at the first one.
std::vector<Diagnostic> validate_system(const SystemSpec&);

inline bool is_valid(const SystemSpec& s) { return validate_system(s).empty(); }

}  // namespace imds
