#pragma once

#include "imds/lts.hpp"
#include "imds/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace imds {

// A component's share of the item universe. The extensional sets are always
// materialized over the model's universe; the optional patterns additionally
// absorb items created at runtime (fresh tags joining a destination-based
// quota, fresh stored items joining an "all stored" quota, and so on).
struct Quota {
    std::string name;
    std::vector<PassedItem> passed;  // sorted unique
    std::vector<StoredItem> stored;  // sorted unique

    std::optional<Tag> passed_tag;      // every passed item with this tag
    std::optional<Label> passed_label;  // every passed item with this destination
    std::optional<Label> stored_label;  // every stored item at this location
    bool stored_all = false;            // every stored item

    bool contains(const PassedItem&) const;
    bool contains(const StoredItem&) const;
    bool contains(const Item&) const;

    friend bool operator==(const Quota&, const Quota&) = default;
};

struct Decomposition {
    std::vector<Quota> quotas;
    const Quota* find(std::string_view name) const;
};

// The component view of a configuration: plain intersection with the quota.
Configuration project_config(const Configuration&, const Quota&);

struct ActionShare {
    std::vector<Item> inputs;
    std::vector<Item> outputs;
    bool participant = false;  // at least one side is non-empty
};

ActionShare project_action(const ActionDef&, const Quota&);
ActionShare project_action(const FiredAction&, const Quota&);

// Components are composable when their passed quotas cannot claim the same
// item; stored quotas may overlap freely.
bool composable(const Quota&, const Quota&);
Quota merge(const Quota&, const Quota&);  // throws IncompatibleError when not composable

struct DecompositionCheck {
    bool ok = false;
    std::vector<std::string> diagnostics;
};

// Passed quotas must partition the model's passed items; stored quotas must
// jointly cover the model's stored items.
DecompositionCheck is_decomposition(const SystemSpec&, const Decomposition&);

enum class CommForm { Synchronous, Passing, Sharing };
enum class CommScope { Internal, External };

const char* comm_form_name(CommForm);
const char* comm_scope_name(CommScope);

struct CommEvent {
    std::string action;
    CommForm form;
    std::optional<Item> item;  // absent for synchronous events
    std::string from_quota;
    std::string to_quota;
    CommScope scope;
};

struct ClassifyResult {
    std::vector<CommEvent> events;       // deterministic order
    std::vector<std::string> uncovered;  // output items no quota takes over
};

// Communication forms of one action under a decomposition. Synchronous
// events pair a component delivering only the passed input with one
// delivering only the stored input. Asynchronous events flow from the
// component owning the passed input (the partition makes it unique) to every
// component taking over an output item; passing for passed outputs, sharing
// for stored ones. An event is internal when both ends are the same quota.
ClassifyResult classify(const SystemSpec&, const ActionDef&, const Decomposition&);
ClassifyResult classify(const SystemSpec&, const FiredAction&, const Decomposition&);

}  // namespace imds
