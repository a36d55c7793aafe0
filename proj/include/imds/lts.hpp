#pragma once

#include "imds/model.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace imds {

// One firing with its fresh placeholders resolved to concrete pool names.
struct FiredAction {
    ActionId action = 0;
    std::string name;
    PassedItem in_passed;
    StoredItem in_stored;
    std::vector<StoredItem> out_stored;
    std::vector<PassedItem> out_passed;
    std::vector<std::pair<std::size_t, Tag>> fresh_tags;      // out_passed index -> pool tag
    std::vector<std::pair<std::size_t, Label>> fresh_labels;  // out_stored index -> pool label
};

struct Transition {
    Configuration source;
    std::vector<FiredAction> fired;  // ascending action id, pairwise node-disjoint
    Configuration target;
    std::size_t step_index = 0;
};

struct Policy {
    enum class Kind { Interleaving, MaxConcurrency, Intermediate };
    Kind kind = Kind::Interleaving;
    unsigned k = 1;  // Intermediate only: how many nodes fire per step
    std::uint64_t seed = 0;
};

// Actions whose both input items are present in the configuration.
std::vector<ActionId> prepared(const SystemSpec&, const Configuration&);

std::pair<Configuration, FiredAction> fire(const SystemSpec&, const Configuration&, ActionId);

// Fires a node-disjoint set of prepared actions as one simultaneous step.
Transition fire_all(const SystemSpec&, const Configuration&, std::span<const ActionId>);

std::map<Label, std::vector<ActionId>> group_by_node(const SystemSpec&,
                                                     std::span<const ActionId>);

// Selects the action set of one step. Draw order is fixed (nodes in
// ascending label order, actions in ascending id order) so the seed fully
// determines the outcome.
std::vector<ActionId> choose_step(const std::map<Label, std::vector<ActionId>>& by_node,
                                  const Policy&, std::mt19937_64& rng);

Transition step(const SystemSpec&, const Configuration&, const Policy&, std::mt19937_64& rng);

// Repeats step until nothing is prepared or the step budget is spent.
std::vector<Transition> run(const SystemSpec&, const Policy&, std::size_t max_steps);

struct ReachBounds {
    std::size_t max_states = 100000;
};

struct ReachGraph {
    struct Edge {
        std::uint32_t source = 0;
        std::uint32_t target = 0;
        ActionId action = 0;
    };
    std::vector<Configuration> states;    // breadth-first discovery order; 0 = initial
    std::vector<Edge> edges;              // grouped by source, ascending action id
    std::vector<std::uint32_t> terminal;  // states with no prepared action
    bool truncated = false;

    std::optional<std::uint32_t> find_state(const Configuration&) const;
};

// Breadth-first closure of single-action firings from the initial
// configuration. Concurrency policies only schedule firings, they do not
// change which firings are reachable, so edges carry one action each.
ReachGraph reach(const SystemSpec&, const ReachBounds& = {});

}  // namespace imds
