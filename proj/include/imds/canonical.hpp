#pragma once

#include "imds/decomposition.hpp"
#include "imds/model.hpp"

#include <optional>
#include <span>

namespace imds {

enum class ProcessKind { Traveler, Resident, Custom };

struct ProcessSpec {
    ProcessKind kind = ProcessKind::Custom;
    std::optional<Tag> tag;      // travelers
    std::optional<Label> label;  // residents
    Quota quota;
};

// Quota equation: the stored quota equals the union of the stored item
// classes at the destinations of its passed quota.
bool is_async_process(const SystemSpec&, const Quota&);

struct OracleBudget {
    double max_component_configs = 4e6;
};

// Definitional check by enumeration of the component configurations the
// quota can exhibit across all valid system configurations over the model's
// universe. Exponential; intended as the independent reference for
// is_async_process on small inputs.
bool is_async_process_oracle(const SystemSpec&, const Quota&, const OracleBudget& = {});

// The asynchronous process generated by a passed item quota: its stored
// quota is derived from the destinations.
ProcessSpec make_process(const SystemSpec&, std::vector<PassedItem> passed_quota);

struct SequentialWitness {
    std::optional<Tag> tag;
    std::optional<Label> label;
};

// A process is sequential when all its passed items share one tag or one
// destination; the engaged result names the witnesses that apply.
std::optional<SequentialWitness> is_sequential(const SystemSpec&,
                                               std::span<const PassedItem> passed_quota);

// Definitional check: no reachable component configuration holds pending
// passed items addressed at two different nodes.
bool is_sequential_oracle(const SystemSpec&, std::span<const PassedItem> passed_quota,
                          const OracleBudget& = {});

// Strict containment of passed quotas; both processes must sit in one
// tag-oriented or label-oriented class.
bool process_less(const SystemSpec&, const ProcessSpec&, const ProcessSpec&);

ProcessSpec traveler_process(const SystemSpec&, Tag);
ProcessSpec resident_process(const SystemSpec&, Label);

// Maximum of the tag-oriented (label-oriented) class: the traveler
// (resident) process.
ProcessSpec class_maximum(const SystemSpec&, Tag);
ProcessSpec class_maximum(const SystemSpec&, Label);

// ProcessKind::Traveler yields one component per tag occurring in the
// universe; ProcessKind::Resident one component per label.
Decomposition canonical_decomposition(const SystemSpec&, ProcessKind mode);

}  // namespace imds
