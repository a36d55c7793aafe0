#pragma once

#include "imds/lts.hpp"
#include "imds/model.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace imds {

using PlaceId = std::uint32_t;
using TransitionId = std::uint32_t;  // numerically equal to the ActionId it interprets

// Item/action interpretation as a place/transition net. Places exist for the
// model's universe up front; items instantiated from the fresh pools get
// their places on demand, so the net can grow during a run.
class PetriNet {
public:
    struct NetTransition {
        ActionId action = 0;
        PlaceId in_passed = 0;
        PlaceId in_stored = 0;
        std::vector<PlaceId> out;  // concrete outputs, resolved at build time
    };

    explicit PetriNet(const SystemSpec& spec);

    const SystemSpec& spec() const { return *spec_; }
    const std::vector<Item>& places() const { return places_; }
    const std::vector<NetTransition>& transitions() const { return transitions_; }

    std::optional<PlaceId> find_place(const Item&) const;
    PlaceId ensure_place(const Item&);
    std::size_t arc_count() const;

private:
    const SystemSpec* spec_;
    std::vector<Item> places_;
    std::map<Item, PlaceId> index_;
    std::vector<NetTransition> transitions_;
};

// Token counts per place, index-aligned with the net; shorter vectors are
// implicitly zero-padded since the net may have grown after the marking was
// made.
struct Marking {
    std::vector<std::uint8_t> tokens;

    std::uint8_t count(PlaceId p) const { return p < tokens.size() ? tokens[p] : 0; }
    void add(PlaceId p, std::uint8_t n = 1);
    void remove(PlaceId p);
};

bool same_marking(const Marking&, const Marking&);

Marking marking_of(const PetriNet&, const Configuration&);
Configuration configuration_of(const PetriNet&, const Marking&);

std::vector<TransitionId> enabled(const PetriNet&, const Marking&);

// Liveness snapshot for fresh-name instantiation; lets the firings of one
// simultaneous step allocate against the step's source state.
struct FreshContext {
    std::vector<Tag> live_tags;
    std::vector<Label> live_labels;
    std::vector<Tag> used_tags;
    std::vector<Label> used_labels;
};

// Plain token game step. Fresh outputs are instantiated exactly like the
// configuration-level firing rule; when ctx is null the current marking
// provides the liveness snapshot.
Marking fire_transition(PetriNet&, const Marking&, TransitionId, FreshContext* ctx = nullptr);

struct SafetyBounds {
    std::size_t max_markings = 100000;
};

struct SafetyReport {
    bool safe = true;  // no reachable marking puts two tokens on a place
    std::vector<std::string> unsafe_places;
    std::size_t max_live_tags = 0;
    std::size_t max_live_locations = 0;
    bool tag_growth = false;  // some run wants more tag names than the pool holds
    bool label_growth = false;
    std::size_t markings_explored = 0;
    bool truncated = false;
};

SafetyReport check_safe(const SystemSpec&, const SafetyBounds& = {});

// Token colors: one family follows tags across passed items, the other
// follows locations across stored items. Released indices are reused
// first-in-first-out, so a lifetime ordinal keeps distinct uses of one index
// apart.
struct ColorRef {
    enum class Class : std::uint8_t { Passed, Stored };
    Class cls = Class::Passed;
    std::uint32_t index = 0;     // 1-based
    std::uint32_t lifetime = 0;  // 0 on the first use of an index
    friend auto operator<=>(const ColorRef&, const ColorRef&) = default;
};

std::string format_color(const ColorRef&);

class ColorPool {
public:
    ColorRef acquire(ColorRef::Class cls);
    void release(const ColorRef&);

private:
    std::uint32_t next_[2] = {1, 1};
    std::deque<std::uint32_t> free_[2];
    std::vector<std::uint32_t> lifetimes_[2];
};

struct ColoredMarking {
    Marking marking;
    std::vector<std::optional<ColorRef>> colors;  // aligned with places

    std::optional<ColorRef> color(PlaceId p) const {
        return p < colors.size() ? colors[p] : std::nullopt;
    }
};

ColoredMarking initial_colored_marking(const PetriNet&, ColorPool&);

// String-level trace token: traces round-trip through text without needing
// the model at hand.
struct TokenRef {
    std::string item;
    bool passed = false;
    std::string first_component;  // tag name or location name
    ColorRef color;
};

struct ColoredFiring {
    std::size_t step = 0;
    std::string action;
    TokenRef in_passed;
    TokenRef in_stored;
    std::vector<TokenRef> produced;
    std::vector<ColorRef> acquired;
    std::vector<ColorRef> released;
};

struct ColoredTrace {
    std::vector<TokenRef> initial;
    std::vector<ColoredFiring> firings;
};

// One colored firing: continuation tokens keep their colors, fresh items
// draw pool colors, and a passed color with no continuation is released.
ColoredFiring colored_step(PetriNet&, ColoredMarking&, TransitionId, ColorPool&,
                           FreshContext* ctx = nullptr);

// Policy-driven colored run from the initial marking. Enabled transitions
// mirror prepared actions, so a given seed selects the same firings as the
// configuration-level run.
ColoredTrace run_colored(const SystemSpec&, const Policy&, std::size_t max_steps);

struct ExtractedProcess {
    bool traveler = false;
    ColorRef color;
    std::string tracked;  // tag name (travelers) or location name (residents)
    bool static_start = true;
    std::size_t start_step = 0;                  // meaningful when not static
    std::optional<std::size_t> terminated_step;  // travelers whose flow stopped
    std::vector<std::pair<std::size_t, std::string>> actions;  // (step, action)
};

// Splits a colored trace into one traveler per passed-color lifetime and one
// resident per stored-color lifetime; every firing lands in exactly one of
// each.
std::vector<ExtractedProcess> extract_processes(const ColoredTrace&);

}  // namespace imds
