#include "imds/petri.hpp"

#include "imds/errors.hpp"

#include <random>

namespace imds {

PetriNet::PetriNet(const SystemSpec& spec) : spec_(&spec) {
    for (const auto& s : spec.stored_universe) ensure_place(Item(s));
    for (const auto& p : spec.passed_universe) ensure_place(Item(p));
    for (std::size_t i = 0; i < spec.actions.size(); ++i) {
        const auto& a = spec.actions[i];
        NetTransition t;
        t.action = static_cast<ActionId>(i);
        t.in_passed = *find_place(Item(a.in_passed));
        t.in_stored = *find_place(Item(a.in_stored));
        for (const auto& o : a.out_stored)
            if (o.location) t.out.push_back(*find_place(Item(StoredItem{*o.location, o.resource})));
        for (const auto& o : a.out_passed)
            if (o.tag)
                t.out.push_back(*find_place(Item(PassedItem{*o.tag, o.destination, o.service})));
        transitions_.push_back(std::move(t));
    }
}

std::optional<PlaceId> PetriNet::find_place(const Item& i) const {
    auto it = index_.find(i);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

PlaceId PetriNet::ensure_place(const Item& i) {
    auto it = index_.find(i);
    if (it != index_.end()) return it->second;
    auto id = static_cast<PlaceId>(places_.size());
    places_.push_back(i);
    index_.emplace(i, id);
    return id;
}

std::size_t PetriNet::arc_count() const {
    std::size_t n = 0;
    for (const auto& t : transitions_) n += 2 + t.out.size();
    // fresh outputs have no static arc; they appear as the net grows
    return n;
}

void Marking::add(PlaceId p, std::uint8_t n) {
    if (p >= tokens.size()) tokens.resize(p + 1, 0);
    tokens[p] = static_cast<std::uint8_t>(tokens[p] + n);
}

void Marking::remove(PlaceId p) {
    if (p >= tokens.size() || tokens[p] == 0) throw ModelError("removing a token from an empty place");
    --tokens[p];
}

bool same_marking(const Marking& a, const Marking& b) {
    std::size_t n = std::max(a.tokens.size(), b.tokens.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.count(static_cast<PlaceId>(i)) != b.count(static_cast<PlaceId>(i))) return false;
    return true;
}

Marking marking_of(const PetriNet& net, const Configuration& c) {
    Marking m;
    m.tokens.assign(net.places().size(), 0);
    for (const auto& p : c.passed) {
        auto place = net.find_place(Item(p));
        if (!place) throw ModelError("configuration item has no place in the net");
        m.add(*place);
    }
    for (const auto& s : c.stored) {
        auto place = net.find_place(Item(s));
        if (!place) throw ModelError("configuration item has no place in the net");
        m.add(*place);
    }
    return m;
}

Configuration configuration_of(const PetriNet& net, const Marking& m) {
    Configuration c;
    for (std::size_t i = 0; i < net.places().size(); ++i) {
        if (m.count(static_cast<PlaceId>(i)) == 0) continue;
        const Item& item = net.places()[i];
        if (auto* p = std::get_if<PassedItem>(&item))
            c.passed.push_back(*p);
        else
            c.stored.push_back(std::get<StoredItem>(item));
    }
    normalize(c);
    return c;
}

std::vector<TransitionId> enabled(const PetriNet& net, const Marking& m) {
    std::vector<TransitionId> out;
    for (std::size_t i = 0; i < net.transitions().size(); ++i) {
        const auto& t = net.transitions()[i];
        if (m.count(t.in_passed) > 0 && m.count(t.in_stored) > 0)
            out.push_back(static_cast<TransitionId>(i));
    }
    return out;
}

namespace {

FreshContext context_of(const PetriNet& net, const Marking& m) {
    FreshContext ctx;
    Configuration c = configuration_of(net, m);
    ctx.live_tags = pending_tags(c);
    ctx.live_labels = present_labels(c);
    return ctx;
}

}  // namespace

Marking fire_transition(PetriNet& net, const Marking& m, TransitionId tid, FreshContext* ctx) {
    const auto& t = net.transitions()[tid];
    const auto& a = net.spec().action(t.action);
    if (m.count(t.in_passed) == 0 || m.count(t.in_stored) == 0)
        throw NotPreparedError("transition '" + a.name + "' is not enabled");

    FreshContext local;
    if (!ctx) {
        local = context_of(net, m);
        ctx = &local;
    }

    Marking next = m;
    next.remove(t.in_passed);
    next.remove(t.in_stored);
    for (PlaceId out : t.out) next.add(out);
    for (const auto& o : a.out_stored) {
        if (o.location) continue;
        Label l = allocate_pool_label(net.spec(), ctx->live_labels, ctx->used_labels);
        next.add(net.ensure_place(Item(StoredItem{l, o.resource})));
    }
    for (const auto& o : a.out_passed) {
        if (o.tag) continue;
        Tag tg = allocate_pool_tag(net.spec(), ctx->live_tags, ctx->used_tags);
        next.add(net.ensure_place(Item(PassedItem{tg, o.destination, o.service})));
    }
    return next;
}

namespace {

std::vector<std::uint8_t> trimmed(const Marking& m) {
    std::vector<std::uint8_t> key = m.tokens;
    while (!key.empty() && key.back() == 0) key.pop_back();
    return key;
}

}  // namespace

SafetyReport check_safe(const SystemSpec& spec, const SafetyBounds& bounds) {
    SafetyReport report;
    PetriNet net(spec);
    Marking m0 = marking_of(net, spec.initial);

    std::map<std::vector<std::uint8_t>, std::uint32_t> seen;
    std::deque<Marking> frontier;
    seen.emplace(trimmed(m0), 0);
    frontier.push_back(std::move(m0));

    while (!frontier.empty()) {
        Marking m = std::move(frontier.front());
        frontier.pop_front();
        ++report.markings_explored;

        std::size_t tags = 0, locations = 0;
        {
            Configuration c = configuration_of(net, m);
            tags = pending_tags(c).size();
            locations = present_labels(c).size();
        }
        report.max_live_tags = std::max(report.max_live_tags, tags);
        report.max_live_locations = std::max(report.max_live_locations, locations);

        for (TransitionId t : enabled(net, m)) {
            Marking next;
            try {
                next = fire_transition(net, m, t);
            } catch (const PoolExhaustedError& e) {
                (e.tag_pool ? report.tag_growth : report.label_growth) = true;
                continue;
            }
            bool unsafe_here = false;
            for (std::size_t i = 0; i < next.tokens.size(); ++i) {
                if (next.tokens[i] > 1) {
                    unsafe_here = true;
                    report.safe = false;
                    report.unsafe_places.push_back(
                        format_item(spec.symbols, net.places()[i]));
                }
            }
            if (unsafe_here) continue;  // do not wander through broken markings
            auto key = trimmed(next);
            if (seen.count(key)) continue;
            if (seen.size() >= bounds.max_markings) {
                report.truncated = true;
                continue;
            }
            seen.emplace(std::move(key), static_cast<std::uint32_t>(seen.size()));
            frontier.push_back(std::move(next));
        }
    }
    sort_unique(report.unsafe_places);
    return report;
}

std::string format_color(const ColorRef& c) {
    return std::string(c.cls == ColorRef::Class::Passed ? "ct" : "cl") +
           std::to_string(c.index) + "." + std::to_string(c.lifetime);
}

ColorRef ColorPool::acquire(ColorRef::Class cls) {
    auto k = static_cast<std::size_t>(cls);
    ColorRef ref;
    ref.cls = cls;
    if (!free_[k].empty()) {
        ref.index = free_[k].front();
        free_[k].pop_front();
        ref.lifetime = ++lifetimes_[k][ref.index - 1];
    } else {
        ref.index = next_[k]++;
        lifetimes_[k].push_back(0);
        ref.lifetime = 0;
    }
    return ref;
}

void ColorPool::release(const ColorRef& c) {
    free_[static_cast<std::size_t>(c.cls)].push_back(c.index);
}

ColoredMarking initial_colored_marking(const PetriNet& net, ColorPool& pool) {
    const auto& spec = net.spec();
    ColoredMarking cm;
    cm.marking = marking_of(net, spec.initial);
    cm.colors.assign(net.places().size(), std::nullopt);

    std::map<Tag, ColorRef> tag_colors;
    for (const auto& p : spec.initial.passed)
        if (!tag_colors.count(p.tag)) tag_colors.emplace(p.tag, pool.acquire(ColorRef::Class::Passed));
    std::map<Label, ColorRef> loc_colors;
    for (const auto& s : spec.initial.stored)
        if (!loc_colors.count(s.location))
            loc_colors.emplace(s.location, pool.acquire(ColorRef::Class::Stored));

    for (const auto& p : spec.initial.passed)
        cm.colors[*net.find_place(Item(p))] = tag_colors.at(p.tag);
    for (const auto& s : spec.initial.stored)
        cm.colors[*net.find_place(Item(s))] = loc_colors.at(s.location);
    return cm;
}

namespace {

TokenRef token_ref(const SymbolTable& sym, const Item& item, const ColorRef& color) {
    TokenRef t;
    t.item = format_item(sym, item);
    t.passed = is_passed(item);
    if (auto* p = std::get_if<PassedItem>(&item))
        t.first_component = sym.name(p->tag);
    else
        t.first_component = sym.name(std::get<StoredItem>(item).location);
    t.color = color;
    return t;
}

void place_token(ColoredMarking& cm, PlaceId p, const ColorRef& color) {
    if (cm.marking.count(p) > 0) throw ModelError("colored firing doubled a token");
    cm.marking.add(p);
    if (cm.colors.size() < cm.marking.tokens.size()) cm.colors.resize(cm.marking.tokens.size());
    cm.colors[p] = color;
}

}  // namespace

ColoredFiring colored_step(PetriNet& net, ColoredMarking& cm, TransitionId tid, ColorPool& pool,
                           FreshContext* ctx) {
    const auto& t = net.transitions()[tid];
    const auto& a = net.spec().action(t.action);
    const auto& sym = net.spec().symbols;
    if (cm.marking.count(t.in_passed) == 0 || cm.marking.count(t.in_stored) == 0)
        throw NotPreparedError("transition '" + a.name + "' is not enabled");

    FreshContext local;
    if (!ctx) {
        local = context_of(net, cm.marking);
        ctx = &local;
    }

    ColoredFiring rec;
    rec.action = a.name;
    ColorRef pcol = *cm.color(t.in_passed);
    ColorRef scol = *cm.color(t.in_stored);
    rec.in_passed = token_ref(sym, net.places()[t.in_passed], pcol);
    rec.in_stored = token_ref(sym, net.places()[t.in_stored], scol);

    cm.marking.remove(t.in_passed);
    cm.colors[t.in_passed].reset();
    cm.marking.remove(t.in_stored);
    cm.colors[t.in_stored].reset();

    auto cont_stored = a.continuation_stored_index();
    auto cont_passed = a.continuation_passed_index();

    for (std::size_t i = 0; i < a.out_stored.size(); ++i) {
        const auto& o = a.out_stored[i];
        Item item;
        ColorRef color;
        if (o.location) {
            item = StoredItem{*o.location, o.resource};
            if (cont_stored && *cont_stored == i) {
                color = scol;  // the node carries on under its color
            } else {
                color = pool.acquire(ColorRef::Class::Stored);
                rec.acquired.push_back(color);
            }
        } else {
            Label l = allocate_pool_label(net.spec(), ctx->live_labels, ctx->used_labels);
            item = StoredItem{l, o.resource};
            color = pool.acquire(ColorRef::Class::Stored);
            rec.acquired.push_back(color);
        }
        place_token(cm, net.ensure_place(item), color);
        rec.produced.push_back(token_ref(sym, item, color));
    }
    for (std::size_t i = 0; i < a.out_passed.size(); ++i) {
        const auto& o = a.out_passed[i];
        Item item;
        ColorRef color;
        if (o.tag) {
            item = PassedItem{*o.tag, o.destination, o.service};
            if (cont_passed && *cont_passed == i) {
                color = pcol;  // control flow continues under the input color
            } else {
                color = pool.acquire(ColorRef::Class::Passed);
                rec.acquired.push_back(color);
            }
        } else {
            Tag tg = allocate_pool_tag(net.spec(), ctx->live_tags, ctx->used_tags);
            item = PassedItem{tg, o.destination, o.service};
            color = pool.acquire(ColorRef::Class::Passed);
            rec.acquired.push_back(color);
        }
        place_token(cm, net.ensure_place(item), color);
        rec.produced.push_back(token_ref(sym, item, color));
    }

    if (!cont_passed) {
        pool.release(pcol);  // the matter identified by the input tag ends here
        rec.released.push_back(pcol);
    }

    std::sort(rec.produced.begin(), rec.produced.end(),
              [](const TokenRef& x, const TokenRef& y) { return x.item < y.item; });
    std::sort(rec.acquired.begin(), rec.acquired.end());
    std::sort(rec.released.begin(), rec.released.end());
    return rec;
}

ColoredTrace run_colored(const SystemSpec& spec, const Policy& policy, std::size_t max_steps) {
    PetriNet net(spec);
    ColorPool pool;
    ColoredMarking cm = initial_colored_marking(net, pool);
    std::mt19937_64 rng(policy.seed);

    ColoredTrace trace;
    for (std::size_t i = 0; i < net.places().size(); ++i) {
        if (cm.marking.count(static_cast<PlaceId>(i)) == 0) continue;
        trace.initial.push_back(
            token_ref(spec.symbols, net.places()[i], *cm.colors[i]));
    }
    std::sort(trace.initial.begin(), trace.initial.end(),
              [](const TokenRef& a, const TokenRef& b) { return a.item < b.item; });

    for (std::size_t step_no = 1; step_no <= max_steps; ++step_no) {
        auto ready = enabled(net, cm.marking);
        if (ready.empty()) break;
        // transition ids equal action ids, so the scheduler is shared with
        // the configuration-level engine
        auto by_node = group_by_node(spec, std::span<const ActionId>(ready.data(), ready.size()));
        auto chosen = choose_step(by_node, policy, rng);

        FreshContext ctx = context_of(net, cm.marking);
        for (ActionId id : chosen) {
            ColoredFiring rec = colored_step(net, cm, id, pool, &ctx);
            rec.step = step_no;
            trace.firings.push_back(std::move(rec));
        }
    }
    return trace;
}

std::vector<ExtractedProcess> extract_processes(const ColoredTrace& trace) {
    std::map<ColorRef, ExtractedProcess> procs;

    auto open_process = [&](const TokenRef& token, bool is_static, std::size_t step) {
        auto [it, inserted] = procs.try_emplace(token.color);
        if (!inserted) return;
        auto& p = it->second;
        p.traveler = token.color.cls == ColorRef::Class::Passed;
        p.color = token.color;
        p.tracked = token.first_component;
        p.static_start = is_static;
        p.start_step = step;
    };

    for (const auto& token : trace.initial) open_process(token, true, 0);

    for (const auto& f : trace.firings) {
        for (const ColorRef& c : f.acquired)
            for (const auto& token : f.produced)
                if (token.color == c) open_process(token, false, f.step);

        procs.at(f.in_passed.color).actions.emplace_back(f.step, f.action);
        procs.at(f.in_stored.color).actions.emplace_back(f.step, f.action);

        for (const ColorRef& c : f.released) procs.at(c).terminated_step = f.step;
    }

    std::vector<ExtractedProcess> out;
    for (auto& [color, p] : procs) out.push_back(std::move(p));
    std::sort(out.begin(), out.end(), [](const ExtractedProcess& a, const ExtractedProcess& b) {
        return std::tuple(!a.traveler, a.color) < std::tuple(!b.traveler, b.color);
    });
    return out;
}

}  // namespace imds
