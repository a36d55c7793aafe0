#include "imds/decomposition.hpp"

#include "imds/errors.hpp"

namespace imds {

bool Quota::contains(const PassedItem& p) const {
    if (passed_tag && p.tag == *passed_tag) return true;
    if (passed_label && p.destination == *passed_label) return true;
    return sorted_contains(passed, p);
}

bool Quota::contains(const StoredItem& s) const {
    if (stored_all) return true;
    if (stored_label && s.location == *stored_label) return true;
    return sorted_contains(stored, s);
}

bool Quota::contains(const Item& i) const {
    if (auto* p = std::get_if<PassedItem>(&i)) return contains(*p);
    return contains(std::get<StoredItem>(i));
}

const Quota* Decomposition::find(std::string_view name) const {
    for (const auto& q : quotas)
        if (q.name == name) return &q;
    return nullptr;
}

Configuration project_config(const Configuration& c, const Quota& q) {
    Configuration out;
    for (const auto& p : c.passed)
        if (q.contains(p)) out.passed.push_back(p);
    for (const auto& s : c.stored)
        if (q.contains(s)) out.stored.push_back(s);
    return out;
}

namespace {

ActionShare project_items(const PassedItem& in_p, const StoredItem& in_s,
                          const std::vector<Item>& outputs, const Quota& q) {
    ActionShare share;
    if (q.contains(in_p)) share.inputs.emplace_back(in_p);
    if (q.contains(in_s)) share.inputs.emplace_back(in_s);
    for (const auto& i : outputs)
        if (q.contains(i)) share.outputs.push_back(i);
    share.participant = !share.inputs.empty() || !share.outputs.empty();
    return share;
}

std::vector<Item> concrete_outputs(const ActionDef& a) {
    std::vector<Item> out;
    for (const auto& o : a.out_stored)
        if (o.location) out.emplace_back(StoredItem{*o.location, o.resource});
    for (const auto& o : a.out_passed)
        if (o.tag) out.emplace_back(PassedItem{*o.tag, o.destination, o.service});
    return out;
}

std::vector<Item> instantiated_outputs(const FiredAction& f) {
    std::vector<Item> out;
    for (const auto& s : f.out_stored) out.emplace_back(s);
    for (const auto& p : f.out_passed) out.emplace_back(p);
    return out;
}

}  // namespace

ActionShare project_action(const ActionDef& a, const Quota& q) {
    return project_items(a.in_passed, a.in_stored, concrete_outputs(a), q);
}

ActionShare project_action(const FiredAction& f, const Quota& q) {
    return project_items(f.in_passed, f.in_stored, instantiated_outputs(f), q);
}

bool composable(const Quota& a, const Quota& b) {
    for (const auto& p : a.passed)
        if (b.contains(p)) return false;
    for (const auto& p : b.passed)
        if (a.contains(p)) return false;
    // pattern-only overlap (identical patterns with no materialized items)
    if (a.passed_tag && b.passed_tag && *a.passed_tag == *b.passed_tag) return false;
    if (a.passed_label && b.passed_label && *a.passed_label == *b.passed_label) return false;
    return true;
}

Quota merge(const Quota& a, const Quota& b) {
    if (!composable(a, b))
        throw IncompatibleError("quotas '" + a.name + "' and '" + b.name +
                                "' share passed items");
    Quota out;
    out.name = a.name + "+" + b.name;
    out.passed = a.passed;
    out.passed.insert(out.passed.end(), b.passed.begin(), b.passed.end());
    sort_unique(out.passed);
    out.stored = a.stored;
    out.stored.insert(out.stored.end(), b.stored.begin(), b.stored.end());
    sort_unique(out.stored);
    // the merged quota is extensional; pattern absorption does not survive a union
    return out;
}

DecompositionCheck is_decomposition(const SystemSpec& spec, const Decomposition& d) {
    DecompositionCheck check;
    check.ok = true;
    const auto& sym = spec.symbols;

    for (const auto& p : spec.passed_universe) {
        std::vector<const Quota*> holders;
        for (const auto& q : d.quotas)
            if (q.contains(p)) holders.push_back(&q);
        if (holders.empty()) {
            check.ok = false;
            check.diagnostics.push_back("passed item " + format_item(sym, p) +
                                        " is not covered by any quota");
        } else if (holders.size() > 1) {
            check.ok = false;
            std::string names;
            for (const auto* q : holders) names += (names.empty() ? "" : ", ") + q->name;
            check.diagnostics.push_back("passed item " + format_item(sym, p) +
                                        " is claimed by " + names);
        }
    }
    for (const auto& s : spec.stored_universe) {
        bool covered = false;
        for (const auto& q : d.quotas)
            if (q.contains(s)) {
                covered = true;
                break;
            }
        if (!covered) {
            check.ok = false;
            check.diagnostics.push_back("stored item " + format_item(sym, s) +
                                        " is not covered by any quota");
        }
    }
    return check;
}

const char* comm_form_name(CommForm f) {
    switch (f) {
        case CommForm::Synchronous: return "synchronous";
        case CommForm::Passing: return "passing";
        case CommForm::Sharing: return "sharing";
    }
    return "?";
}

const char* comm_scope_name(CommScope s) {
    return s == CommScope::Internal ? "internal" : "external";
}

namespace {

ClassifyResult classify_items(const SystemSpec& spec, const std::string& action,
                              const PassedItem& in_p, const StoredItem& in_s,
                              const std::vector<Item>& outputs, std::size_t fresh_placeholders,
                              const Decomposition& d) {
    ClassifyResult result;
    const auto& sym = spec.symbols;

    std::vector<const Quota*> passed_only, stored_only, senders;
    for (const auto& q : d.quotas) {
        bool has_p = q.contains(in_p);
        bool has_s = q.contains(in_s);
        if (has_p) senders.push_back(&q);
        if (has_p && !has_s) passed_only.push_back(&q);
        if (has_s && !has_p) stored_only.push_back(&q);
    }

    for (const auto* qp : passed_only)
        for (const auto* qs : stored_only)
            result.events.push_back({action, CommForm::Synchronous, std::nullopt, qp->name,
                                     qs->name,
                                     qp == qs ? CommScope::Internal : CommScope::External});

    for (const auto& item : outputs) {
        std::vector<const Quota*> takers;
        for (const auto& q : d.quotas)
            if (q.contains(item)) takers.push_back(&q);
        if (takers.empty()) {
            result.uncovered.push_back("output item " + format_item(sym, item) +
                                       " of action '" + action +
                                       "' is not taken over by any quota");
            continue;
        }
        CommForm form = is_passed(item) ? CommForm::Passing : CommForm::Sharing;
        for (const auto* from : senders)
            for (const auto* to : takers)
                result.events.push_back({action, form, item, from->name, to->name,
                                         from == to ? CommScope::Internal
                                                    : CommScope::External});
    }

    if (fresh_placeholders > 0)
        result.uncovered.push_back(std::to_string(fresh_placeholders) +
                                   " fresh output(s) of action '" + action +
                                   "' are only classifiable once instantiated");

    auto key = [](const CommEvent& e) {
        return std::tuple(e.action, static_cast<int>(e.form),
                          e.item ? 1 : 0, e.item ? *e.item : Item(PassedItem{}), e.from_quota,
                          e.to_quota);
    };
    std::sort(result.events.begin(), result.events.end(),
              [&](const CommEvent& a, const CommEvent& b) { return key(a) < key(b); });
    return result;
}

}  // namespace

ClassifyResult classify(const SystemSpec& spec, const ActionDef& a, const Decomposition& d) {
    std::size_t fresh = 0;
    for (const auto& o : a.out_stored)
        if (!o.location) ++fresh;
    for (const auto& o : a.out_passed)
        if (!o.tag) ++fresh;
    return classify_items(spec, a.name, a.in_passed, a.in_stored, concrete_outputs(a), fresh, d);
}

ClassifyResult classify(const SystemSpec& spec, const FiredAction& f, const Decomposition& d) {
    return classify_items(spec, f.name, f.in_passed, f.in_stored, instantiated_outputs(f), 0, d);
}

}  // namespace imds
