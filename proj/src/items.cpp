#include "imds/items.hpp"

namespace imds {

std::vector<Tag> tags_of(std::span<const Item> items) {
    std::vector<Tag> out;
    for (const auto& i : items)
        if (auto* p = std::get_if<PassedItem>(&i)) out.push_back(p->tag);
    sort_unique(out);
    return out;
}

std::vector<Label> destinations_of(std::span<const Item> items) {
    std::vector<Label> out;
    for (const auto& i : items)
        if (auto* p = std::get_if<PassedItem>(&i)) out.push_back(p->destination);
    sort_unique(out);
    return out;
}

std::vector<Label> locations_of(std::span<const Item> items) {
    std::vector<Label> out;
    for (const auto& i : items)
        if (auto* s = std::get_if<StoredItem>(&i)) out.push_back(s->location);
    sort_unique(out);
    return out;
}

std::vector<Label> labels_of(std::span<const Item> items) {
    std::vector<Label> out;
    for (const auto& i : items) {
        if (auto* p = std::get_if<PassedItem>(&i))
            out.push_back(p->destination);
        else
            out.push_back(std::get<StoredItem>(i).location);
    }
    sort_unique(out);
    return out;
}

std::string format_item(const SymbolTable& sym, const PassedItem& p) {
    return sym.name(p.tag) + "." + sym.name(p.destination) + "." + sym.name(p.service);
}

std::string format_item(const SymbolTable& sym, const StoredItem& s) {
    return sym.name(s.location) + "." + sym.name(s.resource);
}

std::string format_item(const SymbolTable& sym, const Item& i) {
    if (auto* p = std::get_if<PassedItem>(&i)) return format_item(sym, *p);
    return format_item(sym, std::get<StoredItem>(i));
}

}  // namespace imds
