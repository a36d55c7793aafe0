#pragma once

#include "imds/symbols.hpp"

#include <algorithm>
#include <span>
#include <variant>
#include <vector>

namespace imds {

// Consumable message/call in flight; consumed by the action that handles it.
struct PassedItem {
    Tag tag;
    Label destination;
    Service service;
    friend constexpr auto operator<=>(const PassedItem&, const PassedItem&) = default;
};

// Reusable node state; every action at a node replaces it with a successor
// stored item at the same location.
struct StoredItem {
    Label location;
    Resource resource;
    friend constexpr auto operator<=>(const StoredItem&, const StoredItem&) = default;
};

using Item = std::variant<PassedItem, StoredItem>;

inline bool is_passed(const Item& i) { return std::holds_alternative<PassedItem>(i); }
inline bool is_stored(const Item& i) { return std::holds_alternative<StoredItem>(i); }

std::vector<Tag> tags_of(std::span<const Item> items);
std::vector<Label> destinations_of(std::span<const Item> items);
std::vector<Label> locations_of(std::span<const Item> items);
std::vector<Label> labels_of(std::span<const Item> items);

std::string format_item(const SymbolTable&, const PassedItem&);
std::string format_item(const SymbolTable&, const StoredItem&);
std::string format_item(const SymbolTable&, const Item&);

// Sorted-unique vectors serve as the flat sets used throughout; the item
// populations are small enough that this beats node-based containers.
template <class T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <class T>
bool sorted_contains(const std::vector<T>& v, const T& x) {
    return std::binary_search(v.begin(), v.end(), x);
}

template <class T>
void sorted_insert(std::vector<T>& v, const T& x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

template <class T>
bool sorted_erase(std::vector<T>& v, const T& x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) return false;
    v.erase(it);
    return true;
}

}  // namespace imds
