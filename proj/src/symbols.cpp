#include "imds/symbols.hpp"

#include "imds/errors.hpp"

namespace imds {

const char* space_name(Space s) {
    switch (s) {
        case Space::Label: return "label";
        case Space::Service: return "service";
        case Space::Resource: return "resource";
        case Space::Tag: return "tag";
    }
    return "?";
}

std::uint32_t SymbolTable::add(Space s, std::string_view n) {
    if (n.empty()) throw ResolveError("empty identifier");
    auto it = owner_.find(n);
    if (it != owner_.end()) {
        if (it->second.first == s)
            throw ResolveError("duplicate " + std::string(space_name(s)) + " '" + std::string(n) +
                               "'");
        throw ResolveError("identifier '" + std::string(n) + "' is already a " +
                           space_name(it->second.first));
    }
    auto& pool = names_[static_cast<std::size_t>(s)];
    auto id = static_cast<std::uint32_t>(pool.size());
    pool.emplace_back(n);
    owner_.emplace(std::string(n), std::make_pair(s, id));
    return id;
}

std::optional<std::uint32_t> SymbolTable::find(Space s, std::string_view n) const {
    auto it = owner_.find(n);
    if (it == owner_.end() || it->second.first != s) return std::nullopt;
    return it->second.second;
}

std::optional<Label> SymbolTable::find_label(std::string_view n) const {
    auto id = find(Space::Label, n);
    if (!id) return std::nullopt;
    return Label{*id};
}

std::optional<Service> SymbolTable::find_service(std::string_view n) const {
    auto id = find(Space::Service, n);
    if (!id) return std::nullopt;
    return Service{*id};
}

std::optional<Resource> SymbolTable::find_resource(std::string_view n) const {
    auto id = find(Space::Resource, n);
    if (!id) return std::nullopt;
    return Resource{*id};
}

std::optional<Tag> SymbolTable::find_tag(std::string_view n) const {
    auto id = find(Space::Tag, n);
    if (!id) return std::nullopt;
    return Tag{*id};
}

}  // namespace imds
