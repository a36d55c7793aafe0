#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace imds {

enum class Space : std::uint8_t { Label = 0, Service = 1, Resource = 2, Tag = 3 };

const char* space_name(Space s);

// Typed index into one identifier namespace.
template <Space S>
struct Id {
    std::uint32_t value = 0;
    friend constexpr auto operator<=>(const Id&, const Id&) = default;
};

using Label = Id<Space::Label>;
using Service = Id<Space::Service>;
using Resource = Id<Space::Resource>;
using Tag = Id<Space::Tag>;

// The interned identifier namespaces of a model. A name belongs to at most
// one namespace; indices are dense and stable in insertion order. Immutable
// once the model is built, so it is safe to share among readers.
class SymbolTable {
public:
    Label add_label(std::string_view n) { return Label{add(Space::Label, n)}; }
    Service add_service(std::string_view n) { return Service{add(Space::Service, n)}; }
    Resource add_resource(std::string_view n) { return Resource{add(Space::Resource, n)}; }
    Tag add_tag(std::string_view n) { return Tag{add(Space::Tag, n)}; }

    std::optional<Label> find_label(std::string_view n) const;
    std::optional<Service> find_service(std::string_view n) const;
    std::optional<Resource> find_resource(std::string_view n) const;
    std::optional<Tag> find_tag(std::string_view n) const;

    const std::string& name(Label id) const { return names_[0][id.value]; }
    const std::string& name(Service id) const { return names_[1][id.value]; }
    const std::string& name(Resource id) const { return names_[2][id.value]; }
    const std::string& name(Tag id) const { return names_[3][id.value]; }

    std::size_t size(Space s) const { return names_[static_cast<std::size_t>(s)].size(); }

    friend bool operator==(const SymbolTable&, const SymbolTable&) = default;

private:
    std::uint32_t add(Space s, std::string_view n);
    std::optional<std::uint32_t> find(Space s, std::string_view n) const;

    std::array<std::vector<std::string>, 4> names_;
    std::map<std::string, std::pair<Space, std::uint32_t>, std::less<>> owner_;
};

}  // namespace imds
