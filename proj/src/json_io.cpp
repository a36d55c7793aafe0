#include "imds/json_io.hpp"

#include "imds/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace imds {

using json = nlohmann::ordered_json;

namespace {

std::pair<std::size_t, std::size_t> line_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void structural(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

void check_identifier(const std::string& s, const std::string& where) {
    if (s.empty()) structural(where, "empty identifier");
    for (unsigned char ch : s) {
        if (std::isspace(ch) || std::iscntrl(ch) || ch == '.' || ch == ',' || ch == ':' ||
            ch == '=' || ch == '|' || ch == '#' || ch == '@' || ch == '"')
            structural(where, "identifier '" + s + "' contains a reserved character");
    }
}

const json& expect(const json& j, const char* key, json::value_t type, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) structural(where, std::string("missing field '") + key + "'");
    if (it->type() != type &&
        !(type == json::value_t::array && it->type() == json::value_t::array))
        structural(where, std::string("field '") + key + "' has the wrong type");
    return *it;
}

std::string str_at(const json& j, std::size_t i, const std::string& where) {
    if (!j.is_array() || j.size() <= i || !j[i].is_string())
        structural(where, "expected a string at position " + std::to_string(i));
    return j[i].get<std::string>();
}

Tag resolve_tag(const SymbolTable& sym, const std::string& n, const std::string& where) {
    auto t = sym.find_tag(n);
    if (!t) throw ResolveError(where + ": unknown tag '" + n + "'");
    return *t;
}

Label resolve_label(const SymbolTable& sym, const std::string& n, const std::string& where) {
    auto l = sym.find_label(n);
    if (!l) throw ResolveError(where + ": unknown label '" + n + "'");
    return *l;
}

Service resolve_service(const SymbolTable& sym, const std::string& n, const std::string& where) {
    auto s = sym.find_service(n);
    if (!s) throw ResolveError(where + ": unknown service '" + n + "'");
    return *s;
}

Resource resolve_resource(const SymbolTable& sym, const std::string& n, const std::string& where) {
    auto r = sym.find_resource(n);
    if (!r) throw ResolveError(where + ": unknown resource '" + n + "'");
    return *r;
}

PassedItem parse_passed(const SymbolTable& sym, const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        structural(where, "a passed item is [tag, label, service]");
    return {resolve_tag(sym, str_at(j, 0, where), where),
            resolve_label(sym, str_at(j, 1, where), where),
            resolve_service(sym, str_at(j, 2, where), where)};
}

StoredItem parse_stored(const SymbolTable& sym, const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) structural(where, "a stored item is [label, resource]");
    return {resolve_label(sym, str_at(j, 0, where), where),
            resolve_resource(sym, str_at(j, 1, where), where)};
}

}  // namespace

SystemSpec parse_model(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("model: " + std::string(e.what()), line, col);
    }
    if (!j.is_object()) structural("model", "top level must be an object");

    SystemSpec spec;
    auto& sym = spec.symbols;

    struct SpaceField {
        const char* key;
        Space space;
    };
    for (auto [key, space] : {SpaceField{"labels", Space::Label},
                              SpaceField{"services", Space::Service},
                              SpaceField{"resources", Space::Resource},
                              SpaceField{"tags", Space::Tag}}) {
        const json& arr = expect(j, key, json::value_t::array, "model");
        for (const auto& entry : arr) {
            if (!entry.is_string()) structural(key, "expected an array of strings");
            std::string name = entry.get<std::string>();
            check_identifier(name, key);
            switch (space) {
                case Space::Label: sym.add_label(name); break;
                case Space::Service: sym.add_service(name); break;
                case Space::Resource: sym.add_resource(name); break;
                case Space::Tag: sym.add_tag(name); break;
            }
        }
    }

    const json& init = expect(j, "init", json::value_t::object, "model");
    for (const auto& entry : expect(init, "stored", json::value_t::array, "init"))
        spec.initial.stored.push_back(parse_stored(sym, entry, "init.stored"));
    for (const auto& entry : expect(init, "passed", json::value_t::array, "init"))
        spec.initial.passed.push_back(parse_passed(sym, entry, "init.passed"));
    normalize(spec.initial);  // shape violations are reported by validation

    std::size_t pool_tags = 0, pool_labels = 0;
    if (auto it = j.find("fresh_pool"); it != j.end()) {
        if (!it->is_object()) structural("fresh_pool", "must be an object");
        if (auto t = it->find("tags"); t != it->end()) {
            if (!t->is_number_unsigned()) structural("fresh_pool.tags", "must be a non-negative integer");
            pool_tags = t->get<std::size_t>();
        }
        if (auto l = it->find("labels"); l != it->end()) {
            if (!l->is_number_unsigned())
                structural("fresh_pool.labels", "must be a non-negative integer");
            pool_labels = l->get<std::size_t>();
        }
    }
    for (std::size_t i = 1; i <= pool_tags; ++i)
        spec.pool.tags.push_back(sym.add_tag("t#" + std::to_string(i)));
    for (std::size_t i = 1; i <= pool_labels; ++i)
        spec.pool.labels.push_back(sym.add_label("l#" + std::to_string(i)));

    const json& actions = expect(j, "actions", json::value_t::array, "model");
    for (const auto& entry : actions) {
        if (!entry.is_object()) structural("actions", "each action must be an object");
        ActionDef a;
        const json& id = expect(entry, "id", json::value_t::string, "action");
        a.name = id.get<std::string>();
        check_identifier(a.name, "action.id");
        if (spec.find_action(a.name))
            structural("actions", "duplicate action id '" + a.name + "'");
        const std::string where = "action '" + a.name + "'";

        const json& in = expect(entry, "in", json::value_t::object, where);
        a.in_passed = parse_passed(sym, expect(in, "passed", json::value_t::array, where), where);
        a.in_stored = parse_stored(sym, expect(in, "stored", json::value_t::array, where), where);

        const json& out = expect(entry, "out", json::value_t::object, where);
        for (const auto& o : expect(out, "stored", json::value_t::array, where)) {
            if (!o.is_array() || o.size() != 2)
                structural(where, "a stored output is [label-or-\"@fresh\", resource]");
            StoredOutput so;
            std::string loc = str_at(o, 0, where);
            if (loc != "@fresh") so.location = resolve_label(sym, loc, where);
            so.resource = resolve_resource(sym, str_at(o, 1, where), where);
            a.out_stored.push_back(so);
        }
        if (auto it = out.find("passed"); it != out.end()) {
            if (!it->is_array()) structural(where, "out.passed must be an array");
            for (const auto& o : *it) {
                if (!o.is_array() || o.size() != 3)
                    structural(where, "a passed output is [tag-or-\"@fresh\", label, service]");
                PassedOutput po;
                std::string tag = str_at(o, 0, where);
                if (tag != "@fresh") po.tag = resolve_tag(sym, tag, where);
                po.destination = resolve_label(sym, str_at(o, 1, where), where);
                po.service = resolve_service(sym, str_at(o, 2, where), where);
                a.out_passed.push_back(po);
            }
        }
        spec.actions.push_back(std::move(a));
    }

    spec.rebuild_universe();
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

SystemSpec load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string serialize_model(const SystemSpec& spec) {
    const auto& sym = spec.symbols;
    json j = json::object();

    json labels = json::array();
    for (std::uint32_t i = 0; i < sym.size(Space::Label); ++i)
        if (!spec.is_pool_label(Label{i})) labels.push_back(sym.name(Label{i}));
    j["labels"] = std::move(labels);

    json services = json::array();
    for (std::uint32_t i = 0; i < sym.size(Space::Service); ++i)
        services.push_back(sym.name(Service{i}));
    j["services"] = std::move(services);

    json resources = json::array();
    for (std::uint32_t i = 0; i < sym.size(Space::Resource); ++i)
        resources.push_back(sym.name(Resource{i}));
    j["resources"] = std::move(resources);

    json tags = json::array();
    for (std::uint32_t i = 0; i < sym.size(Space::Tag); ++i)
        if (!spec.is_pool_tag(Tag{i})) tags.push_back(sym.name(Tag{i}));
    j["tags"] = std::move(tags);

    json init = json::object();
    json stored = json::array();
    for (const auto& s : spec.initial.stored)
        stored.push_back(json::array({sym.name(s.location), sym.name(s.resource)}));
    init["stored"] = std::move(stored);
    json passed = json::array();
    for (const auto& p : spec.initial.passed)
        passed.push_back(
            json::array({sym.name(p.tag), sym.name(p.destination), sym.name(p.service)}));
    init["passed"] = std::move(passed);
    j["init"] = std::move(init);

    json actions = json::array();
    for (const auto& a : spec.actions) {
        json entry = json::object();
        entry["id"] = a.name;
        json in = json::object();
        in["passed"] = json::array(
            {sym.name(a.in_passed.tag), sym.name(a.in_passed.destination),
             sym.name(a.in_passed.service)});
        in["stored"] = json::array({sym.name(a.in_stored.location), sym.name(a.in_stored.resource)});
        entry["in"] = std::move(in);
        json out = json::object();
        json out_stored = json::array();
        for (const auto& o : a.out_stored)
            out_stored.push_back(json::array(
                {o.location ? sym.name(*o.location) : std::string("@fresh"), sym.name(o.resource)}));
        out["stored"] = std::move(out_stored);
        json out_passed = json::array();
        for (const auto& o : a.out_passed)
            out_passed.push_back(json::array({o.tag ? sym.name(*o.tag) : std::string("@fresh"),
                                              sym.name(o.destination), sym.name(o.service)}));
        out["passed"] = std::move(out_passed);
        entry["out"] = std::move(out);
        actions.push_back(std::move(entry));
    }
    j["actions"] = std::move(actions);

    if (!spec.pool.tags.empty() || !spec.pool.labels.empty()) {
        json pool = json::object();
        pool["tags"] = spec.pool.tags.size();
        pool["labels"] = spec.pool.labels.size();
        j["fresh_pool"] = std::move(pool);
    }
    return j.dump(2) + "\n";
}

Decomposition parse_decomposition(const SystemSpec& spec, std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("decomposition: " + std::string(e.what()), line, col);
    }
    if (!j.is_array()) structural("decomposition", "top level must be an array of quotas");

    const auto& sym = spec.symbols;
    Decomposition d;
    for (const auto& entry : j) {
        if (!entry.is_object()) structural("decomposition", "each quota must be an object");
        Quota q;
        q.name = expect(entry, "name", json::value_t::string, "quota").get<std::string>();
        if (q.name.empty()) structural("quota", "empty name");
        if (d.find(q.name)) structural("decomposition", "duplicate quota name '" + q.name + "'");
        const std::string where = "quota '" + q.name + "'";

        auto pit = entry.find("passed");
        if (pit == entry.end()) structural(where, "missing field 'passed'");
        if (pit->is_array()) {
            for (const auto& item : *pit) q.passed.push_back(parse_passed(sym, item, where));
        } else if (pit->is_object()) {
            if (auto t = pit->find("tag"); t != pit->end() && t->is_string()) {
                q.passed_tag = resolve_tag(sym, t->get<std::string>(), where);
                for (const auto& p : passed_with_tag(spec, *q.passed_tag)) q.passed.push_back(p);
            } else if (auto l = pit->find("label"); l != pit->end() && l->is_string()) {
                q.passed_label = resolve_label(sym, l->get<std::string>(), where);
                for (const auto& p : passed_to(spec, *q.passed_label)) q.passed.push_back(p);
            } else {
                structural(where, "passed pattern must be {\"tag\": t} or {\"label\": l}");
            }
        } else {
            structural(where, "passed must be an item array or a pattern object");
        }

        auto sit = entry.find("stored");
        if (sit == entry.end()) structural(where, "missing field 'stored'");
        if (sit->is_string()) {
            if (sit->get<std::string>() != "all")
                structural(where, "the only stored string pattern is \"all\"");
            q.stored_all = true;
            q.stored = spec.stored_universe;
        } else if (sit->is_array()) {
            for (const auto& item : *sit) q.stored.push_back(parse_stored(sym, item, where));
        } else if (sit->is_object()) {
            if (auto l = sit->find("label"); l != sit->end() && l->is_string()) {
                q.stored_label = resolve_label(sym, l->get<std::string>(), where);
                q.stored = stored_at(spec, *q.stored_label);
            } else {
                structural(where, "stored pattern must be {\"label\": l} or \"all\"");
            }
        } else {
            structural(where, "stored must be an item array, a pattern object, or \"all\"");
        }

        sort_unique(q.passed);
        sort_unique(q.stored);
        d.quotas.push_back(std::move(q));
    }
    return d;
}

Decomposition load_decomposition(const SystemSpec& spec, const std::string& path) {
    return parse_decomposition(spec, read_file(path));
}

std::string serialize_decomposition(const SystemSpec& spec, const Decomposition& d) {
    const auto& sym = spec.symbols;
    json j = json::array();
    for (const auto& q : d.quotas) {
        json entry = json::object();
        entry["name"] = q.name;
        if (q.passed_tag)
            entry["passed"] = json{{"tag", sym.name(*q.passed_tag)}};
        else if (q.passed_label)
            entry["passed"] = json{{"label", sym.name(*q.passed_label)}};
        else {
            json arr = json::array();
            for (const auto& p : q.passed)
                arr.push_back(
                    json::array({sym.name(p.tag), sym.name(p.destination), sym.name(p.service)}));
            entry["passed"] = std::move(arr);
        }
        if (q.stored_all)
            entry["stored"] = "all";
        else if (q.stored_label)
            entry["stored"] = json{{"label", sym.name(*q.stored_label)}};
        else {
            json arr = json::array();
            for (const auto& s : q.stored)
                arr.push_back(json::array({sym.name(s.location), sym.name(s.resource)}));
            entry["stored"] = std::move(arr);
        }
        j.push_back(std::move(entry));
    }
    return j.dump(2) + "\n";
}

}  // namespace imds
