#include "imds/dot_export.hpp"

#include <algorithm>
#include <sstream>

namespace imds {

namespace {

std::string quote(const std::string& s) { return '"' + s + '"'; }

const char* kPalette[] = {"#e6f2ff", "#ffe6e6", "#e6ffe6", "#fff2cc",
                          "#f2e6ff", "#e6ffff", "#ffe6f7", "#f5f5f5"};

std::string palette(std::uint32_t i) { return kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))]; }

}  // namespace

std::string export_dot(const PetriNet& net, const DotOptions& opts) {
    const auto& spec = net.spec();
    const auto& sym = spec.symbols;

    struct PlaceRow {
        std::string name;
        bool marked;
        std::string fill;
    };
    std::vector<PlaceRow> rows;
    for (std::size_t i = 0; i < net.places().size(); ++i) {
        const Item& item = net.places()[i];
        PlaceRow row;
        row.name = format_item(sym, item);
        row.marked = false;
        if (opts.show_marking) {
            if (auto* p = std::get_if<PassedItem>(&item))
                row.marked = spec.initial.contains(*p);
            else
                row.marked = spec.initial.contains(std::get<StoredItem>(item));
        }
        if (opts.color_by == DotOptions::ColorBy::Tag) {
            if (auto* p = std::get_if<PassedItem>(&item)) row.fill = palette(p->tag.value);
        } else if (opts.color_by == DotOptions::ColorBy::Location) {
            if (auto* s = std::get_if<StoredItem>(&item)) row.fill = palette(s->location.value);
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const PlaceRow& a, const PlaceRow& b) { return a.name < b.name; });

    std::vector<std::string> boxes;
    std::vector<std::string> arcs;
    for (const auto& t : net.transitions()) {
        const std::string name = spec.action(t.action).name;
        boxes.push_back(name);
        arcs.push_back(quote(format_item(sym, net.places()[t.in_passed])) + " -> " + quote(name));
        arcs.push_back(quote(format_item(sym, net.places()[t.in_stored])) + " -> " + quote(name));
        for (PlaceId out : t.out)
            arcs.push_back(quote(name) + " -> " + quote(format_item(sym, net.places()[out])));
    }
    std::sort(boxes.begin(), boxes.end());
    std::sort(arcs.begin(), arcs.end());

    std::ostringstream os;
    os << "digraph petri {\n";
    os << "  rankdir=LR;\n";
    os << "  node [fontsize=10];\n";
    for (const auto& row : rows) {
        os << "  " << quote(row.name) << " [shape=circle";
        if (row.marked && !row.fill.empty())
            os << ", style=filled, fillcolor=\"" << row.fill << "\", peripheries=2";
        else if (row.marked)
            os << ", style=filled, fillcolor=\"#d3d3d3\"";
        else if (!row.fill.empty())
            os << ", style=filled, fillcolor=\"" << row.fill << "\"";
        os << "];\n";
    }
    for (const auto& b : boxes) os << "  " << quote(b) << " [shape=box];\n";
    for (const auto& a : arcs) os << "  " << a << ";\n";
    os << "}\n";
    return os.str();
}

std::string export_dot(const SystemSpec& spec, const ReachGraph& g) {
    std::ostringstream os;
    os << "digraph reach {\n";
    os << "  rankdir=LR;\n";
    os << "  node [fontsize=10, shape=circle];\n";
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        os << "  \"s" << i << "\"";
        bool terminal = std::find(g.terminal.begin(), g.terminal.end(),
                                  static_cast<std::uint32_t>(i)) != g.terminal.end();
        os << " [";
        if (i == 0) os << "penwidth=2";
        if (i == 0 && terminal) os << ", ";
        if (terminal) os << "peripheries=2";
        os << "];\n";
    }
    for (const auto& e : g.edges)
        os << "  \"s" << e.source << "\" -> \"s" << e.target << "\" [label="
           << quote(spec.action(e.action).name) << "];\n";
    os << "}\n";
    return os.str();
}

}  // namespace imds
