#include "imds/trace.hpp"

#include "imds/errors.hpp"

#include <charconv>
#include <sstream>

namespace imds {

namespace {

constexpr std::string_view kTraceHeader = "# imds trace 1";
constexpr std::string_view kColoredHeader = "# imds colored trace 1";

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out.push_back(sep);
        out += p;
    }
    return out;
}

std::string token_text(const TokenRef& t) { return t.item + ":" + format_color(t.color); }

}  // namespace

std::string format_trace(const SystemSpec& spec, std::span<const Transition> trace) {
    const auto& sym = spec.symbols;
    std::ostringstream os;
    os << kTraceHeader << "\n";
    for (const auto& tr : trace) {
        std::vector<std::string> fired, consumed, produced, fresh;
        for (const auto& f : tr.fired) {
            fired.push_back(f.name);
            consumed.push_back(format_item(sym, f.in_passed));
            consumed.push_back(format_item(sym, f.in_stored));
            for (const auto& s : f.out_stored) produced.push_back(format_item(sym, s));
            for (const auto& p : f.out_passed) produced.push_back(format_item(sym, p));
            for (const auto& [idx, tag] : f.fresh_tags)
                fresh.push_back(f.name + "[p" + std::to_string(idx) + "]=" + sym.name(tag));
            for (const auto& [idx, label] : f.fresh_labels)
                fresh.push_back(f.name + "[s" + std::to_string(idx) + "]=" + sym.name(label));
        }
        std::sort(fired.begin(), fired.end());
        std::sort(consumed.begin(), consumed.end());
        std::sort(produced.begin(), produced.end());
        std::sort(fresh.begin(), fresh.end());
        os << "step=" << tr.step_index << " fired=" << join(fired, ',')
           << " consumed=" << join(consumed, ',') << " produced=" << join(produced, ',')
           << " fresh=" << join(fresh, ',') << "\n";
    }
    return os.str();
}

std::string format_colored_trace(const ColoredTrace& trace) {
    std::ostringstream os;
    os << kColoredHeader << "\n";
    os << "init";
    for (const auto& t : trace.initial) os << " " << token_text(t);
    os << "\n";
    for (const auto& f : trace.firings) {
        std::vector<std::string> produced, acquired, released;
        for (const auto& t : f.produced) produced.push_back(token_text(t));
        for (const auto& c : f.acquired) acquired.push_back(format_color(c));
        for (const auto& c : f.released) released.push_back(format_color(c));
        std::sort(produced.begin(), produced.end());
        std::sort(acquired.begin(), acquired.end());
        std::sort(released.begin(), released.end());
        os << "step=" << f.step << " fire=" << f.action << " in=" << token_text(f.in_passed)
           << "," << token_text(f.in_stored) << " out=" << join(produced, ',')
           << " acquired=" << join(acquired, ',') << " released=" << join(released, ',')
           << "\n";
    }
    return os.str();
}

namespace {

[[noreturn]] void trace_fail(std::size_t line, const std::string& msg) {
    throw ParseError("trace line " + std::to_string(line) + ": " + msg, line, 0);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find(sep, start);
        if (end == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

std::size_t parse_number(std::string_view s, std::size_t line) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) trace_fail(line, "bad number");
    return value;
}

ColorRef parse_color(std::string_view s, std::size_t line) {
    ColorRef c;
    if (s.size() < 5 || s[0] != 'c') trace_fail(line, "bad color '" + std::string(s) + "'");
    if (s[1] == 't')
        c.cls = ColorRef::Class::Passed;
    else if (s[1] == 'l')
        c.cls = ColorRef::Class::Stored;
    else
        trace_fail(line, "bad color class");
    auto dot = s.find('.', 2);
    if (dot == std::string_view::npos) trace_fail(line, "color without lifetime");
    c.index = static_cast<std::uint32_t>(parse_number(s.substr(2, dot - 2), line));
    c.lifetime = static_cast<std::uint32_t>(parse_number(s.substr(dot + 1), line));
    return c;
}

TokenRef parse_token(std::string_view s, std::size_t line) {
    auto colon = s.rfind(':');
    if (colon == std::string_view::npos) trace_fail(line, "token without color");
    TokenRef t;
    t.item = std::string(s.substr(0, colon));
    t.color = parse_color(s.substr(colon + 1), line);
    t.passed = t.color.cls == ColorRef::Class::Passed;
    auto dot = t.item.find('.');
    if (dot == std::string::npos) trace_fail(line, "malformed item '" + t.item + "'");
    t.first_component = t.item.substr(0, dot);
    return t;
}

std::string_view field(std::string_view part, std::string_view key, std::size_t line) {
    if (part.substr(0, key.size()) != key)
        trace_fail(line, "expected field '" + std::string(key) + "'");
    return part.substr(key.size());
}

}  // namespace

ColoredTrace parse_colored_trace(std::string_view text) {
    ColoredTrace trace;
    auto lines = split(text, '\n');
    if (lines.empty() || lines[0] != kColoredHeader)
        throw ParseError("not a colored trace (missing header)", 1, 0);
    std::size_t lineno = 1;
    bool saw_init = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        lineno = i + 1;
        std::string_view line = lines[i];
        if (line.empty()) continue;
        if (line.rfind("init", 0) == 0) {
            saw_init = true;
            for (auto tok : split(line.substr(4), ' '))
                if (!tok.empty()) trace.initial.push_back(parse_token(tok, lineno));
            continue;
        }
        auto parts = split(line, ' ');
        if (parts.size() != 6) trace_fail(lineno, "expected 6 fields");
        ColoredFiring f;
        f.step = parse_number(field(parts[0], "step=", lineno), lineno);
        f.action = std::string(field(parts[1], "fire=", lineno));
        auto ins = split(field(parts[2], "in=", lineno), ',');
        if (ins.size() != 2) trace_fail(lineno, "expected two consumed tokens");
        f.in_passed = parse_token(ins[0], lineno);
        f.in_stored = parse_token(ins[1], lineno);
        for (auto tok : split(field(parts[3], "out=", lineno), ','))
            if (!tok.empty()) f.produced.push_back(parse_token(tok, lineno));
        for (auto col : split(field(parts[4], "acquired=", lineno), ','))
            if (!col.empty()) f.acquired.push_back(parse_color(col, lineno));
        for (auto col : split(field(parts[5], "released=", lineno), ','))
            if (!col.empty()) f.released.push_back(parse_color(col, lineno));
        trace.firings.push_back(std::move(f));
    }
    if (!saw_init) throw ParseError("colored trace has no init line", 1, 0);
    return trace;
}

}  // namespace imds
