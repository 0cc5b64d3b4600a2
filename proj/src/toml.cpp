#include "levymp/toml.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace levymp::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config parse error (line " + std::to_string(line) + "): " + msg);
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
            return false;
    return true;
}

// strips a trailing comment that is not inside a string literal
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

Value parse_scalar(const std::string& tok, int line) {
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
        return Value{tok.substr(1, tok.size() - 2)};
    if (tok == "true") return Value{true};
    if (tok == "false") return Value{false};
    // integer?
    if (tok.find_first_of(".eE") == std::string::npos) {
        try {
            std::size_t pos = 0;
            const std::int64_t i = std::stoll(tok, &pos);
            if (pos == tok.size()) return Value{i};
        } catch (...) {
        }
    }
    try {
        std::size_t pos = 0;
        const double d = std::stod(tok, &pos);
        if (pos == tok.size()) return Value{d};
    } catch (...) {
    }
    fail(line, "cannot parse value '" + tok + "'");
}

Value parse_value(const std::string& raw, int line) {
    const std::string s = trim(raw);
    if (s.empty()) fail(line, "empty value");
    if (s.front() == '[') {
        if (s.back() != ']') fail(line, "unterminated array");
        Array arr;
        std::string body = s.substr(1, s.size() - 2);
        std::string tok;
        bool in_str = false;
        for (char c : body) {
            if (c == '"') in_str = !in_str;
            if (c == ',' && !in_str) {
                const std::string t = trim(tok);
                if (!t.empty()) arr.push_back(parse_scalar(t, line));
                tok.clear();
            } else {
                tok += c;
            }
        }
        const std::string t = trim(tok);
        if (!t.empty()) arr.push_back(parse_scalar(t, line));
        return Value{arr};
    }
    return parse_scalar(s, line);
}

}  // namespace

const std::string& Value::as_string() const {
    if (!is_string()) throw ConfigError("config value is not a string");
    return std::get<std::string>(v);
}

double Value::as_number() const {
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    if (std::holds_alternative<std::int64_t>(v))
        return static_cast<double>(std::get<std::int64_t>(v));
    throw ConfigError("config value is not numeric");
}

std::int64_t Value::as_int() const {
    if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
    if (std::holds_alternative<double>(v)) {
        const double d = std::get<double>(v);
        const auto i = static_cast<std::int64_t>(d);
        if (static_cast<double>(i) == d) return i;
    }
    throw ConfigError("config value is not an integer");
}

bool Value::as_bool() const {
    if (!is_bool()) throw ConfigError("config value is not a boolean");
    return std::get<bool>(v);
}

const Array& Value::as_array() const {
    if (!is_array()) throw ConfigError("config value is not an array");
    return std::get<Array>(v);
}

const Value& Document::at(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
}

std::string Document::get_string(const std::string& key) const { return at(key).as_string(); }
std::string Document::get_string(const std::string& key, const std::string& dflt) const {
    return has(key) ? at(key).as_string() : dflt;
}
double Document::get_number(const std::string& key) const { return at(key).as_number(); }
double Document::get_number(const std::string& key, double dflt) const {
    return has(key) ? at(key).as_number() : dflt;
}
std::int64_t Document::get_int(const std::string& key) const { return at(key).as_int(); }
std::int64_t Document::get_int(const std::string& key, std::int64_t dflt) const {
    return has(key) ? at(key).as_int() : dflt;
}
bool Document::get_bool(const std::string& key, bool dflt) const {
    return has(key) ? at(key).as_bool() : dflt;
}
std::vector<double> Document::get_number_array(const std::string& key) const {
    std::vector<double> out;
    for (const Value& v : at(key).as_array()) out.push_back(v.as_number());
    return out;
}

std::vector<std::string> Document::subtables(const std::string& prefix) const {
    std::vector<std::string> out;
    const std::string pre = prefix + ".";
    for (const auto& [k, v] : entries) {
        if (k.rfind(pre, 0) != 0) continue;
        const std::string rest = k.substr(pre.size());
        const std::size_t dot = rest.find('.');
        if (dot == std::string::npos) continue;  // a direct key, not a subtable
        const std::string name = rest.substr(0, dot);
        if (out.empty() || out.back() != name) out.push_back(name);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Document parse(const std::string& text) {
    Document doc;
    std::istringstream is(text);
    std::string raw;
    std::string prefix;
    int line_no = 0;
    while (std::getline(is, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated table header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (!valid_key(name)) fail(line_no, "bad table name '" + name + "'");
            prefix = name;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (!valid_key(key)) fail(line_no, "bad key '" + key + "'");
        const std::string full = prefix.empty() ? key : prefix + "." + key;
        if (doc.entries.count(full)) fail(line_no, "duplicate key '" + full + "'");
        doc.entries.emplace(full, parse_value(line.substr(eq + 1), line_no));
    }
    return doc;
}

Document parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

}  // namespace levymp::toml
