// Minimal TOML subset: [table] / [table.sub] headers, key = value lines with
// strings, numbers, booleans and single-line arrays, # comments. Keys are
// exposed as full dotted paths.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "levymp/common.hpp"

namespace levymp::toml {

struct Value;
using Array = std::vector<Value>;

struct Value {
    std::variant<std::string, double, std::int64_t, bool, Array> v;

    bool is_string() const { return std::holds_alternative<std::string>(v); }
    bool is_number() const {
        return std::holds_alternative<double>(v) || std::holds_alternative<std::int64_t>(v);
    }
    bool is_bool() const { return std::holds_alternative<bool>(v); }
    bool is_array() const { return std::holds_alternative<Array>(v); }

    const std::string& as_string() const;
    double as_number() const;
    std::int64_t as_int() const;
    bool as_bool() const;
    const Array& as_array() const;
};

struct Document {
    std::map<std::string, Value> entries;

    bool has(const std::string& key) const { return entries.count(key) > 0; }
    const Value& at(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& dflt) const;
    double get_number(const std::string& key) const;
    double get_number(const std::string& key, double dflt) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t dflt) const;
    bool get_bool(const std::string& key, bool dflt) const;
    std::vector<double> get_number_array(const std::string& key) const;

    // names of the immediate child tables of `prefix` (sorted, unique)
    std::vector<std::string> subtables(const std::string& prefix) const;
};

// Throws ConfigError with a line reference on malformed input.
Document parse(const std::string& text);
Document parse_file(const std::string& path);

}  // namespace levymp::toml
