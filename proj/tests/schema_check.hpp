#pragma once

// Structural validator for the subset of JSON Schema the repo's schemas use:
// type (including union types), required, properties, items, enum.
#include <string>

#include "json.hpp"

namespace qte::testutil {

inline bool type_matches(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

inline bool validate_schema(const nlohmann::json& value, const nlohmann::json& schema,
                            std::string& error, const std::string& path = "$") {
    if (schema.contains("type")) {
        const auto& t = schema.at("type");
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else {
            for (const auto& opt : t) ok = ok || type_matches(value, opt.get<std::string>());
        }
        if (!ok) {
            error = path + ": type mismatch";
            return false;
        }
    }
    if (value.is_null()) return true; // nullable field: nothing more to check
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& opt : schema.at("enum")) found = found || opt == value;
        if (!found) {
            error = path + ": value not in enum";
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema.at("required"))
                if (!value.contains(key.get<std::string>())) {
                    error = path + ": missing required key " + key.get<std::string>();
                    return false;
                }
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema.at("properties").items())
                if (value.contains(key) &&
                    !validate_schema(value.at(key), sub, error, path + "." + key))
                    return false;
    }
    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& item : value) {
            if (!validate_schema(item, schema.at("items"), error,
                                 path + "[" + std::to_string(i) + "]"))
                return false;
            ++i;
        }
    }
    return true;
}

} // namespace qte::testutil
