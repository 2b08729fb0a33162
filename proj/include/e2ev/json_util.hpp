#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

// Strict accessors over nlohmann parse trees. Published formats have exact
// key sets and no optional fields, so every helper throws std::invalid_argument
// with the offending field name on any deviation.

namespace e2ev {
namespace jsonu {

nlohmann::json parse(const std::string& text);

const nlohmann::json& member(const nlohmann::json& obj, const std::string& key);
std::string get_string(const nlohmann::json& obj, const std::string& key);
uint64_t get_u64(const nlohmann::json& obj, const std::string& key);
bool get_bool(const nlohmann::json& obj, const std::string& key);
const nlohmann::json& get_array(const nlohmann::json& obj, const std::string& key);
const nlohmann::json& get_object(const nlohmann::json& obj, const std::string& key);

/** Rejects objects whose key set differs from exactly `keys`. */
void expect_keys(const nlohmann::json& obj, const std::vector<std::string>& keys,
                 const std::string& where);

/** Canonical JSON string literal: quotes, backslash escaped; ASCII printable only. */
std::string escape(const std::string& s);

}  // namespace jsonu
}  // namespace e2ev
