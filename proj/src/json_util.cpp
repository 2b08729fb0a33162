#include "e2ev/json_util.hpp"

#include <json.hpp>

#include <stdexcept>

namespace e2ev {
namespace jsonu {

nlohmann::json parse(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("json: parse error");
    return j;
}

const nlohmann::json& member(const nlohmann::json& obj, const std::string& key) {
    if (!obj.is_object()) throw std::invalid_argument("json: not an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw std::invalid_argument(key + ": missing");
    return *it;
}

std::string get_string(const nlohmann::json& obj, const std::string& key) {
    const auto& v = member(obj, key);
    if (!v.is_string()) throw std::invalid_argument(key + ": not a string");
    return v.get<std::string>();
}

uint64_t get_u64(const nlohmann::json& obj, const std::string& key) {
    const auto& v = member(obj, key);
    if (!v.is_number_unsigned()) throw std::invalid_argument(key + ": not an unsigned integer");
    return v.get<uint64_t>();
}

bool get_bool(const nlohmann::json& obj, const std::string& key) {
    const auto& v = member(obj, key);
    if (!v.is_boolean()) throw std::invalid_argument(key + ": not a boolean");
    return v.get<bool>();
}

const nlohmann::json& get_array(const nlohmann::json& obj, const std::string& key) {
    const auto& v = member(obj, key);
    if (!v.is_array()) throw std::invalid_argument(key + ": not an array");
    return v;
}

const nlohmann::json& get_object(const nlohmann::json& obj, const std::string& key) {
    const auto& v = member(obj, key);
    if (!v.is_object()) throw std::invalid_argument(key + ": not an object");
    return v;
}

void expect_keys(const nlohmann::json& obj, const std::vector<std::string>& keys,
                 const std::string& where) {
    if (!obj.is_object()) throw std::invalid_argument(where + ": not an object");
    if (obj.size() != keys.size()) throw std::invalid_argument(where + ": unexpected key count");
    for (const auto& k : keys) {
        if (!obj.contains(k)) throw std::invalid_argument(where + ": missing key " + k);
    }
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u < 0x20 || u >= 0x7f) {
            throw std::invalid_argument("json escape: non printable byte in canonical text");
        }
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace jsonu
}  // namespace e2ev
