#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "eulercert/permgroup.hpp"

namespace eulercert::io {

using Json = nlohmann::json;

inline constexpr const char* kGroupSchema = "eulercert.group/v1";
inline constexpr const char* kCharacterSchema = "eulercert.character/v1";
inline constexpr const char* kGraphSchema = "eulercert.graph_of_groups/v1";

/// Throws FormatError on unreadable or malformed JSON.
Json read_json(const std::filesystem::path& path);
std::string dump(const Json& j);

GroupPtr group_from_json(const Json& j);
Json group_to_json(const PermGroup& group);
GroupPtr load_group(const std::filesystem::path& path);

Json permutation_to_json(const Permutation& g);
Permutation permutation_from_json(const Json& j, std::size_t degree);

}  // namespace eulercert::io
