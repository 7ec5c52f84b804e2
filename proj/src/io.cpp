#include "eulercert/io.hpp"

#include <fstream>
#include <sstream>

#include "eulercert/error.hpp"

namespace eulercert::io {

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

Json permutation_to_json(const Permutation& g) {
  Json arr = Json::array();
  for (Point x : g.images()) arr.push_back(x);
  return arr;
}

Permutation permutation_from_json(const Json& j, std::size_t degree) {
  if (!j.is_array()) throw FormatError("permutation must be an array of images");
  std::vector<long long> images;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw FormatError("permutation images must be integers");
    images.push_back(x.get<long long>());
  }
  if (images.size() != degree) {
    throw DegreeMismatch("permutation has " + std::to_string(images.size()) + " images, expected " +
                         std::to_string(degree));
  }
  return Permutation::from_images(images);
}

GroupPtr group_from_json(const Json& j) {
  try {
    if (j.contains("schema") && j.at("schema") != kGroupSchema) {
      throw FormatError("unsupported group schema " + j.at("schema").dump());
    }
    const auto degree = j.at("degree").get<std::size_t>();
    if (degree == 0 || degree > 65535) throw FormatError("group degree out of range");
    std::vector<Permutation> gens;
    for (const auto& g : j.at("generators")) gens.push_back(permutation_from_json(g, degree));
    return PermGroup::from_generators(degree, std::move(gens), j.value("name", std::string{}));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("group file: ") + e.what());
  }
}

Json group_to_json(const PermGroup& group) {
  Json gens = Json::array();
  for (const auto& g : group.generators()) gens.push_back(permutation_to_json(g));
  return Json{{"schema", kGroupSchema}, {"name", group.name()}, {"degree", group.degree()}, {"generators", gens}};
}

GroupPtr load_group(const std::filesystem::path& path) { return group_from_json(read_json(path)); }

}  // namespace eulercert::io
