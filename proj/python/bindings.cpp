// Python module eulercert._core. Structured results cross as JSON text and are
// decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "eulercert/amalgam.hpp"
#include "eulercert/certify.hpp"
#include "eulercert/error.hpp"
#include "eulercert/io.hpp"

namespace py = pybind11;
using namespace eulercert;

namespace {

std::string dumps(const nlohmann::json& j) { return j.dump(); }

// Python-side handle; pybind11 holders cannot point to const.
struct Group {
  GroupPtr ptr;
};

Character find_irreducible(const GroupPtr& g, const std::string& name) {
  for (const auto& chi : character_table(g)->irreducibles) {
    if (chi.name() == name) return chi;
  }
  throw Error("no irreducible named " + name);
}

Alignment parse_alignment(const std::string& s) {
  if (s == "lcm") return Alignment::Lcm;
  if (s == "product") return Alignment::Product;
  throw Error("alignment must be lcm or product");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  auto base = py::register_exception<Error>(m, "EulercertError");
  py::register_exception<HypothesisFailure>(m, "HypothesisFailure", base.ptr());
  py::register_exception<InsufficientData>(m, "InsufficientData", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  py::class_<Group>(m, "Group")
      .def_property_readonly("name", [](const Group& g) { return g.ptr->name(); })
      .def_property_readonly("degree", [](const Group& g) { return g.ptr->degree(); })
      .def_property_readonly("order", [](const Group& g) { return g.ptr->order(); })
      .def_property_readonly("class_labels",
                             [](const Group& g) {
                               std::vector<std::string> out;
                               for (const auto& c : g.ptr->classes().classes()) out.push_back(c.label);
                               return out;
                             })
      .def("to_json", [](const Group& g) { return dumps(io::group_to_json(*g.ptr)); })
      .def("__repr__", [](const Group& g) {
        return "<Group " + g.ptr->name() + " of order " + std::to_string(g.ptr->order()) + ">";
      });

  py::class_<ClassFunction>(m, "Character")
      .def_property_readonly("name", &ClassFunction::name)
      .def_property_readonly("group", [](const ClassFunction& c) { return Group{c.group()}; })
      .def_property_readonly("degree", [](const ClassFunction& c) { return c.degree().convert_to<double>(); })
      .def_property_readonly("provenance", [](const ClassFunction& c) { return to_string(c.provenance()); })
      .def_property_readonly("values",
                             [](const ClassFunction& c) {
                               std::vector<std::optional<std::string>> out;
                               for (std::size_t k = 0; k < c.size(); ++k) {
                                 if (c.defined(k)) {
                                   out.push_back(c.value(k).str());
                                 } else {
                                   out.push_back(std::nullopt);
                                 }
                               }
                               return out;
                             })
      .def("to_json", [](const ClassFunction& c) { return dumps(class_function_to_json(c)); })
      .def("__add__", [](const ClassFunction& a, const ClassFunction& b) { return a + b; })
      .def("__mul__", [](const ClassFunction& a, long long k) { return a.scaled(k); })
      .def("__rmul__", [](const ClassFunction& a, long long k) { return a.scaled(k); })
      .def("__eq__", [](const ClassFunction& a, const ClassFunction& b) { return a == b; })
      .def("__repr__", [](const ClassFunction& c) { return "<Character " + c.name() + ">"; });

  m.def("load_group", [](const std::filesystem::path& p) { return Group{io::load_group(p)}; }, py::arg("path"));
  m.def("group_from_json", [](const std::string& s) { return Group{io::group_from_json(nlohmann::json::parse(s))}; });
  m.def("p_rank", [](const Group& g, std::uint64_t p) { return p_rank(g.ptr, p); }, py::arg("group"), py::arg("p"));
  m.def("rank", [](const Group& g) { return rank(g.ptr); }, py::arg("group"));
  m.def("maximal_rank_primes", [](const Group& g) { return maximal_rank_primes(g.ptr); }, py::arg("group"));
  m.def(
      "contains_p_cube", [](const Group& g, std::uint64_t p) { return contains_p_cube(g.ptr, p); }, py::arg("group"),
      py::arg("p"));

  m.def("irreducibles", [](const Group& g) { return character_table(g.ptr)->irreducibles; }, py::arg("group"));
  m.def(
      "irreducible", [](const Group& g, const std::string& name) { return find_irreducible(g.ptr, name); },
      py::arg("group"), py::arg("name"));
  m.def("trivial_character", [](const Group& g) { return trivial_character(g.ptr); }, py::arg("group"));
  m.def(
      "central_induction", [](const Group& g, std::size_t j) { return central_induction(g.ptr, j); },
      py::arg("group"), py::arg("j") = 0);
  m.def(
      "normal_sylow_effective", [](const Group& g, std::uint64_t p) { return normal_sylow_effective(g.ptr, p); },
      py::arg("group"), py::arg("p"));
  m.def(
      "load_character",
      [](const std::filesystem::path& p, const Group& g) { return ingest_class_function(io::read_json(p), g.ptr); },
      py::arg("path"), py::arg("group"));
  m.def(
      "ingest_character",
      [](const std::string& s, const Group& g) { return ingest_class_function(nlohmann::json::parse(s), g.ptr); },
      py::arg("json"), py::arg("group"));
  m.def("inner_product", [](const ClassFunction& a, const ClassFunction& b) { return inner_product(a, b).str(); });

  m.def("is_effective", [](const ClassFunction& c) { return dumps(to_json(is_effective(c))); }, py::arg("character"));
  m.def(
      "is_p_effective", [](const ClassFunction& c, std::uint64_t p) { return dumps(to_json(is_p_effective(c, p))); },
      py::arg("character"), py::arg("p"));
  m.def(
      "involution_criterion",
      [](const ClassFunction& c) {
        const auto r = involution_criterion(c);
        return std::make_pair(r.applies, r.passes);
      },
      py::arg("character"));
  m.def(
      "isotropy_profile", [](const std::vector<ClassFunction>& v) { return dumps(to_json(isotropy_profile(v))); },
      py::arg("factors"));
  m.def(
      "search_effective",
      [](const Group& g, unsigned max_degree, const std::vector<std::uint64_t>& primes) {
        return search_effective(g.ptr, max_degree, primes);
      },
      py::arg("group"), py::arg("max_degree"), py::arg("primes") = std::vector<std::uint64_t>{});

  m.def(
      "validate_amalgam",
      [](const std::filesystem::path& p) { return dumps(to_json(validate(load_graph_of_groups(p)))); },
      py::arg("path"));
  m.def(
      "local_certificate",
      [](const std::filesystem::path& p) { return dumps(to_json(local_certificate(load_graph_of_groups(p)))); },
      py::arg("path"));

  m.def(
      "certify_rank_one_isotropy",
      [](const Group& g, const std::vector<ClassFunction>& v) { return io::dump(to_json(apply_rank_one_isotropy(g.ptr, v))); },
      py::arg("group"), py::arg("factors"));
  m.def(
      "certify_rank_two",
      [](const Group& g, const ClassFunction& c) { return io::dump(to_json(apply_rank_two(g.ptr, is_effective(c)))); },
      py::arg("group"), py::arg("character"));
  m.def(
      "certify_center", [](const Group& g, std::uint64_t p) { return io::dump(to_json(apply_center_construction(g.ptr, p))); },
      py::arg("group"), py::arg("p"));
  m.def(
      "certify_amalgams",
      [](const Group& g, const std::vector<std::filesystem::path>& paths, const std::string& alignment) {
        std::vector<GraphOfGroups> sources;
        for (const auto& p : paths) sources.push_back(load_graph_of_groups(p));
        return io::dump(to_json(apply_rank_two(g.ptr, assemble_local(g.ptr, sources), parse_alignment(alignment))));
      },
      py::arg("group"), py::arg("amalgams"), py::arg("alignment") = "product");
  m.def(
      "report",
      [](const std::string& s) {
        const auto r = replay(nlohmann::json::parse(s));
        return std::make_pair(r.reproduced, r.certificate ? report_text(*r.certificate) : std::string());
      },
      py::arg("certificate"));
  m.def("join_dim", &join_dim, py::arg("k"), py::arg("r"));
}
