// Command-line front end. Exit codes: 0 positive, 2 negative verdict, 1 error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "eulercert/amalgam.hpp"
#include "eulercert/certify.hpp"
#include "eulercert/error.hpp"
#include "eulercert/io.hpp"
#include "eulercert/limits.hpp"

using namespace eulercert;
using Json = nlohmann::json;

namespace {

enum Exit { kPositive = 0, kError = 1, kNegative = 2 };

struct Output {
  Json json;
  std::string text;
  int code = kPositive;
};

struct Options {
  std::vector<std::uint64_t> primes;
  unsigned max_degree = 0;
  std::uint64_t bound = Limits::kDefaultElementBound;
  std::string format = "text";
  std::string out;
};

std::string gens_str(const std::vector<Permutation>& gens) {
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].cycle_string();
  return s + ">";
}

Json gens_json(const std::vector<Permutation>& gens) {
  Json a = Json::array();
  for (const auto& g : gens) a.push_back(io::permutation_to_json(g));
  return a;
}

std::string label(const GroupPtr& g) { return g->name().empty() ? "G" : g->name(); }

std::vector<std::uint64_t> primes_for(const GroupPtr& g, const Options& opt) {
  if (opt.primes.empty()) return prime_divisors(g->order());
  for (std::uint64_t p : opt.primes) {
    if (!is_prime(p) || g->order() % p != 0) {
      throw Error(std::to_string(p) + " is not a prime divisor of |" + label(g) + "| = " +
                              std::to_string(g->order()));
    }
  }
  return opt.primes;
}

Output cmd_rank(const std::string& group_file, const Options& opt) {
  const GroupPtr g = io::load_group(group_file);
  Output o;
  std::ostringstream t;
  Json per = Json::array();
  t << label(g) << ": order " << g->order() << "\n";
  for (std::uint64_t p : primes_for(g, opt)) {
    const unsigned r = p_rank(g, p);
    const bool cube = contains_p_cube(g, p);
    per.push_back({{"p", p}, {"p_rank", r}, {"contains_p_cube", cube}});
    t << "  r_" << p << " = " << r << (cube ? "  (contains (Z/" + std::to_string(p) + ")^3)" : "") << "\n";
  }
  const unsigned r = rank(g);
  const auto mp = maximal_rank_primes(g);
  t << "rank " << r << ", maximal-rank primes";
  for (std::uint64_t p : mp) t << " " << p;
  t << "\n";
  o.json = {{"group", label(g)}, {"order", g->order()}, {"primes", per}, {"rank", r}, {"maximal_rank_primes", mp}};
  o.text = t.str();
  return o;
}

Output cmd_subgroups(const std::string& group_file, const Options& opt) {
  const GroupPtr g = io::load_group(group_file);
  Output o;
  std::ostringstream t;
  Json subs = Json::array();
  Json graphs = Json::array();
  for (std::uint64_t p : primes_for(g, opt)) {
    const auto reps = elementary_abelians(g, p, true);
    for (const auto& e : reps) {
      const auto norm = normalizer(g, e.subgroup());
      subs.push_back({{"p", p}, {"rank", e.rank}, {"generators", gens_json(e.generators)},
                      {"normalizer_order", norm.order()}});
      t << "p=" << p << " rank " << e.rank << " " << gens_str(e.generators) << "  |N| = " << norm.order() << "\n";
    }
    if (!reps.empty() && reps.back().rank == 2 && !opt.primes.empty()) {
      const auto q = graph_of_groups(g, p);
      Json vs = Json::array(), es = Json::array();
      t << "quotient graph at p=" << p << (q.connected ? " (connected)" : " (disconnected)") << "\n";
      for (const auto& v : q.vertex_orbits) {
        vs.push_back({{"rank", q.base.vertices[v.representative].rank}, {"orbit", v.size},
                      {"stabilizer_order", v.stabilizer.order()}});
        t << "  vertex rank " << q.base.vertices[v.representative].rank << ", orbit " << v.size << ", stabilizer "
          << v.stabilizer.order() << "\n";
      }
      for (const auto& e : q.edge_orbits) {
        es.push_back({{"orbit", e.size}, {"stabilizer_order", e.stabilizer.order()},
                      {"ends", {e.rank_one_orbit, e.rank_two_orbit}}});
        t << "  edge " << e.rank_one_orbit << "-" << e.rank_two_orbit << ", orbit " << e.size << ", stabilizer "
          << e.stabilizer.order() << "\n";
      }
      Json gj{{"p", p}, {"connected", q.connected}, {"vertices", vs}, {"edges", es}};
      if (q.component_stabilizer) {
        gj["component_stabilizer_order"] = q.component_stabilizer->order();
        t << "  component stabilizer order " << q.component_stabilizer->order() << "\n";
      }
      graphs.push_back(gj);
    }
  }
  o.json = {{"group", label(g)}, {"elementary_abelians", subs}, {"graphs_of_groups", graphs}};
  o.text = t.str();
  return o;
}

Output cmd_chartab(const std::string& group_file) {
  const GroupPtr g = io::load_group(group_file);
  const auto table = character_table(g);
  const auto& cls = g->classes();
  Output o;
  std::ostringstream t;
  Json classes = Json::array();
  t << label(g) << ": " << cls.size() << " classes\n       ";
  for (const auto& c : cls.classes()) {
    classes.push_back({{"label", c.label}, {"order", c.element_order}, {"size", c.size}});
    t << " " << c.label;
  }
  t << "\n";
  Json chars = Json::array();
  for (const auto& chi : table->irreducibles) {
    chars.push_back(class_function_to_json(chi));
    t << chi.name() << ":";
    for (std::size_t k = 0; k < cls.size(); ++k) t << " " << chi.value(k).str();
    t << "\n";
  }
  o.json = {{"group", label(g)}, {"classes", classes}, {"irreducibles", chars}};
  o.text = t.str();
  return o;
}

// A JSON file, or the name of an irreducible such as chi6.
Character load_character(const std::string& arg, const GroupPtr& g) {
  if (!std::filesystem::exists(arg)) {
    for (const auto& chi : character_table(g)->irreducibles) {
      if (chi.name() == arg) return chi;
    }
  }
  return ingest_class_function(io::read_json(arg), g);
}

Output cmd_effective(const std::string& group_file, const std::string& char_file, const Options& opt) {
  const GroupPtr g = io::load_group(group_file);
  Output o;
  std::ostringstream t;
  if (char_file.empty()) {
    if (opt.max_degree == 0) throw Error("give a character file or --max-degree for a search");
    const auto found = search_effective(g, opt.max_degree, opt.primes);
    Json list = Json::array();
    for (const auto& chi : found) {
      list.push_back(to_json(is_effective(chi)));
      t << chi.name() << " (degree " << chi.degree() << ", " << sphere_of_character(chi).str() << ")\n";
    }
    t << found.size() << " effective character(s) of degree <= " << opt.max_degree << "\n";
    o.json = {{"group", label(g)}, {"max_degree", opt.max_degree}, {"found", list}};
    o.code = found.empty() ? kNegative : kPositive;
  } else {
    const Character chi = load_character(char_file, g);
    Json j;
    bool effective = true;
    if (opt.primes.empty()) {
      const auto cert = is_effective(chi);
      j = to_json(cert);
      effective = cert.effective;
      for (const auto& v : cert.primes) {
        t << "p=" << v.p << ": " << (v.effective ? "effective" : "not effective");
        if (v.free_element) t << " (" << v.free_element->class_label << " acts freely)";
        t << "\n";
      }
    } else {
      j = Json{{"character", class_function_to_json(chi)}, {"primes", Json::array()}};
      for (std::uint64_t p : primes_for(g, opt)) {
        const auto v = is_p_effective(chi, p);
        j["primes"].push_back(to_json(v));
        effective = effective && v.effective;
        t << "p=" << v.p << ": " << (v.effective ? "effective" : "not effective") << "\n";
      }
      j["effective"] = effective;
    }
    t << (chi.name().empty() ? "character" : chi.name()) << " is " << (effective ? "" : "not ") << "effective; "
      << sphere_of_character(chi).str() << "\n";
    o.json = j;
    o.code = effective ? kPositive : kNegative;
  }
  o.text = t.str();
  return o;
}

Output cmd_profile(const std::string& group_file, const std::vector<std::string>& char_files) {
  const GroupPtr g = io::load_group(group_file);
  std::vector<Character> factors;
  for (const auto& f : char_files) factors.push_back(load_character(f, g));
  const auto prof = isotropy_profile(factors);
  Output o;
  o.json = to_json(prof);
  std::ostringstream t;
  for (const auto& row : prof.rows) {
    t << "p=" << row.p << " rank " << row.rank << " " << gens_str(row.generators) << ":";
    for (const auto& d : row.fixed_dims) t << " " << (d ? std::to_string(*d) : std::string("?"));
    t << (row.fixes_point ? (*row.fixes_point ? "  fixes a point" : "") : "  undetermined") << "\n";
  }
  t << "max isotropy rank " << prof.max_isotropy_rank << (prof.undetermined ? " (upper bound)" : "")
    << (prof.free ? ", free" : "") << "\n";
  o.text = t.str();
  o.code = prof.max_isotropy_rank <= 1 ? kPositive : kNegative;
  return o;
}

Output cmd_amalgam(const std::string& gog_file) {
  const GraphOfGroups gog = load_graph_of_groups(gog_file);
  const auto report = validate(gog);
  Output o;
  std::ostringstream t;
  if (!report.valid) {
    std::string msg;
    for (const auto& p : report.problems) msg += "\n  " + p;
    throw ValidationError("invalid graph of groups:" + msg);
  }
  const auto cert = local_certificate(gog);
  o.json = {{"validation", to_json(report)}, {"certificate", to_json(cert)}};
  t << (gog.name.empty() ? "graph of groups" : gog.name) << ": valid, " << gog.vertices.size() << " vertices, "
    << gog.edges.size() << " edges\n";
  for (const auto& e : cert.edges) t << "edge " << e.edge << ": " << (e.compatible ? "compatible" : e.mismatch) << "\n";
  t << cert.p << "-local Euler class for " << cert.target << " in degree " << cert.degree << ": "
    << (cert.positive ? "effective" : "not effective") << "\n";
  for (const auto& f : cert.failures) t << "  " << f << "\n";
  o.text = t.str();
  o.code = cert.positive ? kPositive : kNegative;
  return o;
}

Output certificate_output(const ActionCertificate& c) {
  return Output{to_json(c), report_text(c), kPositive};
}

Output cmd_certify(const std::string& group_file, const std::vector<std::string>& char_files,
                   const std::vector<std::string>& amalgam_files, const std::string& theorem,
                   const std::string& alignment, const Options& opt) {
  const GroupPtr g = io::load_group(group_file);
  std::vector<Character> chars;
  for (const auto& f : char_files) chars.push_back(load_character(f, g));
  if (!amalgam_files.empty()) {
    std::vector<GraphOfGroups> gogs;
    for (const auto& f : amalgam_files) gogs.push_back(load_graph_of_groups(f));
    const Alignment a = alignment == "lcm" ? Alignment::Lcm : Alignment::Product;
    return certificate_output(apply_rank_two(g, assemble_local(g, gogs), a));
  }
  std::string th = theorem;
  if (th.empty()) {
    if (chars.empty()) th = "center";
    else th = chars.size() == 1 && rank(g) == 2 ? "rank-two" : "rank-one";
  }
  if (th == "center") {
    if (opt.primes.size() != 1) throw Error("the center construction needs exactly one --prime");
    return certificate_output(apply_center_construction(g, opt.primes.front()));
  }
  if (chars.empty()) throw Error("give at least one --character");
  if (th == "rank-one") return certificate_output(apply_rank_one_isotropy(g, chars));
  if (th == "rank-two") {
    if (chars.size() != 1) throw Error("the rank-two theorem takes one character");
    return certificate_output(apply_rank_two(g, is_effective(chars.front())));
  }
  throw Error("unknown theorem " + th);
}

Output cmd_report(const std::string& cert_file) {
  const auto r = replay(io::read_json(cert_file));
  Output o;
  o.json = to_json(*r.certificate);
  o.text = report_text(*r.certificate);
  o.text += r.reproduced ? "replay: reproduced byte for byte\n" : "replay: MISMATCH, the file differs from the recomputed certificate\n";
  o.code = r.reproduced ? kPositive : kNegative;
  return o;
}

void emit(const Output& o, const Options& opt) {
  const std::string doc = opt.format == "json" ? io::dump(o.json) : o.text;
  if (opt.out.empty()) {
    std::cout << doc;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw Error("cannot write " + opt.out);
  f << doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective Euler classes and free actions on products of spheres"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--prime", opt.primes, "Restrict to these primes")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", opt.max_degree, "Degree bound for the character search");
  app.add_option("--bound", opt.bound, "Element enumeration bound")->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", opt.out, "Write the output here instead of stdout");

  std::string group, character, gog, cert, theorem, alignment = "product";
  std::vector<std::string> characters, amalgams;

  auto* rank_cmd = app.add_subcommand("rank", "p-ranks, rank and maximal-rank primes");
  rank_cmd->add_option("group", group, "Group file")->required();
  auto* subs_cmd = app.add_subcommand("subgroups", "Elementary abelian subgroups up to conjugacy");
  subs_cmd->add_option("group", group, "Group file")->required();
  auto* tab_cmd = app.add_subcommand("chartab", "Character table");
  tab_cmd->add_option("group", group, "Group file")->required();
  auto* eff_cmd = app.add_subcommand("effective", "Effectiveness of a character, or a search with --max-degree");
  eff_cmd->add_option("group", group, "Group file")->required();
  eff_cmd->add_option("character", character, "Character file");
  auto* prof_cmd = app.add_subcommand("profile", "Isotropy profile of a product of linear spheres");
  prof_cmd->add_option("group", group, "Group file")->required();
  prof_cmd->add_option("characters", characters, "Character files")->required();
  auto* am_cmd = app.add_subcommand("amalgam", "Validate a graph of groups and emit its local certificate");
  am_cmd->add_option("graph", gog, "Graph-of-groups file")->required();
  auto* cert_cmd = app.add_subcommand("certify", "Emit an action certificate");
  cert_cmd->add_option("group", group, "Group file")->required();
  cert_cmd->add_option("--character", characters, "Character files");
  cert_cmd->add_option("--amalgam", amalgams, "Graph-of-groups files, one per maximal-rank prime");
  cert_cmd->add_option("--theorem", theorem, "rank-one, rank-two or center")
      ->check(CLI::IsMember({"rank-one", "rank-two", "center"}));
  cert_cmd->add_option("--alignment", alignment, "Degree alignment for assembled classes")
      ->check(CLI::IsMember({"lcm", "product"}));
  auto* rep_cmd = app.add_subcommand("report", "Replay a certificate and render it");
  rep_cmd->add_option("certificate", cert, "Certificate file")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPositive : kError;
  }

  try {
    Limits::set_element_bound(opt.bound);
    Output o;
    if (*rank_cmd) o = cmd_rank(group, opt);
    else if (*subs_cmd) o = cmd_subgroups(group, opt);
    else if (*tab_cmd) o = cmd_chartab(group);
    else if (*eff_cmd) o = cmd_effective(group, character, opt);
    else if (*prof_cmd) o = cmd_profile(group, characters);
    else if (*am_cmd) o = cmd_amalgam(gog);
    else if (*cert_cmd) o = cmd_certify(group, characters, amalgams, theorem, alignment, opt);
    else if (*rep_cmd) o = cmd_report(cert);
    emit(o, opt);
    return o.code;
  } catch (const HypothesisFailure& e) {
    std::cerr << "negative: " << e.what() << "\n";
    return kNegative;
  } catch (const InsufficientData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
