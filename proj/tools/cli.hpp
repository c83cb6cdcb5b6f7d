#pragma once

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "twoclosure/twoclosure.hpp"

// Command-line surface. run_command takes argv without the program name and
// writes one JSON report to `out`; diagnostics go to `err`.

namespace twoclosure::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kUsage = 1, kPrecondition = 2, kDefect = 3 };

struct GroupSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<std::string> generators;
  PermGroup group;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

/// Offset of the opening quote of the k-th string in the generators array, or npos.
inline std::size_t generator_offset(std::string_view text, const std::vector<std::string>& gens, std::size_t k) {
  std::size_t pos = text.find("\"generators\"");
  if (pos == std::string_view::npos) return pos;
  for (std::size_t i = 0; i <= k; ++i) {
    pos = text.find("\"" + gens[i] + "\"", pos + 1);
    if (pos == std::string_view::npos) return pos;
  }
  return pos;
}

}  // namespace detail

/// {"degree": n, "generators": ["(1,2)(3,4)", ...], "name": "..."}; errors carry
/// the line and column in `text`.
inline GroupSpec parse_group(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw parse_error("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column), line,
                      column);
  }
  auto fail_at = [&](const std::string& msg, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    const auto [line, column] = pos == std::string_view::npos ? std::pair<std::size_t, std::size_t>{1, 1}
                                                               : detail::line_column(text, pos);
    throw parse_error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column), line, column);
  };
  if (!doc.is_object()) fail_at("group spec must be a JSON object", "");
  if (!doc.contains("degree") || !doc["degree"].is_number_unsigned()) fail_at("degree must be a nonnegative integer", "degree");
  if (!doc.contains("generators") || !doc["generators"].is_array()) fail_at("generators must be an array", "generators");
  GroupSpec spec;
  spec.degree = doc["degree"].get<std::size_t>();
  if (spec.degree > 4096) fail_at("degree exceeds 4096", "degree");
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail_at("name must be a string", "name");
    spec.name = doc["name"].get<std::string>();
  }
  for (const auto& g : doc["generators"]) {
    if (!g.is_string()) fail_at("generators must be cycle strings", "generators");
    spec.generators.push_back(g.get<std::string>());
  }
  std::vector<Permutation> perms;
  for (std::size_t k = 0; k < spec.generators.size(); ++k) {
    try {
      perms.push_back(parse_cycles(spec.generators[k], spec.degree));
    } catch (const parse_error& e) {
      const auto off = detail::generator_offset(text, spec.generators, k);
      if (off == std::string_view::npos) {
        throw parse_error("generator " + std::to_string(k + 1) + ": " + e.what(), 0, e.column());
      }
      // the column inside the string is exact when the string has no escapes
      const auto [line, column] = detail::line_column(text, off + e.column());
      throw parse_error("generator " + std::to_string(k + 1) + ": " + e.what() + " (line " + std::to_string(line) +
                            ", column " + std::to_string(column) + ")",
                        line, column);
    }
  }
  spec.group = build_group(spec.degree, std::move(perms));
  return spec;
}

inline Json order_json(const Order& o) {
  if (o <= Order(UINT64_MAX)) return o.convert_to<std::uint64_t>();
  return o.str();
}

inline Json certificate_json(const WitnessCertificate& c) {
  Json out;
  out["construction"] = to_string(c.construction);
  out["degree"] = c.degree();
  out["order"] = order_json(c.group.order());
  out["generators"] = twoclosure::detail::cycle_list(c.group.generators());
  out["witness"] = to_cycle_string(c.witness);
  out["parameters"] = c.parameters;
  out["evidence_size"] = c.evidence.size();
  out["valid"] = c.validate().valid;
  out["lift"] = c.lift ? certificate_json(*c.lift) : Json(nullptr);
  return out;
}

struct Input {
  Json echo;
  PermGroup group;
};

inline Input load_input(const std::string& file, const std::string& family) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw precondition_error("cannot open '" + file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const auto spec = parse_group(buf.str());
    Json echo;
    echo["file"] = file;
    echo["name"] = spec.name;
    echo["degree"] = spec.degree;
    echo["generators"] = spec.generators;
    return {echo, spec.group};
  }
  const auto spec = parse_family(family);
  Json echo;
  echo["family"] = to_string(spec);
  return {echo, realize(spec)};
}

/// order, rank and closure data for the input action; closure fields are null
/// above the closure degree guard.
inline Json action_results(const PermGroup& g) {
  Json r;
  r["order"] = order_json(g.order());
  r["rank"] = OrbitalPartition(g).rank();
  if (g.degree() <= kClosureDegreeGuard) {
    r["closure_order"] = order_json(two_closure(g).order());
  } else {
    r["closure_order"] = nullptr;
  }
  return r;
}

inline Json closure_results(const PermGroup& g) {
  const auto check = is_two_closed_on(g);
  Json r;
  r["order"] = order_json(g.order());
  r["rank"] = OrbitalPartition(g).rank();
  r["closure_order"] = order_json(check.closure.order());
  r["closed"] = check.closed;
  r["witness"] = check.witness ? Json(to_cycle_string(*check.witness)) : Json(nullptr);
  r["certificate"] = nullptr;
  r["verdict"] = check.closed ? "TwoClosedOnPoints" : "NotTwoClosedOnPoints";
  return r;
}

inline Json classify_results(const PermGroup& g) {
  const auto v = classify_nilpotent(g);
  Json r = action_results(g);
  r["closed"] = v.status == Status::TwoClosedGroup;
  r["witness"] = v.certificate ? Json(to_cycle_string(v.certificate->witness)) : Json(nullptr);
  r["certificate"] = v.certificate ? certificate_json(*v.certificate) : Json(nullptr);
  r["verdict"] = to_string(v.status);
  r["reason"] = to_string(v.reason);
  return r;
}

inline Json witness_results(const PermGroup& g) {
  const auto c = not_two_closed_witness(g);
  const auto check = c.validate();
  if (!check.valid) throw defect_error("certificate does not validate: " + check.reason);
  Json r = action_results(g);
  r["closed"] = false;
  r["witness"] = to_cycle_string(c.witness);
  r["certificate"] = certificate_json(c);
  r["verdict"] = to_string(Status::NotTwoClosedGroup);
  return r;
}

inline Json verify_results(const std::string& suite, const SuiteOptions& opt, Json& timing, bool& passed) {
  Json r;
  r["suite"] = suite;
  r["max_degree"] = opt.max_degree;
  r["seed"] = opt.seed;
  Json checks = Json::array();
  passed = true;
  for (const auto& c : run_suite(suite, opt)) {
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed();
    j["cases"] = c.cases;
    j["failures"] = c.failures;
    j["notes"] = c.notes;
    checks.push_back(j);
    timing["checks"][c.name] = c.seconds;
    passed = passed && c.passed();
  }
  r["checks"] = checks;
  r["passed"] = passed;
  return r;
}

inline Json catalog_results() {
  Json entries = Json::array();
  for (const auto& s : catalog_entries()) {
    const auto g = realize(s);
    entries.push_back({{"spec", s}, {"order", order_json(g.order())}, {"degree", g.degree()}});
  }
  return {{"entries", entries}};
}

inline Json error_json(const std::string& kind, const std::string& message) {
  return {{"kind", kind}, {"message", message}};
}


inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"2-closures of permutation groups and nilpotent 2-closed groups", "twoclosure"};
  app.require_subcommand(1);

  std::string file, family, suite;
  SuiteOptions opt;
  bool list = false;

  auto* closure = app.add_subcommand("closure", "2-closure of a group given by generators");
  closure->add_option("-i,--input", file, "group spec JSON file")->required();

  auto* classify = app.add_subcommand("classify", "decide whether a nilpotent group is 2-closed");
  auto* ci = classify->add_option("-i,--input", file, "group spec JSON file");
  auto* cf = classify->add_option("--family", family, "family spec such as Q8xC3");
  ci->excludes(cf);

  auto* witness = app.add_subcommand("witness", "certificate that a nilpotent group is not 2-closed");
  witness->add_option("--family", family, "family spec such as D8")->required();

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--max-degree", opt.max_degree, "largest degree of random groups")
      ->check(CLI::Range(std::size_t{1}, kSuiteMaxDegree));
  verify->add_option("--seed", opt.seed, "sampling seed");

  auto* catalog = app.add_subcommand("catalog", "list the catalog of group families");
  catalog->add_flag("--list", list, "list every entry");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (classify->parsed() && file.empty() && family.empty()) {
      throw CLI::RequiredError("classify needs -i FILE or --family SPEC");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsage;
  }

  Json report;
  report["input"] = nullptr;
  for (const auto* sub : app.get_subcommands()) report["command"] = sub->get_name();
  Json timing;
  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (closure->parsed()) {
      auto in = load_input(file, "");
      report["input"] = in.echo;
      report["results"] = closure_results(in.group);
    } else if (classify->parsed()) {
      auto in = load_input(file, family);
      report["input"] = in.echo;
      report["results"] = classify_results(in.group);
    } else if (witness->parsed()) {
      auto in = load_input("", family);
      report["input"] = in.echo;
      report["results"] = witness_results(in.group);
    } else if (verify->parsed()) {
      report["input"] = {{"suite", suite}};
      bool passed = false;
      report["results"] = verify_results(suite, opt, timing, passed);
      if (!passed) code = kDefect;
    } else if (catalog->parsed()) {
      report["input"] = Json::object();
      report["results"] = catalog_results();
    }
  } catch (const parse_error& e) {
    report["error"] = error_json("parse", e.what());
    if (e.line() > 0) {
      report["error"]["line"] = e.line();
      report["error"]["column"] = e.column();
    }
    code = kPrecondition;
  } catch (const guard_exceeded& e) {
    report["error"] = error_json("guard", e.what());
    code = kPrecondition;
  } catch (const precondition_error& e) {
    report["error"] = error_json("precondition", e.what());
    code = kPrecondition;
  } catch (const defect_error& e) {
    report["error"] = error_json("defect", e.what());
    code = kDefect;
  }
  if (report.contains("error")) {
    err << report["command"].get<std::string>() << ": " << report["error"]["message"].get<std::string>() << "\n";
  }
  timing["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report["timing"] = timing;
  out << report.dump(2) << "\n";
  return code;
}

}  // namespace twoclosure::cli
