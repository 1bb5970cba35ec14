#pragma once

// Subcommand dispatch behind the procat command line tool. run() reads JSON
// inputs, runs one construction or check and writes a report with a
// schema_version field.
//
// Exit codes: 0 all checks pass, 1 verification failure (the report holds a
// counterexample), 2 search or element budget exhausted, 3 unparseable
// input.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "procat/chi.hpp"
#include "procat/cofinal.hpp"
#include "procat/io.hpp"
#include "procat/lifting.hpp"
#include "procat/premorphism.hpp"
#include "procat/reedy.hpp"
#include "procat/testing/suite.hpp"

namespace procat::cli {

using io::json;

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kBudgetExhausted = 2, kParseError = 3 };

enum class Format { json, text };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;  // "-" reads stdin
  std::size_t levels = 2;
  std::size_t reysha_cap = 3;
  std::optional<std::size_t> search_cap;   // default from PROCAT_SEARCH_CAP
  std::optional<std::size_t> element_cap;  // default from PROCAT_ELEMENT_CAP
  std::uint64_t seed = 1;
  std::size_t cases = 200;
  std::size_t max_poset = 5;
  std::size_t max_set = 4;
  bool inject_fault = false;
  bool confirm = false;  // lift: confirm each component with the oracle
  std::vector<std::string> properties;
  Format format = Format::json;
};

inline std::optional<std::size_t> env_cap(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) return std::nullopt;
  return static_cast<std::size_t>(n);
}

inline std::size_t search_cap(const RunConfig& c, std::size_t fallback) {
  if (c.search_cap) return *c.search_cap;
  return env_cap("PROCAT_SEARCH_CAP").value_or(fallback);
}

inline std::size_t element_cap(const RunConfig& c) {
  if (c.element_cap) return *c.element_cap;
  return env_cap("PROCAT_ELEMENT_CAP").value_or(kDefaultElementCap);
}

inline json read_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open input file");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return io::parse_text(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.location(), "malformed JSON");
  }
}

// ---------------------------------------------------------------------------
// Text rendering: the JSON report as indented "key: value" lines.

inline void render(std::ostream& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_structured() && !it.value().empty()) {
        out << pad << it.key() << ":\n";
        render(out, it.value(), indent + 1);
      } else {
        out << pad << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
            << "\n";
      }
    }
  } else if (j.is_array()) {
    bool flat = true;
    for (const auto& e : j) flat = flat && !e.is_structured();
    if (flat) {
      out << pad << j.dump() << "\n";
      return;
    }
    for (const auto& e : j) {
      out << pad << "-\n";
      render(out, e, indent + 1);
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline std::string render_text(const json& report) {
  std::ostringstream out;
  render(out, report, 0);
  return out.str();
}

struct Result {
  int code = kOk;
  json report;
};

inline Result finish(std::string_view command, json body, int code) {
  body["verdict"] = code == kOk ? "pass" : code == kVerificationFailed ? "fail" : "exhausted";
  return {code, io::envelope(command, std::move(body))};
}

inline const std::string& single_input(const RunConfig& c) {
  if (c.inputs.size() != 1) throw ParseError("", c.subcommand + " takes exactly one input file");
  return c.inputs.front();
}

// ---------------------------------------------------------------------------
// Subcommands

inline Result cmd_reedy(const RunConfig& c) {
  const json in = read_input(single_input(c));
  const json& tj = in.contains("transformation") ? in["transformation"] : in;
  NatTrans<FinSets> f = io::read_trans(tj, in.contains("transformation") ? "/transformation" : "");
  auto r = reedy(f);
  return finish("reedy", json{{"factorization", io::write_reedy(r)}},
                r.report.ok() ? kOk : kVerificationFailed);
}

/// {"source": transformation, "target": transformation,
///  "morphism": {"alpha", "phi", "psi"}} with the morphism optional.
inline Result cmd_chi(const RunConfig& c) {
  const json in = read_input(single_input(c));
  NatTrans<FinSets> f = io::read_trans(io::member(in, "source", ""), "/source");
  NatTrans<FinSets> t = io::read_trans(io::member(in, "target", ""), "/target");
  std::optional<ArrowPreMorphism<FinSets>> p;
  if (const json* m = io::optional_member(in, "morphism", "")) {
    p = io::read_arrow_pre_morphism(*m, f, t, "/morphism");
    if (auto why = arrow_pre_morphism_failure(f, t, *p)) throw ParseError("/morphism", *why);
  }
  auto pro = functorial_factorization_pro(f, t, p);
  json body{{"source_factorization", io::write_reedy(pro.source)},
            {"target_factorization", io::write_reedy(pro.target)}};
  bool ok = pro.source.report.ok() && pro.target.report.ok();
  if (pro.chi) {
    const auto& rep = *pro.chi_report;
    body["chi"] = io::write_pre_morphism(pro.source.mid, pro.target.mid, pro.chi->as_pre_morphism());
    body["checks"] = {{"left_square", rep.left_square}, {"right_square", rep.right_square}, {"natural", rep.natural}};
    body["failures"] = rep.failures;
    ok = ok && rep.ok();
  }
  return finish("chi", std::move(body), ok ? kOk : kVerificationFailed);
}

/// Either a base square {"g", "f", "top", "bottom"} of morphisms, or a
/// problem over a poset {"left", "right", "top", "bottom"}.
inline Result cmd_lift(const RunConfig& c) {
  const json in = read_input(single_input(c));
  const std::size_t cap = search_cap(c, kDefaultSearchCap);
  if (in.contains("g")) {
    FinMap g = io::read_morphism(io::member(in, "g", ""), "/g");
    FinMap f = io::read_morphism(io::member(in, "f", ""), "/f");
    FinMap top = io::read_map_between(io::member(in, "top", ""), g.src, f.src, "/top");
    FinMap bottom = io::read_map_between(io::member(in, "bottom", ""), g.tgt, f.tgt, "/bottom");
    io::at_path("", [&] {
      FinSets::check_square(g, f, top, bottom);
      return 0;
    });
    if (g.injective() && f.surjective()) {
      FinMap l = FinSets::lift(g, f, top, bottom);
      return finish("lift", json{{"method", "construction"}, {"lift", io::write_morphism(l)}}, kOk);
    }
    auto o = has_lift_bruteforce(g, f, top, bottom, cap);
    json body{{"method", "search"}, {"status", to_string(o.status)}, {"candidates", o.candidates}};
    if (o.witness) body["lift"] = io::write_morphism(*o.witness);
    if (o.status == SearchStatus::none) body["counterexample"] = "no map makes both triangles commute";
    return finish("lift", std::move(body),
                  o.status == SearchStatus::found ? kOk
                  : o.status == SearchStatus::none ? kVerificationFailed
                                                   : kBudgetExhausted);
  }
  LiftingProblem<FinSets> p = io::read_lifting_problem(in, "");
  if (auto why = p.failure()) throw ParseError("", *why);
  const FinPoset& T = p.right.shape();
  if (!FinSets::in_N(p.left))
    return finish("lift", json{{"counterexample", "left map is not injective"}}, kVerificationFailed);
  if (auto bad = special_failure(p.right, MapClass::M))
    return finish("lift",
                  json{{"counterexample", "relative matching map is not surjective at " + T.name(*bad)},
                       {"element", T.name(*bad)}},
                  kVerificationFailed);
  ConeLift<FinSets> l = lift_against_special(p);
  json body{{"method", "construction"}, {"components", io::write_components(T, l.components)}};
  if (c.confirm) {
    json conf = json::object();
    bool exhausted = false, refuted = false;
    for (Elem t = 0; t < T.size(); ++t) {
      auto o = has_lift_bruteforce(p.left, p.right.at(t), p.top[t], p.bottom[t], cap);
      conf[T.name(t)] = to_string(o.status);
      exhausted = exhausted || o.status == SearchStatus::exhausted;
      refuted = refuted || o.status == SearchStatus::none;
    }
    body["oracle"] = conf;
    if (refuted) return finish("lift", std::move(body), kVerificationFailed);
    if (exhausted) return finish("lift", std::move(body), kBudgetExhausted);
  }
  return finish("lift", std::move(body), kOk);
}

inline Result cmd_cofinalize(const RunConfig& c) {
  const json in = read_input(single_input(c));
  FinCategory I = io::read_category(in.contains("category") ? in["category"] : in,
                                    in.contains("category") ? "/category" : "");
  auto verdict = is_directed_category(I);
  if (!verdict.directed)
    return finish("cofinalize",
                  json{{"directed", false}, {"axiom", verdict.axiom}, {"witness", verdict.witness}},
                  kVerificationFailed);
  try {
    CofinalTower T = build_tower(I, c.levels, c.reysha_cap, element_cap(c));
    auto d = check_tower_directedness(T, c.reysha_cap);
    json over = json::array();
    bool refuted = false;
    for (const auto& r : check_cofinality(T)) {
      over.push_back(io::write_over_report(T, r));
      refuted = refuted || !r.nonempty || r.connectivity == Connectivity::refuted;
    }
    json dir{{"directed", d.directed}, {"level", d.level}, {"checked", d.checked}};
    if (d.unbounded) dir["unbounded"] = *d.unbounded;
    return finish("cofinalize", json{{"tower", io::write_tower(T)}, {"directedness", dir}, {"over_categories", over}},
                  d.directed && !refuted ? kOk : kVerificationFailed);
  } catch (const BudgetExceeded& e) {
    return finish("cofinalize", json{{"error", e.what()}}, kBudgetExhausted);
  }
}

/// {"source": diagram, "target": diagram, "p": pre-morphism, "q": ...}.
inline Result cmd_merge(const RunConfig& c) {
  const json in = read_input(single_input(c));
  Diagram<FinSets> F = io::read_diagram(io::member(in, "source", ""), "/source");
  Diagram<FinSets> G = io::read_diagram(io::member(in, "target", ""), "/target");
  auto p = io::read_pre_morphism(io::member(in, "p", ""), F, G, "/p");
  auto q = io::read_pre_morphism(io::member(in, "q", ""), F, G, "/q");
  if (auto why = pre_morphism_failure(F, G, p)) throw ParseError("/p", *why);
  if (auto why = pre_morphism_failure(F, G, q)) throw ParseError("/q", *why);
  SearchOptions opt{search_cap(c, SearchOptions{}.node_budget)};
  try {
    auto r = dominate(F, G, p, q, opt);
    const bool ok = pm_leq(F, p, r) && pm_leq(F, q, r) && is_pre_morphism(F, G, r);
    return finish("merge", json{{"dominator", io::write_pre_morphism(F, G, r)}, {"upper_bound", ok}},
                  ok ? kOk : kVerificationFailed);
  } catch (const NotColimEqual& e) {
    return finish("merge", json{{"counterexample", e.what()}}, kVerificationFailed);
  } catch (const TruncationExhausted& e) {
    return finish("merge", json{{"error", e.what()}}, kBudgetExhausted);
  } catch (const BudgetExceeded& e) {
    return finish("merge", json{{"error", e.what()}}, kBudgetExhausted);
  }
}

/// {"source", "target", "raw"}.
inline Result cmd_straighten(const RunConfig& c) {
  const json in = read_input(single_input(c));
  Diagram<FinSets> F = io::read_diagram(io::member(in, "source", ""), "/source");
  Diagram<FinSets> G = io::read_diagram(io::member(in, "target", ""), "/target");
  auto raw = io::read_raw_morphism(io::member(in, "raw", ""), F, G, "/raw");
  if (auto why = raw_morphism_failure(F, G, raw))
    return finish("straighten", json{{"counterexample", *why}}, kVerificationFailed);
  SearchOptions opt{search_cap(c, SearchOptions{}.node_budget)};
  try {
    auto s = straighten(F, G, raw, opt);
    bool ok = is_pre_morphism(F, G, s);
    for (Elem b = 0; b < G.size() && ok; ++b) ok = eq_in_colim(F, s.alpha[b], s.phi[b], raw.index[b], raw.rep[b]).has_value();
    return finish("straighten", json{{"pre_morphism", io::write_pre_morphism(F, G, s)}, {"colim_equal", ok}},
                  ok ? kOk : kVerificationFailed);
  } catch (const TruncationExhausted& e) {
    return finish("straighten", json{{"error", e.what()}}, kBudgetExhausted);
  } catch (const BudgetExceeded& e) {
    return finish("straighten", json{{"error", e.what()}}, kBudgetExhausted);
  }
}

/// Verdicts on whatever the input holds: a category or poset
/// (directedness), a transformation (levelwise / special for N and M), or
/// {"source", "target", "p", "q"} (validity and order of pre-morphisms).
inline Result cmd_check(const RunConfig& c) {
  const json in = read_input(single_input(c));
  json body = json::object();
  if (in.contains("morphisms")) {
    FinCategory I = io::read_category(in, "");
    auto v = is_directed_category(I);
    body["kind"] = "category";
    body["directed"] = v.directed;
    if (!v.directed) {
      body["axiom"] = v.axiom;
      body["witness"] = v.witness;
    }
  } else if (in.contains("elements")) {
    FinPoset P = io::read_poset(in, "");
    body["kind"] = "poset";
    body["directed"] = P.is_directed();
  } else if (in.contains("components")) {
    NatTrans<FinSets> t = io::read_trans(in, "");
    body["kind"] = "transformation";
    for (MapClass cls : {MapClass::N, MapClass::M}) {
      json v{{"levelwise", is_levelwise(t, cls)}, {"special", is_special(t, cls)}};
      if (auto bad = special_failure(t, cls)) v["special_fails_at"] = t.shape().name(*bad);
      body[to_string(cls)] = v;
    }
  } else if (in.contains("p") && in.contains("q")) {
    Diagram<FinSets> F = io::read_diagram(io::member(in, "source", ""), "/source");
    Diagram<FinSets> G = io::read_diagram(io::member(in, "target", ""), "/target");
    auto p = io::read_pre_morphism(in["p"], F, G, "/p");
    auto q = io::read_pre_morphism(in["q"], F, G, "/q");
    body["kind"] = "pre-morphisms";
    auto pf = pre_morphism_failure(F, G, p), qf = pre_morphism_failure(F, G, q);
    body["p_valid"] = !pf;
    body["q_valid"] = !qf;
    if (pf) body["p_failure"] = *pf;
    if (qf) body["q_failure"] = *qf;
    body["p_leq_q"] = pm_leq(F, p, q);
    body["q_leq_p"] = pm_leq(F, q, p);
  } else {
    throw ParseError("", "input is neither a category, a poset, a transformation nor a pre-morphism pair");
  }
  return finish("check", std::move(body), kOk);
}

inline Result cmd_suite(const RunConfig& c) {
  suite::SuiteConfig cfg;
  cfg.seed = c.seed;
  cfg.cases = c.cases;
  cfg.sizes = {c.max_poset, c.max_set, c.inject_fault};
  cfg.only = c.properties;
  json report = suite::property_suite(cfg);
  const std::string v = report["verdict"].get<std::string>();
  return {v == "fail" ? kVerificationFailed : kOk, std::move(report)};
}

inline Result dispatch(const RunConfig& c) {
  if (c.subcommand == "reedy") return cmd_reedy(c);
  if (c.subcommand == "chi") return cmd_chi(c);
  if (c.subcommand == "lift") return cmd_lift(c);
  if (c.subcommand == "cofinalize") return cmd_cofinalize(c);
  if (c.subcommand == "merge") return cmd_merge(c);
  if (c.subcommand == "straighten") return cmd_straighten(c);
  if (c.subcommand == "check") return cmd_check(c);
  if (c.subcommand == "suite") return cmd_suite(c);
  throw ParseError("", "unknown subcommand '" + c.subcommand + "'");
}

/// Runs one subcommand, writing the report to `out` and diagnostics to
/// `err`; returns the exit code.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Result r;
  try {
    r = dispatch(c);
  } catch (const ParseError& e) {
    err << "parse error at " << (e.location().empty() ? std::string("<root>") : e.location()) << ": " << e.detail()
        << "\n";
    r = {kParseError, io::envelope(c.subcommand, json{{"verdict", "error"},
                                                      {"error", {{"kind", "parse"}, {"location", e.location()},
                                                                 {"message", e.detail()}}}})};
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    r = {kBudgetExhausted, io::envelope(c.subcommand, json{{"verdict", "exhausted"}, {"error", e.what()}})};
  } catch (const Error& e) {
    err << e.what() << "\n";
    r = {kVerificationFailed, io::envelope(c.subcommand, json{{"verdict", "fail"}, {"counterexample", e.what()}})};
  }
  if (c.format == Format::json)
    out << r.report.dump(2) << "\n";
  else if (c.subcommand == "suite" && r.report.contains("properties"))
    out << suite::render_text(r.report);
  else
    out << render_text(r.report);
  return r.code;
}

}  // namespace procat::cli
