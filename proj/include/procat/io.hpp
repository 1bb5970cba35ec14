#pragma once

// JSON interchange for the finite-set instance.
//
// Order convention: a poset morphism u → v exists iff u >= v. Diagram maps
// are keyed "y<=x" and go from the object at x to the object at y.
//
// Every reader takes the JSON-pointer path of its argument so a ParseError
// points at the offending node. Construction failures of the parsed values
// (non-functorial diagram, unnatural transformation...) are reported the
// same way.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include <json.hpp>
#endif

#include "procat/chi.hpp"
#include "procat/cofinal.hpp"
#include "procat/diagram.hpp"
#include "procat/errors.hpp"
#include "procat/finset.hpp"
#include "procat/lifting.hpp"
#include "procat/order.hpp"
#include "procat/premorphism.hpp"
#include "procat/reedy.hpp"

namespace procat::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline constexpr std::string_view kOrderConvention =
    "a map u->v exists iff u >= v; diagram maps are keyed \"y<=x\" and go from the object at x to the object at y";

// ---------------------------------------------------------------------------
// Path helpers

inline std::string child(const std::string& path, std::string_view key) {
  std::string out = path + "/";
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const json& member(const json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(std::string(key));
  if (it == j.end()) throw ParseError(path, "missing field \"" + std::string(key) + "\"");
  return *it;
}

inline const json* optional_member(const json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(std::string(key));
  return it == j.end() ? nullptr : &*it;
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

inline std::size_t as_index(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ParseError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

/// Runs `build`, turning library contract violations into parse errors at
/// `path`.
template <class F>
auto at_path(const std::string& path, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const ContractViolation& e) {
    throw ParseError(path, e.what());
  }
}

inline json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
}

// ---------------------------------------------------------------------------
// Objects and morphisms

inline json write_object(const FinSet& x) { return json(x.labels()); }

inline FinSet read_object(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "object must be an array of element ids");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < j.size(); ++i) ids.push_back(as_string(j[i], child(path, i)));
  return at_path(path, [&] { return FinSet::of(std::move(ids)); });
}

inline json write_map_table(const FinMap& f) {
  json m = json::object();
  for (std::size_t i = 0; i < f.src.size(); ++i) m[f.src.label(i)] = f.tgt.label(f.images[i]);
  return m;
}

inline json write_morphism(const FinMap& f) {
  return json{{"src", write_object(f.src)}, {"tgt", write_object(f.tgt)}, {"map", write_map_table(f)}};
}

/// {"map": {id: id}} between known objects, or the bare {id: id} table.
/// "src"/"tgt" may be given and must then agree with them.
inline FinMap read_map_between(const json& j, const FinSet& src, const FinSet& tgt, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected a morphism or a map table");
  const bool bare = !(j.contains("map") && j["map"].is_object());
  if (const json* s = bare ? nullptr : optional_member(j, "src", path))
    if (!FinSet::same(read_object(*s, child(path, "src")), src))
      throw ParseError(child(path, "src"), "source does not match the expected object");
  if (const json* t = bare ? nullptr : optional_member(j, "tgt", path))
    if (!FinSet::same(read_object(*t, child(path, "tgt")), tgt))
      throw ParseError(child(path, "tgt"), "target does not match the expected object");
  const std::string mp = bare ? path : child(path, "map");
  const json& m = bare ? j : j["map"];
  if (!m.is_object()) throw ParseError(mp, "map must be an object from source ids to target ids");
  std::vector<std::size_t> img(src.size(), 0);
  std::vector<char> seen(src.size(), 0);
  for (auto it = m.begin(); it != m.end(); ++it) {
    auto a = src.find(it.key());
    if (!a) throw ParseError(child(mp, it.key()), "unknown source element");
    auto b = tgt.find(as_string(it.value(), child(mp, it.key())));
    if (!b) throw ParseError(child(mp, it.key()), "unknown target element");
    img[*a] = *b;
    seen[*a] = 1;
  }
  for (std::size_t a = 0; a < src.size(); ++a)
    if (!seen[a]) throw ParseError(mp, "no image for element \"" + src.label(a) + "\"");
  return FinMap(src, tgt, std::move(img));
}

inline FinMap read_morphism(const json& j, const std::string& path) {
  FinSet s = read_object(member(j, "src", path), child(path, "src"));
  FinSet t = read_object(member(j, "tgt", path), child(path, "tgt"));
  return read_map_between(j, s, t, path);
}

// ---------------------------------------------------------------------------
// Posets and categories

inline json write_poset(const FinPoset& p) {
  json le = json::array();
  for (auto [x, y] : p.covers()) le.push_back({p.name(x), p.name(y)});
  return json{{"elements", p.names()}, {"le", le}};
}

inline FinPoset read_poset(const json& j, const std::string& path) {
  const json& el = member(j, "elements", path);
  const std::string ep = child(path, "elements");
  if (!el.is_array()) throw ParseError(ep, "expected an array of element ids");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < el.size(); ++i) names.push_back(as_string(el[i], child(ep, i)));
  std::vector<std::pair<std::string, std::string>> le;
  if (const json* l = optional_member(j, "le", path)) {
    const std::string lp = child(path, "le");
    if (!l->is_array()) throw ParseError(lp, "expected an array of [x, y] pairs");
    for (std::size_t i = 0; i < l->size(); ++i) {
      const json& pr = (*l)[i];
      if (!pr.is_array() || pr.size() != 2) throw ParseError(child(lp, i), "expected a pair [x, y] meaning x <= y");
      std::string ends[2];
      for (std::size_t k = 0; k < 2; ++k) {
        ends[k] = as_string(pr[k], child(child(lp, i), k));
        if (std::find(names.begin(), names.end(), ends[k]) == names.end())
          throw ParseError(child(child(lp, i), k), "unknown element \"" + ends[k] + "\"");
      }
      le.emplace_back(ends[0], ends[1]);
    }
  }
  return at_path(path, [&] { return FinPoset(std::move(names), le); });
}

inline json write_category(const FinCategory& c) {
  json morphisms = json::array();
  for (FinCategory::Mor f = 0; f < c.arrow_count(); ++f) {
    const auto& a = c.arrow(f);
    morphisms.push_back({{"name", a.name}, {"src", c.object(a.source)}, {"tgt", c.object(a.target)}});
  }
  json compose = json::array();
  for (FinCategory::Mor f = 0; f < c.arrow_count(); ++f)
    for (FinCategory::Mor g = 0; g < c.arrow_count(); ++g) {
      if (c.arrow(f).target != c.arrow(g).source || c.is_identity(f) || c.is_identity(g)) continue;
      compose.push_back({c.arrow(g).name, c.arrow(f).name, c.arrow(c.compose(g, f)).name});
    }
  json ids = json::object();
  for (std::size_t o = 0; o < c.object_count(); ++o) ids[c.object(o)] = c.arrow(c.identity(o)).name;
  return json{{"objects", c.objects()}, {"morphisms", morphisms}, {"compose", compose}, {"identities", ids}};
}

/// "compose" lists [g, f, g∘f] for non-identity arrows. Identities may be
/// named in "identities"; otherwise an arrow "id_<object>" is used, or
/// created when absent.
inline FinCategory read_category(const json& j, const std::string& path) {
  const std::string op = child(path, "objects");
  const json& objs = member(j, "objects", path);
  if (!objs.is_array()) throw ParseError(op, "expected an array of object names");
  std::vector<std::string> objects;
  std::map<std::string, std::size_t> obj_index;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    objects.push_back(as_string(objs[i], child(op, i)));
    if (!obj_index.emplace(objects.back(), i).second) throw ParseError(child(op, i), "duplicate object");
  }
  auto object_at = [&](const json& v, const std::string& p) {
    auto it = obj_index.find(as_string(v, p));
    if (it == obj_index.end()) throw ParseError(p, "unknown object");
    return it->second;
  };

  std::vector<CategoryArrow> arrows;
  std::map<std::string, std::size_t> arrow_index;
  const std::string mp = child(path, "morphisms");
  const json& ms = member(j, "morphisms", path);
  if (!ms.is_array()) throw ParseError(mp, "expected an array of morphisms");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string ip = child(mp, i);
    std::string name = as_string(member(ms[i], "name", ip), child(ip, "name"));
    std::size_t s = object_at(member(ms[i], "src", ip), child(ip, "src"));
    std::size_t t = object_at(member(ms[i], "tgt", ip), child(ip, "tgt"));
    if (!arrow_index.emplace(name, arrows.size()).second) throw ParseError(child(ip, "name"), "duplicate morphism");
    arrows.push_back({std::move(name), s, t});
  }

  std::vector<std::size_t> identities(objects.size());
  const json* idj = optional_member(j, "identities", path);
  for (std::size_t o = 0; o < objects.size(); ++o) {
    std::string name = "id_" + objects[o];
    if (idj) name = as_string(member(*idj, objects[o], child(path, "identities")), child(child(path, "identities"), objects[o]));
    auto it = arrow_index.find(name);
    if (it == arrow_index.end()) {
      if (idj) throw ParseError(child(child(path, "identities"), objects[o]), "unknown morphism");
      it = arrow_index.emplace(name, arrows.size()).first;
      arrows.push_back({name, o, o});
    }
    identities[o] = it->second;
  }

  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> table;
  if (const json* cj = optional_member(j, "compose", path)) {
    const std::string cp = child(path, "compose");
    if (!cj->is_array()) throw ParseError(cp, "expected an array of [g, f, g∘f] triples");
    for (std::size_t i = 0; i < cj->size(); ++i) {
      const json& row = (*cj)[i];
      const std::string rp = child(cp, i);
      if (!row.is_array() || row.size() != 3) throw ParseError(rp, "expected [g, f, g∘f]");
      std::size_t idx[3];
      for (std::size_t k = 0; k < 3; ++k) {
        auto it = arrow_index.find(as_string(row[k], child(rp, k)));
        if (it == arrow_index.end()) throw ParseError(child(rp, k), "unknown morphism");
        idx[k] = it->second;
      }
      table.emplace_back(idx[0], idx[1], idx[2]);
    }
  }
  return at_path(path, [&] { return FinCategory(std::move(objects), std::move(arrows), std::move(identities), table); });
}

// ---------------------------------------------------------------------------
// Diagrams and transformations

inline std::string map_key(const FinPoset& p, Elem x, Elem y) { return p.name(y) + "<=" + p.name(x); }

inline json write_diagram(const Diagram<FinSets>& d) {
  const FinPoset& P = d.shape();
  json objects = json::object();
  for (Elem x = 0; x < P.size(); ++x) objects[P.name(x)] = write_object(d.at(x));
  json maps = json::object();
  for (const auto& [x, y, m] : d.covering_maps()) maps[map_key(P, x, y)] = write_map_table(m);
  return json{{"poset", write_poset(P)}, {"objects", objects}, {"maps", maps}};
}

inline Elem element_at(const FinPoset& P, std::string_view id, const std::string& path) {
  auto x = P.find(id);
  if (!x) throw ParseError(path, "unknown poset element \"" + std::string(id) + "\"");
  return *x;
}

inline Diagram<FinSets> read_diagram(const json& j, const std::string& path) {
  FinPoset P = read_poset(member(j, "poset", path), child(path, "poset"));
  const std::string op = child(path, "objects");
  const json& oj = member(j, "objects", path);
  std::vector<FinSet> objects(P.size());
  for (Elem x = 0; x < P.size(); ++x) objects[x] = read_object(member(oj, P.name(x), op), child(op, P.name(x)));
  for (auto it = oj.begin(); it != oj.end(); ++it) element_at(P, it.key(), child(op, it.key()));

  std::vector<Diagram<FinSets>::Generator> gens;
  if (const json* mj = optional_member(j, "maps", path)) {
    const std::string mp = child(path, "maps");
    if (!mj->is_object()) throw ParseError(mp, "expected an object keyed \"y<=x\"");
    for (auto it = mj->begin(); it != mj->end(); ++it) {
      const std::string kp = child(mp, it.key());
      const std::string& key = it.key();
      auto sep = key.find("<=");
      if (sep == std::string::npos) throw ParseError(kp, "map key must have the form \"y<=x\"");
      Elem y = element_at(P, key.substr(0, sep), kp);
      Elem x = element_at(P, key.substr(sep + 2), kp);
      if (!P.lt(y, x)) throw ParseError(kp, "map key needs y < x");
      const json& body = it.value();
      // Accept either a morphism object or a bare id table.
      json wrapped;
      const json* mor = &body;
      if (body.is_object() && !body.contains("map")) {
        wrapped = json{{"map", body}};
        mor = &wrapped;
      }
      gens.emplace_back(x, y, read_map_between(*mor, objects[x], objects[y], kp));
    }
  }
  return at_path(path, [&] { return Diagram<FinSets>(std::move(P), std::move(objects), gens); });
}

inline json write_components(const FinPoset& P, const std::vector<FinMap>& comps) {
  json c = json::object();
  for (Elem x = 0; x < P.size(); ++x) c[P.name(x)] = write_map_table(comps[x]);
  return c;
}

inline json write_trans(const NatTrans<FinSets>& t) {
  return json{{"source", write_diagram(t.source())},
              {"target", write_diagram(t.target())},
              {"components", write_components(t.shape(), t.components())}};
}

/// Components keyed by element, each a morphism or a bare id table.
inline std::vector<FinMap> read_components(const json& j, const FinPoset& P, const std::vector<FinSet>& src,
                                           const std::vector<FinSet>& tgt, const std::string& path) {
  std::vector<FinMap> out;
  for (Elem x = 0; x < P.size(); ++x) {
    const std::string xp = child(path, P.name(x));
    const json& body = member(j, P.name(x), path);
    if (body.is_object() && !body.contains("map"))
      out.push_back(read_map_between(json{{"map", body}}, src[x], tgt[x], xp));
    else
      out.push_back(read_map_between(body, src[x], tgt[x], xp));
  }
  for (auto it = j.begin(); it != j.end(); ++it) element_at(P, it.key(), child(path, it.key()));
  return out;
}

inline NatTrans<FinSets> read_trans(const json& j, const std::string& path) {
  Diagram<FinSets> s = read_diagram(member(j, "source", path), child(path, "source"));
  Diagram<FinSets> t = read_diagram(member(j, "target", path), child(path, "target"));
  if (!(s.shape() == t.shape())) throw ParseError(child(path, "target"), "target is indexed by a different poset");
  auto comps = read_components(member(j, "components", path), s.shape(), s.objects(), t.objects(),
                               child(path, "components"));
  return at_path(path, [&] { return NatTrans<FinSets>(std::move(s), std::move(t), std::move(comps)); });
}

// ---------------------------------------------------------------------------
// Pre-morphisms

inline std::vector<Elem> read_alpha(const json& j, const FinPoset& A, const FinPoset& B, const std::string& path) {
  std::vector<Elem> alpha(B.size());
  for (Elem b = 0; b < B.size(); ++b)
    alpha[b] = element_at(A, as_string(member(j, B.name(b), path), child(path, B.name(b))), child(path, B.name(b)));
  for (auto it = j.begin(); it != j.end(); ++it) element_at(B, it.key(), child(path, it.key()));
  return alpha;
}

inline json write_alpha(const FinPoset& A, const FinPoset& B, const std::vector<Elem>& alpha) {
  json a = json::object();
  for (Elem b = 0; b < B.size(); ++b) a[B.name(b)] = A.name(alpha[b]);
  return a;
}

inline std::vector<FinSet> objects_along(const Diagram<FinSets>& F, const std::vector<Elem>& alpha) {
  std::vector<FinSet> out;
  for (Elem a : alpha) out.push_back(F.at(a));
  return out;
}

inline PreMorphism<FinSets> read_pre_morphism(const json& j, const Diagram<FinSets>& F, const Diagram<FinSets>& G,
                                              const std::string& path) {
  auto alpha = read_alpha(member(j, "alpha", path), F.shape(), G.shape(), child(path, "alpha"));
  auto phi = read_components(member(j, "phi", path), G.shape(), objects_along(F, alpha), G.objects(), child(path, "phi"));
  return {std::move(alpha), std::move(phi)};
}

inline json write_pre_morphism(const Diagram<FinSets>& F, const Diagram<FinSets>& G, const PreMorphism<FinSets>& p) {
  return json{{"alpha", write_alpha(F.shape(), G.shape(), p.alpha)}, {"phi", write_components(G.shape(), p.phi)}};
}

/// {"rep": {b: {"index": a, "map": morphism or id table}}}.
inline RawMorphism<FinSets> read_raw_morphism(const json& j, const Diagram<FinSets>& F, const Diagram<FinSets>& G,
                                              const std::string& path) {
  const FinPoset& A = F.shape();
  const FinPoset& B = G.shape();
  const std::string rp = child(path, "rep");
  const json& rep = member(j, "rep", path);
  RawMorphism<FinSets> raw;
  for (Elem b = 0; b < B.size(); ++b) {
    const std::string bp = child(rp, B.name(b));
    const json& e = member(rep, B.name(b), rp);
    Elem a = element_at(A, as_string(member(e, "index", bp), child(bp, "index")), child(bp, "index"));
    const json& m = member(e, "map", bp);
    raw.index.push_back(a);
    if (m.is_object() && !m.contains("map"))
      raw.rep.push_back(read_map_between(json{{"map", m}}, F.at(a), G.at(b), child(bp, "map")));
    else
      raw.rep.push_back(read_map_between(m, F.at(a), G.at(b), child(bp, "map")));
  }
  for (auto it = rep.begin(); it != rep.end(); ++it) element_at(B, it.key(), child(rp, it.key()));
  return raw;
}

inline json write_raw_morphism(const Diagram<FinSets>& F, const Diagram<FinSets>& G, const RawMorphism<FinSets>& raw) {
  json rep = json::object();
  for (Elem b = 0; b < G.size(); ++b)
    rep[G.shape().name(b)] = {{"index", F.shape().name(raw.index[b])}, {"map", write_map_table(raw.rep[b])}};
  return json{{"rep", rep}};
}

inline ArrowPreMorphism<FinSets> read_arrow_pre_morphism(const json& j, const NatTrans<FinSets>& f,
                                                         const NatTrans<FinSets>& t, const std::string& path) {
  auto alpha = read_alpha(member(j, "alpha", path), f.shape(), t.shape(), child(path, "alpha"));
  auto phi = read_components(member(j, "phi", path), t.shape(), objects_along(f.source(), alpha), t.source().objects(),
                             child(path, "phi"));
  auto psi = read_components(member(j, "psi", path), t.shape(), objects_along(f.target(), alpha), t.target().objects(),
                             child(path, "psi"));
  return {std::move(alpha), std::move(phi), std::move(psi)};
}

// ---------------------------------------------------------------------------
// Lifting problems: {"left": morphism, "right": transformation,
//                    "top": {t: table}, "bottom": {t: table}}

inline LiftingProblem<FinSets> read_lifting_problem(const json& j, const std::string& path) {
  FinMap left = read_morphism(member(j, "left", path), child(path, "left"));
  NatTrans<FinSets> right = read_trans(member(j, "right", path), child(path, "right"));
  const FinPoset& T = right.shape();
  std::vector<FinSet> A(T.size(), left.src), B(T.size(), left.tgt);
  auto top = read_components(member(j, "top", path), T, A, right.source().objects(), child(path, "top"));
  auto bottom = read_components(member(j, "bottom", path), T, B, right.target().objects(), child(path, "bottom"));
  return {std::move(left), std::move(right), std::move(top), std::move(bottom)};
}

inline json write_lifting_problem(const LiftingProblem<FinSets>& p) {
  return json{{"left", write_morphism(p.left)},
              {"right", write_trans(p.right)},
              {"top", write_components(p.right.shape(), p.top)},
              {"bottom", write_components(p.right.shape(), p.bottom)}};
}

// ---------------------------------------------------------------------------
// Results

inline json write_reedy(const ReedyFactorization<FinSets>& r) {
  json failures = r.report.failures;
  return json{{"mid", write_diagram(r.mid)},
              {"g", write_components(r.mid.shape(), r.g.components())},
              {"h", write_components(r.mid.shape(), r.h.components())},
              {"checks",
               {{"composite", r.report.composite},
                {"levelwise_N", r.report.levelwise_N},
                {"special_M", r.report.special_M}}},
              {"failures", failures}};
}

inline json write_tower(const CofinalTower& T) {
  const auto& I = T.source();
  json levels = json::array();
  for (std::size_t n = 0; n <= T.levels(); ++n) levels.push_back(T.level_size(n));
  json elems = json::array();
  for (const auto& e : T.elements()) {
    json below = json::array(), legs = json::array();
    for (std::size_t r : e.reysha) below.push_back(T.element(r).name);
    for (auto m : e.legs) legs.push_back(I.arrow(m).name);
    elems.push_back({{"name", e.name}, {"level", e.level}, {"apex", I.object(e.apex)}, {"below", below}, {"legs", legs}});
  }
  return json{{"levels", T.levels()}, {"reysha_cap", T.reysha_cap()}, {"level_sizes", levels}, {"elements", elems}};
}

inline json write_over_object(const CofinalTower& T, const OverObject& o) {
  return json{{"element", T.element(o.element).name}, {"arrow", T.source().arrow(o.arrow).name}};
}

inline json write_over_report(const CofinalTower& T, const OverCategoryReport& r) {
  json stray = json::array();
  for (const auto& o : r.stray) stray.push_back(write_over_object(T, o));
  return json{{"object", T.source().object(r.object)},
              {"nonempty", r.nonempty},
              {"connected", to_string(r.connectivity)},
              {"objects", r.objects},
              {"components", r.components},
              {"stray", stray}};
}

inline json envelope(std::string_view command, json body) {
  json out{{"schema_version", kSchemaVersion}, {"command", command}};
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

}  // namespace procat::io
