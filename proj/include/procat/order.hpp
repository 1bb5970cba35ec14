#pragma once

// Finite posets, Reyshas (downward closed subsets), degree functions and
// directedness for posets and for small finite categories.
//
// Order convention: a poset is viewed as a category with a single morphism
// u -> v iff u >= v. A diagram over a poset therefore carries maps from
// higher elements to lower ones.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "procat/errors.hpp"

namespace procat {

using Elem = std::size_t;

class FinPoset;

/// A downward closed subset of a FinPoset. Members are kept sorted by
/// element index (the canonical input order).
class Reysha {
 public:
  Reysha() = default;

  /// Validates downward closure against `parent`; throws ContractViolation.
  static Reysha of(const FinPoset& parent, std::vector<Elem> members);

  const std::vector<Elem>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Elem x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
  }

  friend bool operator==(const Reysha&, const Reysha&) = default;

 private:
  explicit Reysha(std::vector<Elem> members) : members_(std::move(members)) {}
  friend class FinPoset;
  std::vector<Elem> members_;
};

/// Finite poset with the full reflexive-transitive order relation stored
/// densely. Immutable after construction.
class FinPoset {
 public:
  FinPoset() = default;

  /// Builds the poset generated by `generating_le` (pairs x <= y).
  /// Throws ContractViolation on duplicate ids, unknown ids or cycles.
  FinPoset(std::vector<std::string> elements,
           const std::vector<std::pair<std::string, std::string>>& generating_le) {
    init_names(std::move(elements));
    std::vector<std::pair<Elem, Elem>> pairs;
    pairs.reserve(generating_le.size());
    for (const auto& [x, y] : generating_le) pairs.emplace_back(index_of(x), index_of(y));
    init_order(pairs);
  }

  static FinPoset from_indices(std::vector<std::string> elements,
                               const std::vector<std::pair<Elem, Elem>>& generating_le) {
    FinPoset p;
    p.init_names(std::move(elements));
    for (const auto& [x, y] : generating_le)
      if (x >= p.size() || y >= p.size())
        throw ContractViolation("poset relation refers to an element out of range");
    p.init_order(generating_le);
    return p;
  }

  /// Linear order 0 < 1 < ... < n-1 with ids given by `prefix` + index.
  static FinPoset chain(std::size_t n, std::string_view prefix = "") {
    std::vector<std::string> names;
    std::vector<std::pair<Elem, Elem>> le;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(std::string(prefix) + std::to_string(i));
      if (i > 0) le.emplace_back(i - 1, i);
    }
    return from_indices(std::move(names), le);
  }

  static FinPoset antichain(std::vector<std::string> elements) {
    return from_indices(std::move(elements), {});
  }

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Elem x) const { return names_.at(x); }

  std::optional<Elem> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Elem index_of(std::string_view id) const {
    if (auto x = find(id)) return *x;
    throw ContractViolation("unknown poset element '" + std::string(id) + "'");
  }

  bool le(Elem x, Elem y) const { return le_[x * size() + y] != 0; }
  bool lt(Elem x, Elem y) const { return x != y && le(x, y); }
  bool comparable(Elem x, Elem y) const { return le(x, y) || le(y, x); }

  /// Length of the longest chain a_0 < ... < a_n = x.
  std::size_t degree(Elem x) const {
    check(x);
    return degree_[x];
  }
  std::size_t degree(std::string_view id) const { return degree_[index_of(id)]; }

  std::size_t height() const {
    return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
  }

  /// Elements sorted by (degree, index): the processing order of every
  /// degree-recursive construction in this library.
  const std::vector<Elem>& degree_order() const noexcept { return degree_order_; }

  /// Position of `x` in degree_order(); used as the canonical search rank.
  std::size_t rank(Elem x) const { return rank_[x]; }

  /// {a : d(a) <= n}; empty for n = -1.
  Reysha level_set(long n) const {
    std::vector<Elem> out;
    for (Elem x = 0; x < size(); ++x)
      if (n >= 0 && degree_[x] <= static_cast<std::size_t>(n)) out.push_back(x);
    return Reysha(std::move(out));
  }

  std::vector<Elem> down_set(Elem x) const {
    check(x);
    std::vector<Elem> out;
    for (Elem y = 0; y < size(); ++y)
      if (le(y, x)) out.push_back(y);
    return out;
  }

  std::vector<Elem> strict_down_set(Elem x) const {
    check(x);
    std::vector<Elem> out;
    for (Elem y = 0; y < size(); ++y)
      if (lt(y, x)) out.push_back(y);
    return out;
  }

  std::vector<Elem> strict_up_set(Elem x) const {
    check(x);
    std::vector<Elem> out;
    for (Elem y = 0; y < size(); ++y)
      if (lt(x, y)) out.push_back(y);
    return out;
  }

  /// Principal downset T_x as a Reysha.
  Reysha principal(Elem x) const { return Reysha(down_set(x)); }

  /// Downward closure of an arbitrary subset.
  Reysha closure(std::span<const Elem> subset) const {
    std::vector<char> in(size(), 0);
    for (Elem s : subset) {
      check(s);
      for (Elem y = 0; y < size(); ++y)
        if (le(y, s)) in[y] = 1;
    }
    std::vector<Elem> out;
    for (Elem y = 0; y < size(); ++y)
      if (in[y]) out.push_back(y);
    return Reysha(std::move(out));
  }

  bool is_reysha(std::span<const Elem> subset) const {
    std::vector<char> in(size(), 0);
    for (Elem s : subset) {
      check(s);
      in[s] = 1;
    }
    for (Elem x = 0; x < size(); ++x) {
      if (!in[x]) continue;
      for (Elem y = 0; y < size(); ++y)
        if (lt(y, x) && !in[y]) return false;
    }
    return true;
  }

  bool is_upper_bound(Elem c, std::span<const Elem> subset) const {
    return std::all_of(subset.begin(), subset.end(), [&](Elem r) { return le(r, c); });
  }

  /// Nonempty and every finite Reysha has an upper bound. For a finite
  /// poset it suffices to check the whole poset.
  bool is_directed() const {
    if (empty()) return false;
    for (Elem c = 0; c < size(); ++c) {
      bool top = true;
      for (Elem r = 0; r < size() && top; ++r) top = le(r, c);
      if (top) return true;
    }
    return false;
  }

  std::vector<Elem> maximal_elements(std::span<const Elem> subset) const {
    std::vector<Elem> out;
    for (Elem x : subset) {
      bool maximal = std::none_of(subset.begin(), subset.end(),
                                  [&](Elem y) { return lt(x, y); });
      if (maximal) out.push_back(x);
    }
    return out;
  }

  /// Covering pairs (x, y) with x < y and nothing strictly between.
  std::vector<std::pair<Elem, Elem>> covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem x = 0; x < size(); ++x)
      for (Elem y = 0; y < size(); ++y) {
        if (!lt(x, y)) continue;
        bool cover = true;
        for (Elem z = 0; z < size() && cover; ++z)
          if (lt(x, z) && lt(z, y)) cover = false;
        if (cover) out.emplace_back(x, y);
      }
    return out;
  }

  /// Sub-poset on `members` (kept in canonical order). Element i of the
  /// result is members[i] of this poset.
  FinPoset induced(std::span<const Elem> members) const {
    std::vector<Elem> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::string> names;
    std::vector<std::pair<Elem, Elem>> le_pairs;
    for (Elem i = 0; i < sorted.size(); ++i) {
      names.push_back(name(sorted[i]));
      for (Elem j = 0; j < sorted.size(); ++j)
        if (i != j && le(sorted[i], sorted[j])) le_pairs.emplace_back(i, j);
    }
    return from_indices(std::move(names), le_pairs);
  }

  friend bool operator==(const FinPoset& a, const FinPoset& b) {
    return a.names_ == b.names_ && a.le_ == b.le_;
  }

 private:
  void check(Elem x) const {
    if (x >= size()) throw ContractViolation("poset element index out of range");
  }

  void init_names(std::vector<std::string> elements) {
    names_ = std::move(elements);
    for (Elem i = 0; i < names_.size(); ++i)
      if (!index_.emplace(names_[i], i).second)
        throw ContractViolation("duplicate poset element '" + names_[i] + "'");
  }

  void init_order(const std::vector<std::pair<Elem, Elem>>& generating) {
    const std::size_t n = size();
    le_.assign(n * n, 0);
    for (Elem x = 0; x < n; ++x) le_[x * n + x] = 1;
    for (const auto& [x, y] : generating) le_[x * n + y] = 1;
    for (Elem k = 0; k < n; ++k)
      for (Elem i = 0; i < n; ++i)
        if (le_[i * n + k])
          for (Elem j = 0; j < n; ++j)
            if (le_[k * n + j]) le_[i * n + j] = 1;
    for (Elem i = 0; i < n; ++i)
      for (Elem j = i + 1; j < n; ++j)
        if (le_[i * n + j] && le_[j * n + i])
          throw ContractViolation("order relation has a cycle through '" + names_[i] +
                                  "' and '" + names_[j] + "'");

    // |T_x| strictly increases along <, so it is a valid topological key.
    std::vector<std::size_t> below(n, 0);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) below[x] += le_[y * n + x];
    std::vector<Elem> topo(n);
    std::iota(topo.begin(), topo.end(), Elem{0});
    std::stable_sort(topo.begin(), topo.end(),
                     [&](Elem a, Elem b) { return below[a] < below[b]; });
    degree_.assign(n, 0);
    for (Elem x : topo)
      for (Elem y = 0; y < n; ++y)
        if (y != x && le_[y * n + x]) degree_[x] = std::max(degree_[x], degree_[y] + 1);

    degree_order_.resize(n);
    std::iota(degree_order_.begin(), degree_order_.end(), Elem{0});
    std::stable_sort(degree_order_.begin(), degree_order_.end(),
                     [&](Elem a, Elem b) { return degree_[a] < degree_[b]; });
    rank_.assign(n, 0);
    for (std::size_t r = 0; r < n; ++r) rank_[degree_order_[r]] = r;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, Elem> index_;
  std::vector<char> le_;
  std::vector<std::size_t> degree_;
  std::vector<Elem> degree_order_;
  std::vector<std::size_t> rank_;
};

inline Reysha Reysha::of(const FinPoset& parent, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!parent.is_reysha(members))
    throw ContractViolation("subset is not downward closed");
  return Reysha(std::move(members));
}

/// Adjoins a new greatest element (an initial object of the category view,
/// since u -> v iff u >= v). The empty poset becomes a single point.
inline FinPoset cone_extend(const FinPoset& p, std::string apex = "inf") {
  while (p.find(apex)) apex += "'";
  std::vector<std::string> names = p.names();
  names.push_back(apex);
  std::vector<std::pair<Elem, Elem>> le;
  const Elem top = p.size();
  for (Elem x = 0; x < p.size(); ++x) {
    le.emplace_back(x, top);
    for (Elem y = 0; y < p.size(); ++y)
      if (x != y && p.le(x, y)) le.emplace_back(x, y);
  }
  return FinPoset::from_indices(std::move(names), le);
}

// ---------------------------------------------------------------------------
// Small finite categories

struct CategoryArrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

/// A finite category given by objects, arrows, identities and a total
/// composition table on composable pairs. Associativity and unit laws are
/// checked exhaustively on construction.
class FinCategory {
 public:
  using Mor = std::size_t;

  FinCategory() = default;

  /// `identities[o]` is the arrow index of id_o. `composition` lists
  /// (g, f, g∘f) for composable pairs; pairs involving an identity may be
  /// omitted.
  FinCategory(std::vector<std::string> objects, std::vector<CategoryArrow> arrows,
              std::vector<Mor> identities,
              const std::vector<std::tuple<Mor, Mor, Mor>>& composition)
      : objects_(std::move(objects)), arrows_(std::move(arrows)),
        identities_(std::move(identities)) {
    const std::size_t m = arrows_.size();
    for (const auto& a : arrows_)
      if (a.source >= objects_.size() || a.target >= objects_.size())
        throw ContractViolation("arrow '" + a.name + "' has an unknown endpoint");
    if (identities_.size() != objects_.size())
      throw ContractViolation("every object needs exactly one identity");
    for (std::size_t o = 0; o < objects_.size(); ++o) {
      const Mor id = identities_[o];
      if (id >= m || arrows_[id].source != o || arrows_[id].target != o)
        throw ContractViolation("identity of '" + objects_[o] + "' is not an endomorphism");
    }
    table_.assign(m * m, kUndefined);
    for (Mor f = 0; f < m; ++f) {
      table_[identities_[arrows_[f].target] * m + f] = f;
      table_[f * m + identities_[arrows_[f].source]] = f;
    }
    for (const auto& [g, f, h] : composition) {
      if (g >= m || f >= m || h >= m) throw ContractViolation("composition entry out of range");
      if (arrows_[f].target != arrows_[g].source)
        throw ContractViolation("composition entry " + arrows_[g].name + "∘" + arrows_[f].name +
                                " is not composable");
      if (arrows_[h].source != arrows_[f].source || arrows_[h].target != arrows_[g].target)
        throw ContractViolation("composite " + arrows_[h].name + " has the wrong type");
      Mor& slot = table_[g * m + f];
      if (slot != kUndefined && slot != h)
        throw ContractViolation("conflicting composition for " + arrows_[g].name + "∘" +
                                arrows_[f].name);
      slot = h;
    }
    for (Mor f = 0; f < m; ++f)
      for (Mor g = 0; g < m; ++g)
        if (arrows_[f].target == arrows_[g].source && table_[g * m + f] == kUndefined)
          throw ContractViolation("missing composition " + arrows_[g].name + "∘" +
                                  arrows_[f].name);
    for (Mor f = 0; f < m; ++f)
      for (Mor g = 0; g < m; ++g) {
        if (arrows_[f].target != arrows_[g].source) continue;
        for (Mor h = 0; h < m; ++h) {
          if (arrows_[g].target != arrows_[h].source) continue;
          if (compose(h, compose(g, f)) != compose(compose(h, g), f))
            throw ContractViolation("composition is not associative at (" + arrows_[h].name +
                                    ", " + arrows_[g].name + ", " + arrows_[f].name + ")");
        }
      }
    for (std::size_t o = 0; o < objects_.size(); ++o) index_.emplace(objects_[o], o);
  }

  /// The category of a poset: one arrow u -> v iff u >= v.
  static FinCategory from_poset(const FinPoset& p) {
    std::vector<CategoryArrow> arrows;
    std::vector<Mor> ids(p.size());
    std::vector<std::size_t> slot(p.size() * p.size(), kUndefined);
    for (Elem u = 0; u < p.size(); ++u)
      for (Elem v = 0; v < p.size(); ++v) {
        if (!p.le(v, u)) continue;
        slot[u * p.size() + v] = arrows.size();
        if (u == v) ids[u] = arrows.size();
        arrows.push_back({u == v ? "id_" + p.name(u) : p.name(u) + ">=" + p.name(v), u, v});
      }
    std::vector<std::tuple<Mor, Mor, Mor>> comp;
    for (Elem u = 0; u < p.size(); ++u)
      for (Elem v = 0; v < p.size(); ++v)
        for (Elem w = 0; w < p.size(); ++w)
          if (p.le(v, u) && p.le(w, v))
            comp.emplace_back(slot[v * p.size() + w], slot[u * p.size() + v],
                              slot[u * p.size() + w]);
    return FinCategory(p.names(), std::move(arrows), std::move(ids), comp);
  }

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::string& object(std::size_t o) const { return objects_.at(o); }
  const CategoryArrow& arrow(Mor f) const { return arrows_.at(f); }
  const std::vector<CategoryArrow>& arrows() const noexcept { return arrows_; }
  Mor identity(std::size_t o) const { return identities_.at(o); }
  bool is_identity(Mor f) const { return identities_.at(arrows_.at(f).source) == f; }

  std::optional<std::size_t> find_object(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<Mor> find_arrow(std::string_view name) const {
    for (Mor f = 0; f < arrows_.size(); ++f)
      if (arrows_[f].name == name) return f;
    return std::nullopt;
  }

  /// g ∘ f; throws when not composable.
  Mor compose(Mor g, Mor f) const {
    const Mor h = table_.at(g * arrows_.size() + f);
    if (h == kUndefined)
      throw ContractViolation("arrows " + arrows_[g].name + " and " + arrows_[f].name +
                              " are not composable");
    return h;
  }

  std::vector<Mor> hom(std::size_t s, std::size_t t) const {
    std::vector<Mor> out;
    for (Mor f = 0; f < arrows_.size(); ++f)
      if (arrows_[f].source == s && arrows_[f].target == t) out.push_back(f);
    return out;
  }

 private:
  static constexpr std::size_t kUndefined = static_cast<std::size_t>(-1);

  std::vector<std::string> objects_;
  std::vector<CategoryArrow> arrows_;
  std::vector<Mor> identities_;
  std::vector<std::size_t> table_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Adjoins an initial object with a unique arrow to every object.
inline FinCategory cone_extend(const FinCategory& c, std::string apex = "inf") {
  while (c.find_object(apex)) apex += "'";
  std::vector<std::string> objects = c.objects();
  const std::size_t top = objects.size();
  objects.push_back(apex);
  std::vector<CategoryArrow> arrows = c.arrows();
  std::vector<FinCategory::Mor> ids;
  for (std::size_t o = 0; o < c.object_count(); ++o) ids.push_back(c.identity(o));
  ids.push_back(arrows.size());
  arrows.push_back({"id_" + apex, top, top});
  std::vector<FinCategory::Mor> from_apex(c.object_count());
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    from_apex[o] = arrows.size();
    arrows.push_back({apex + "->" + c.object(o), top, o});
  }
  std::vector<std::tuple<FinCategory::Mor, FinCategory::Mor, FinCategory::Mor>> comp;
  for (FinCategory::Mor g = 0; g < c.arrow_count(); ++g) {
    for (FinCategory::Mor f = 0; f < c.arrow_count(); ++f)
      if (c.arrow(f).target == c.arrow(g).source) comp.emplace_back(g, f, c.compose(g, f));
    comp.emplace_back(g, from_apex[c.arrow(g).source], from_apex[c.arrow(g).target]);
  }
  return FinCategory(std::move(objects), std::move(arrows), std::move(ids), comp);
}

/// Outcome of the exhaustive directedness check. `axiom` is 0 when the
/// category is directed, otherwise the first violated axiom (1: nonempty,
/// 2: pairs of objects dominated, 3: parallel pairs equalized).
struct DirectednessVerdict {
  bool directed = false;
  int axiom = 0;
  std::vector<std::string> witness;
};

inline DirectednessVerdict is_directed_category(const FinCategory& c) {
  if (c.object_count() == 0) return {false, 1, {}};
  for (std::size_t s = 0; s < c.object_count(); ++s)
    for (std::size_t t = s; t < c.object_count(); ++t) {
      bool found = false;
      for (std::size_t u = 0; u < c.object_count() && !found; ++u)
        found = !c.hom(u, s).empty() && !c.hom(u, t).empty();
      if (!found) return {false, 2, {c.object(s), c.object(t)}};
    }
  for (FinCategory::Mor f = 0; f < c.arrow_count(); ++f)
    for (FinCategory::Mor g = f + 1; g < c.arrow_count(); ++g) {
      if (c.arrow(f).source != c.arrow(g).source || c.arrow(f).target != c.arrow(g).target)
        continue;
      bool found = false;
      for (FinCategory::Mor h = 0; h < c.arrow_count() && !found; ++h)
        found = c.arrow(h).target == c.arrow(f).source && c.compose(f, h) == c.compose(g, h);
      if (!found) return {false, 3, {c.arrow(f).name, c.arrow(g).name}};
    }
  return {true, 0, {}};
}

}  // namespace procat
