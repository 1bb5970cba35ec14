#pragma once

// Level-by-level construction of a cofinite directed poset A with a functor
// p: A → I for a finite directed category I, truncated at k levels and at
// Reysha size m, together with directedness and cofinality checks.
//
// A^0 = Ob(I). B^{n+1} holds every pair (R, cone) with R a Reysha of A^n of
// size at most m and cone a functor R^◁ → I extending p on R; c < (R, cone)
// iff c ∈ R. Elements equal as data but built at different levels are
// distinct elements.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "procat/errors.hpp"
#include "procat/order.hpp"

namespace procat {

struct TowerElement {
  std::string name;
  std::size_t level = 0;
  std::vector<std::size_t> reysha;  // strict downset, sorted
  std::size_t apex = 0;             // p(element), an object of I
  std::vector<FinCategory::Mor> legs;  // p(element → r) for r in reysha
};

inline constexpr std::size_t kDefaultElementCap = 10'000;

class CofinalTower {
 public:
  using Mor = FinCategory::Mor;

  const FinCategory& source() const noexcept { return I_; }
  std::size_t levels() const noexcept { return level_end_.empty() ? 0 : level_end_.size() - 1; }
  std::size_t reysha_cap() const noexcept { return m_; }
  std::size_t size() const noexcept { return elems_.size(); }
  /// |A^n|.
  std::size_t level_size(std::size_t n) const { return level_end_.at(n); }
  const TowerElement& element(std::size_t a) const { return elems_.at(a); }
  const std::vector<TowerElement>& elements() const noexcept { return elems_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t a = 0; a < elems_.size(); ++a)
      if (elems_[a].name == name) return a;
    return std::nullopt;
  }

  bool lt(std::size_t r, std::size_t c) const {
    const auto& R = elems_.at(c).reysha;
    return std::binary_search(R.begin(), R.end(), r);
  }
  bool le(std::size_t r, std::size_t c) const { return r == c || lt(r, c); }

  std::size_t p(std::size_t a) const { return elems_.at(a).apex; }

  /// p(c → r) for r <= c.
  Mor p_map(std::size_t c, std::size_t r) const {
    if (c == r) return I_.identity(p(c));
    const auto& e = elems_.at(c);
    auto it = std::lower_bound(e.reysha.begin(), e.reysha.end(), r);
    if (it == e.reysha.end() || *it != r) throw ContractViolation("p_map: elements are not comparable");
    return e.legs[static_cast<std::size_t>(it - e.reysha.begin())];
  }

  /// A^n as a FinPoset (dense; meant for small towers and output).
  FinPoset poset(std::size_t n) const {
    const std::size_t N = level_size(n);
    std::vector<std::string> names;
    std::vector<std::pair<Elem, Elem>> le;
    for (std::size_t a = 0; a < N; ++a) {
      names.push_back(elems_[a].name);
      for (std::size_t r : elems_[a].reysha) le.emplace_back(r, a);
    }
    return FinPoset::from_indices(std::move(names), le);
  }

  /// Reyshas of A^n with at most `cap` members, ordered by (size, members).
  std::vector<std::vector<std::size_t>> reyshas(std::size_t n, std::size_t cap) const {
    const std::size_t N = level_size(n);
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> count(N, 0);  // multiplicity inside the current closure
    std::size_t closure_size = 0;
    std::vector<std::size_t> chosen;

    auto add = [&](std::size_t x, int sign) {
      auto bump = [&](std::size_t y) {
        if (sign > 0) {
          if (count[y]++ == 0) ++closure_size;
        } else if (--count[y] == 0) {
          --closure_size;
        }
      };
      bump(x);
      for (std::size_t y : elems_[x].reysha) bump(y);
    };
    // Antichains of maximal elements, in increasing index order.
    auto descend = [&](auto&& self, std::size_t from) -> void {
      std::vector<std::size_t> members;
      for (std::size_t y = 0; y < N; ++y)
        if (count[y]) members.push_back(y);
      out.push_back(std::move(members));
      for (std::size_t x = from; x < N; ++x) {
        bool incomparable = std::none_of(chosen.begin(), chosen.end(),
                                         [&](std::size_t c) { return le(x, c) || le(c, x); });
        if (!incomparable) continue;
        add(x, +1);
        if (closure_size <= cap) {
          chosen.push_back(x);
          self(self, x + 1);
          chosen.pop_back();
        }
        add(x, -1);
      }
    };
    descend(descend, 0);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  }

  /// All cones over R extending p: apex j and compatible legs, in
  /// canonical order (apex first, then legs lexicographically).
  std::vector<std::pair<std::size_t, std::vector<Mor>>> cones(const std::vector<std::size_t>& R) const {
    std::vector<std::pair<std::size_t, std::vector<Mor>>> out;
    std::vector<std::size_t> maximal;
    for (std::size_t r : R)
      if (std::none_of(R.begin(), R.end(), [&](std::size_t s) { return lt(r, s); })) maximal.push_back(r);
    for (std::size_t j = 0; j < I_.object_count(); ++j) {
      std::vector<std::vector<Mor>> options;
      bool possible = true;
      for (std::size_t r : maximal) {
        options.push_back(I_.hom(j, p(r)));
        if (options.back().empty()) possible = false;
      }
      if (!possible) continue;
      std::vector<std::size_t> pick(maximal.size(), 0);
      while (true) {
        std::vector<Mor> legs(R.size());
        std::vector<char> set(R.size(), 0);
        bool ok = true;
        for (std::size_t i = 0; i < maximal.size() && ok; ++i) {
          const Mor mu = options[i][pick[i]];
          for (std::size_t k = 0; k < R.size() && ok; ++k) {
            if (!le(R[k], maximal[i])) continue;
            const Mor leg = I_.compose(p_map(maximal[i], R[k]), mu);
            if (set[k] && legs[k] != leg) ok = false;
            legs[k] = leg;
            set[k] = 1;
          }
        }
        if (ok) out.emplace_back(j, std::move(legs));
        std::size_t i = maximal.size();
        while (i > 0 && pick[i - 1] + 1 == options[i - 1].size()) pick[--i] = 0;
        if (i == 0) break;
        ++pick[i - 1];
      }
    }
    return out;
  }

 private:
  friend CofinalTower build_tower(const FinCategory&, std::size_t, std::size_t, std::size_t);

  FinCategory I_;
  std::size_t m_ = 0;
  std::vector<TowerElement> elems_;
  std::vector<std::size_t> level_end_;
};

/// Requires I directed. Throws BudgetExceeded past `element_cap` elements.
inline CofinalTower build_tower(const FinCategory& I, std::size_t levels, std::size_t reysha_cap,
                                std::size_t element_cap = kDefaultElementCap) {
  auto verdict = is_directed_category(I);
  if (!verdict.directed)
    throw ContractViolation("index category is not directed (axiom " + std::to_string(verdict.axiom) + ")");
  CofinalTower T;
  T.I_ = I;
  T.m_ = reysha_cap;
  for (std::size_t o = 0; o < I.object_count(); ++o)
    T.elems_.push_back({I.object(o), 0, {}, o, {}});
  if (T.elems_.size() > element_cap) throw BudgetExceeded("tower exceeds the element cap at level 0");
  T.level_end_.push_back(T.elems_.size());
  for (std::size_t n = 0; n < levels; ++n) {
    std::vector<TowerElement> fresh;
    for (const auto& R : T.reyshas(n, reysha_cap))
      for (auto& [j, legs] : T.cones(R)) {
        fresh.push_back({"b" + std::to_string(n + 1) + "." + std::to_string(fresh.size()), n + 1, R, j, std::move(legs)});
        if (T.elems_.size() + fresh.size() > element_cap)
          throw BudgetExceeded("tower exceeds the element cap of " + std::to_string(element_cap) + " at level " +
                               std::to_string(n + 1));
      }
    for (auto& e : fresh) T.elems_.push_back(std::move(e));
    T.level_end_.push_back(T.elems_.size());
  }
  return T;
}

struct DirectednessReport {
  bool directed = true;
  std::size_t level = 0;
  std::size_t checked = 0;
  std::optional<std::vector<std::string>> unbounded;  // first Reysha without a bound
};

/// Every Reysha of A^{k-1} with at most `cap` members has an upper bound in
/// A^k. At k = 0 the Reyshas of A^0 must be bounded in A^0.
inline DirectednessReport check_tower_directedness(const CofinalTower& T, std::size_t cap) {
  DirectednessReport rep;
  const std::size_t k = T.levels();
  rep.level = k;
  const std::size_t from_level = k == 0 ? 0 : k - 1;
  const std::size_t N = T.level_size(k);
  for (const auto& R : T.reyshas(from_level, cap)) {
    ++rep.checked;
    bool bounded = false;
    for (std::size_t c = 0; c < N && !bounded; ++c)
      bounded = std::all_of(R.begin(), R.end(), [&](std::size_t r) { return T.le(r, c); });
    if (!bounded) {
      rep.directed = false;
      std::vector<std::string> names;
      for (std::size_t r : R) names.push_back(T.element(r).name);
      rep.unbounded = std::move(names);
      return rep;
    }
  }
  return rep;
}

enum class Connectivity { connected, inconclusive, refuted };

inline const char* to_string(Connectivity c) {
  switch (c) {
    case Connectivity::connected: return "true";
    case Connectivity::inconclusive: return "inconclusive";
    case Connectivity::refuted: return "refuted";
  }
  return "?";
}

/// An object (a, u: p(a) → i) of the over-category.
struct OverObject {
  std::size_t element = 0;
  FinCategory::Mor arrow = 0;
};

struct OverCategoryReport {
  std::size_t object = 0;
  bool nonempty = false;
  Connectivity connectivity = Connectivity::inconclusive;
  std::size_t objects = 0;
  std::size_t components = 0;
  /// For each component other than the one of (i, id_i): a representative.
  std::vector<OverObject> stray;
  /// Zigzag from each listed object back to (i, id_i) when connected:
  /// pairs (child, parent) in the spanning forest.
  std::vector<std::pair<OverObject, OverObject>> witnesses;
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace detail

/// Can (a1, u1) and (a2, u2) be joined by a roof (c, w) with c above both in
/// some later level? That needs a cone over down(a1) ∪ down(a2) whose legs
/// satisfy u1 μ_{a1} = u2 μ_{a2}.
inline bool roof_exists(const CofinalTower& T, OverObject x, OverObject y) {
  std::vector<std::size_t> R;
  for (std::size_t a = 0; a < T.size(); ++a)
    if (T.le(a, x.element) || T.le(a, y.element)) R.push_back(a);
  const auto& I = T.source();
  const auto ix = static_cast<std::size_t>(std::find(R.begin(), R.end(), x.element) - R.begin());
  const auto iy = static_cast<std::size_t>(std::find(R.begin(), R.end(), y.element) - R.begin());
  for (const auto& [j, legs] : T.cones(R))
    if (I.compose(x.arrow, legs[ix]) == I.compose(y.arrow, legs[iy])) return true;
  return false;
}

/// Over-category q/i for every object i of I. Objects over A^{k-1} (A^0
/// when k = 0) must be joined to (i, id_i) by zigzags through A^k. A stray
/// object that no roof at a later level could join is "refuted"; otherwise
/// the verdict is "inconclusive".
inline std::vector<OverCategoryReport> check_cofinality(const CofinalTower& T) {
  const auto& I = T.source();
  const std::size_t N = T.size();
  std::vector<OverCategoryReport> out;
  for (std::size_t i = 0; i < I.object_count(); ++i) {
    OverCategoryReport rep;
    rep.object = i;
    std::vector<OverObject> objs;
    std::vector<std::vector<std::size_t>> by_element(N);
    for (std::size_t a = 0; a < N; ++a)
      for (auto u : I.hom(T.p(a), i)) {
        by_element[a].push_back(objs.size());
        objs.push_back({a, u});
      }
    rep.objects = objs.size();
    // (i, id_i) sits in A^0 at index i.
    std::optional<std::size_t> base;
    for (std::size_t o : by_element[i])
      if (objs[o].arrow == I.identity(i)) base = o;
    rep.nonempty = base.has_value();
    detail::UnionFind uf(objs.size());
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t r : T.element(a).reysha)
        for (std::size_t o : by_element[r]) {
          const auto u = I.compose(objs[o].arrow, T.p_map(a, r));
          for (std::size_t o2 : by_element[a])
            if (objs[o2].arrow == u) {
              if (uf.unite(o, o2)) edges.emplace_back(o2, o);
              break;
            }
        }
    std::vector<std::size_t> roots;
    for (std::size_t o = 0; o < objs.size(); ++o)
      if (uf.find(o) == o) roots.push_back(o);
    rep.components = roots.size();
    for (const auto& [x, y] : edges) rep.witnesses.push_back({objs[x], objs[y]});
    if (!rep.nonempty) {
      rep.connectivity = Connectivity::refuted;
    } else {
      // Objects over A^{k-1} must meet (i, id_i) through zigzags in A^k.
      rep.connectivity = Connectivity::connected;
      const std::size_t inner = T.level_size(T.levels() == 0 ? 0 : T.levels() - 1);
      std::vector<char> reported(objs.size(), 0);
      for (std::size_t o = 0; o < objs.size(); ++o) {
        if (objs[o].element >= inner) continue;
        const std::size_t root = uf.find(o);
        if (root == uf.find(*base) || reported[root]) continue;
        reported[root] = 1;
        rep.stray.push_back(objs[o]);
        if (rep.connectivity == Connectivity::connected) rep.connectivity = Connectivity::inconclusive;
        if (!roof_exists(T, objs[o], objs[*base])) rep.connectivity = Connectivity::refuted;
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

/// Given c and h: i' → p(c), the element c' = (down(c), p(c→·) ∘ h) one
/// level above c, checked to satisfy c' > c, p(c') = i' and p(c' → c) = h.
inline std::size_t equalizer_refinement(const CofinalTower& T, std::size_t c, FinCategory::Mor h) {
  const auto& I = T.source();
  if (I.arrow(h).target != T.p(c)) throw ContractViolation("refinement arrow does not end at p(c)");
  std::vector<std::size_t> R = T.element(c).reysha;
  R.push_back(c);
  std::sort(R.begin(), R.end());
  std::vector<FinCategory::Mor> legs;
  for (std::size_t r : R) legs.push_back(I.compose(T.p_map(c, r), h));
  const std::size_t level = T.element(c).level + 1;
  for (std::size_t a = 0; a < T.size(); ++a) {
    const auto& e = T.element(a);
    if (e.level == level && e.reysha == R && e.apex == I.arrow(h).source && e.legs == legs) {
      if (!T.lt(c, a) || T.p(a) != I.arrow(h).source || T.p_map(a, c) != h)
        throw Error("internal error: refinement element has the wrong shape");
      return a;
    }
  }
  throw TruncationExhausted("refinement of " + T.element(c).name + " lies beyond the truncation (level " +
                            std::to_string(level) + ", Reysha size " + std::to_string(R.size()) + ")");
}

}  // namespace procat
