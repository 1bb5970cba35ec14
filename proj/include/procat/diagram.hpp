#pragma once

// Diagrams A → C over a finite poset, natural transformations, restriction
// to Reyshas, and the relative matching map that defines special maps.
//
// Direction convention: for y <= x the diagram carries a map at(x) → at(y).

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "procat/base.hpp"
#include "procat/errors.hpp"
#include "procat/order.hpp"

namespace procat {

enum class MapClass { N, M };

inline const char* to_string(MapClass c) { return c == MapClass::N ? "N" : "M"; }

template <FactorizationBase C>
bool in_class(const typename C::Morphism& f, MapClass cls) {
  return cls == MapClass::N ? C::in_N(f) : C::in_M(f);
}

template <FactorizationBase C>
class Diagram {
 public:
  using Object = typename C::Object;
  using Morphism = typename C::Morphism;
  /// (x, y, map at(x) → at(y)) with y < x.
  using Generator = std::tuple<Elem, Elem, Morphism>;

  Diagram() = default;

  /// Builds the diagram from maps on any generating set of strict pairs.
  /// Missing pairs are filled by composition; functoriality is then checked
  /// on every triple z <= y <= x.
  Diagram(FinPoset shape, std::vector<Object> objects, const std::vector<Generator>& maps)
      : shape_(std::move(shape)), objects_(std::move(objects)) {
    const std::size_t n = shape_.size();
    if (objects_.size() != n) throw ContractViolation("diagram needs one object per poset element");
    arrows_.assign(n * n, std::nullopt);
    for (Elem x = 0; x < n; ++x) arrows_[x * n + x] = C::identity(objects_[x]);
    for (const auto& [x, y, m] : maps) {
      if (x >= n || y >= n || !shape_.lt(y, x))
        throw ContractViolation("diagram map must go from a larger element to a strictly smaller one");
      if (!C::same_object(C::source(m), objects_[x]) || !C::same_object(C::target(m), objects_[y]))
        throw ContractViolation("diagram map " + shape_.name(x) + "->" + shape_.name(y) +
                                " has the wrong source or target");
      if (arrows_[x * n + y]) throw ContractViolation("diagram map given twice");
      arrows_[x * n + y] = m;
    }
    // Fill along (degree, index) order of the source so composites of
    // already-known maps are available.
    for (Elem x : shape_.degree_order()) {
      bool progress = true;
      while (progress) {
        progress = false;
        for (Elem y = 0; y < n; ++y) {
          if (arrows_[x * n + y] || !shape_.lt(y, x)) continue;
          for (Elem z = 0; z < n; ++z)
            if (shape_.lt(y, z) && shape_.lt(z, x) && arrows_[x * n + z] && arrows_[z * n + y]) {
              arrows_[x * n + y] = C::compose(*arrows_[z * n + y], *arrows_[x * n + z]);
              progress = true;
              break;
            }
        }
      }
      for (Elem y = 0; y < n; ++y)
        if (shape_.lt(y, x) && !arrows_[x * n + y])
          throw ContractViolation("diagram has no map " + shape_.name(x) + "->" + shape_.name(y));
    }
    check_functorial();
  }

  const FinPoset& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return shape_.size(); }
  const Object& at(Elem x) const { return objects_.at(x); }
  const std::vector<Object>& objects() const noexcept { return objects_; }

  /// at(x) → at(y) for y <= x.
  const Morphism& map(Elem x, Elem y) const {
    if (x >= size() || y >= size() || !shape_.le(y, x))
      throw ContractViolation("no diagram map between incomparable or misordered elements");
    return *arrows_[x * size() + y];
  }

  /// Exhaustive functoriality check; returns a description of the first
  /// failing triple.
  std::optional<std::string> functoriality_failure() const {
    const std::size_t n = size();
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) {
        if (!shape_.lt(y, x)) continue;
        for (Elem z = 0; z < n; ++z) {
          if (!shape_.lt(z, y)) continue;
          if (!C::equal(map(x, z), C::compose(map(y, z), map(x, y))))
            return "map " + shape_.name(x) + "->" + shape_.name(z) + " differs from the composite through " +
                   shape_.name(y);
        }
      }
    return std::nullopt;
  }

  /// Generators on covering pairs only; enough to rebuild the diagram.
  std::vector<Generator> covering_maps() const {
    std::vector<Generator> out;
    for (const auto& [y, x] : shape_.covers()) out.emplace_back(x, y, map(x, y));
    return out;
  }

 private:
  void check_functorial() const {
    if (auto why = functoriality_failure()) throw ContractViolation("diagram is not functorial: " + *why);
  }

  FinPoset shape_;
  std::vector<Object> objects_;
  std::vector<std::optional<Morphism>> arrows_;
};

template <FactorizationBase C>
class NatTrans {
 public:
  using Morphism = typename C::Morphism;

  NatTrans() = default;

  NatTrans(Diagram<C> source, Diagram<C> target, std::vector<Morphism> components)
      : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    if (!(source_.shape() == target_.shape()))
      throw ContractViolation("natural transformation between diagrams of different shapes");
    if (components_.size() != source_.size())
      throw ContractViolation("natural transformation needs one component per element");
    for (Elem x = 0; x < source_.size(); ++x)
      if (!C::same_object(C::source(components_[x]), source_.at(x)) ||
          !C::same_object(C::target(components_[x]), target_.at(x)))
        throw ContractViolation("component at " + shape().name(x) + " has the wrong type");
    if (auto why = naturality_failure()) throw ContractViolation("not natural: " + *why);
  }

  const Diagram<C>& source() const noexcept { return source_; }
  const Diagram<C>& target() const noexcept { return target_; }
  const FinPoset& shape() const noexcept { return source_.shape(); }
  std::size_t size() const noexcept { return source_.size(); }
  const Morphism& at(Elem x) const { return components_.at(x); }
  const std::vector<Morphism>& components() const noexcept { return components_; }

  std::optional<std::string> naturality_failure() const {
    for (Elem x = 0; x < size(); ++x)
      for (Elem y = 0; y < size(); ++y) {
        if (!shape().lt(y, x)) continue;
        if (!C::equal(C::compose(target_.map(x, y), components_[x]),
                      C::compose(components_[y], source_.map(x, y))))
          return "square " + shape().name(x) + "->" + shape().name(y) + " does not commute";
      }
    return std::nullopt;
  }

 private:
  Diagram<C> source_;
  Diagram<C> target_;
  std::vector<Morphism> components_;
};

template <FactorizationBase C>
NatTrans<C> identity_trans(const Diagram<C>& d) {
  std::vector<typename C::Morphism> comps;
  for (Elem x = 0; x < d.size(); ++x) comps.push_back(C::identity(d.at(x)));
  return NatTrans<C>(d, d, std::move(comps));
}

/// (s ∘ t) componentwise.
template <FactorizationBase C>
NatTrans<C> compose(const NatTrans<C>& s, const NatTrans<C>& t) {
  std::vector<typename C::Morphism> comps;
  for (Elem x = 0; x < t.size(); ++x) comps.push_back(C::compose(s.at(x), t.at(x)));
  return NatTrans<C>(t.source(), s.target(), std::move(comps));
}

template <FactorizationBase C>
bool equal(const NatTrans<C>& a, const NatTrans<C>& b) {
  if (a.size() != b.size()) return false;
  for (Elem x = 0; x < a.size(); ++x)
    if (!C::equal(a.at(x), b.at(x))) return false;
  return true;
}

template <FactorizationBase C>
Diagram<C> restrict(const Diagram<C>& d, const Reysha& r) {
  if (!d.shape().is_reysha(r.members())) throw ContractViolation("restriction to a subset that is not a Reysha");
  const auto& mem = r.members();
  FinPoset sub = d.shape().induced(mem);
  std::vector<typename C::Object> objects;
  for (Elem m : mem) objects.push_back(d.at(m));
  std::vector<typename Diagram<C>::Generator> maps;
  for (Elem i = 0; i < mem.size(); ++i)
    for (Elem j = 0; j < mem.size(); ++j)
      if (d.shape().lt(mem[j], mem[i])) maps.emplace_back(i, j, d.map(mem[i], mem[j]));
  return Diagram<C>(std::move(sub), std::move(objects), maps);
}

template <FactorizationBase C>
NatTrans<C> restrict(const NatTrans<C>& t, const Reysha& r) {
  std::vector<typename C::Morphism> comps;
  for (Elem m : r.members()) comps.push_back(t.at(m));
  return NatTrans<C>(restrict(t.source(), r), restrict(t.target(), r), std::move(comps));
}

template <FactorizationBase C>
bool is_levelwise(const NatTrans<C>& t, MapClass cls) {
  for (Elem x = 0; x < t.size(); ++x)
    if (!in_class<C>(t.at(x), cls)) return false;
  return true;
}

/// The fiber product P = lim_{s<x} X ×_{lim_{s<x} Y} Y(x), presented as one
/// limit. Vertices: X(s) for s in `below` (keyed by the element name), Y(s)
/// for s in `below` (hidden), and Y(x) (keyed by the name of x).
template <FactorizationBase C>
struct MatchingObject {
  std::vector<Elem> below;
  LimitCone<C> cone;

  const typename C::Object& apex() const { return cone.apex; }
  /// P → X(below[i]).
  const typename C::Morphism& source_leg(std::size_t i) const { return cone.legs[i]; }
  /// P → Y(x).
  const typename C::Morphism& target_leg() const { return cone.legs.back(); }
};

/// Accessors so the same code serves complete diagrams and the partially
/// built mid diagram of the Reedy construction.
template <FactorizationBase C>
struct MatchingInput {
  std::function<const typename C::Object&(Elem)> x_obj;
  std::function<const typename C::Morphism&(Elem, Elem)> x_map;
  std::function<const typename C::Object&(Elem)> y_obj;
  std::function<const typename C::Morphism&(Elem, Elem)> y_map;
  std::function<const typename C::Morphism&(Elem)> component;
};

template <FactorizationBase C>
MatchingObject<C> matching_object(const FinPoset& shape, const MatchingInput<C>& in, Elem x) {
  MatchingObject<C> out;
  out.below = shape.strict_down_set(x);
  const auto& below = out.below;
  const std::size_t k = below.size();
  std::vector<std::size_t> slot(shape.size(), k);
  for (std::size_t i = 0; i < k; ++i) slot[below[i]] = i;

  LimitProblem<C> problem;
  for (std::size_t i = 0; i < k; ++i) {
    problem.objects.push_back(in.x_obj(below[i]));
    problem.keys.push_back(shape.name(below[i]));
    problem.visible.push_back(true);
  }
  for (std::size_t i = 0; i < k; ++i) {
    problem.objects.push_back(in.y_obj(below[i]));
    problem.keys.push_back("");
    problem.visible.push_back(false);
  }
  problem.objects.push_back(in.y_obj(x));
  problem.keys.push_back(shape.name(x));
  problem.visible.push_back(true);

  // Covering pairs suffice: the remaining constraints follow by functoriality.
  for (const auto& [lo, hi] : shape.covers()) {
    if (hi == x && slot[lo] < k) problem.edges.push_back({2 * k, k + slot[lo], in.y_map(x, lo)});
    if (slot[lo] < k && slot[hi] < k) {
      problem.edges.push_back({slot[hi], slot[lo], in.x_map(hi, lo)});
      problem.edges.push_back({k + slot[hi], k + slot[lo], in.y_map(hi, lo)});
    }
  }
  for (std::size_t i = 0; i < k; ++i) problem.edges.push_back({i, k + i, in.component(below[i])});
  out.cone = C::limit(problem);
  return out;
}

template <FactorizationBase C>
MatchingInput<C> matching_input(const NatTrans<C>& t) {
  return {[&t](Elem s) -> const typename C::Object& { return t.source().at(s); },
          [&t](Elem a, Elem b) -> const typename C::Morphism& { return t.source().map(a, b); },
          [&t](Elem s) -> const typename C::Object& { return t.target().at(s); },
          [&t](Elem a, Elem b) -> const typename C::Morphism& { return t.target().map(a, b); },
          [&t](Elem s) -> const typename C::Morphism& { return t.at(s); }};
}

/// Legs of a family of maps Z → X(s), Z → Y(s), Z → Y(x) into the matching
/// limit, given maps into X(s) for s below x and the map into Y(x). The
/// Y(s) legs are derived through Y(x).
template <FactorizationBase C>
typename C::Morphism induce_into_matching(const FinPoset& shape, const MatchingInput<C>& in,
                                          const MatchingObject<C>& mo, Elem x,
                                          const typename C::Object& from,
                                          const std::vector<typename C::Morphism>& x_legs,
                                          const typename C::Morphism& top_leg) {
  (void)shape;
  std::vector<typename C::Morphism> legs = x_legs;
  for (Elem s : mo.below) legs.push_back(C::compose(in.y_map(x, s), top_leg));
  legs.push_back(top_leg);
  return C::induce(mo.cone, from, legs);
}

/// X(x) → lim_{s<x} X ×_{lim_{s<x} Y} Y(x).
template <FactorizationBase C>
typename C::Morphism relative_matching_map(const NatTrans<C>& t, Elem x) {
  const auto in = matching_input(t);
  const MatchingObject<C> mo = matching_object<C>(t.shape(), in, x);
  std::vector<typename C::Morphism> x_legs;
  for (Elem s : mo.below) x_legs.push_back(t.source().map(x, s));
  return induce_into_matching<C>(t.shape(), in, mo, x, t.source().at(x), x_legs, t.at(x));
}

/// Special in the class: every relative matching map lies in it.
template <FactorizationBase C>
bool is_special(const NatTrans<C>& t, MapClass cls) {
  for (Elem x : t.shape().degree_order())
    if (!in_class<C>(relative_matching_map(t, x), cls)) return false;
  return true;
}

/// First element whose relative matching map is outside the class.
template <FactorizationBase C>
std::optional<Elem> special_failure(const NatTrans<C>& t, MapClass cls) {
  for (Elem x : t.shape().degree_order())
    if (!in_class<C>(relative_matching_map(t, x), cls)) return x;
  return std::nullopt;
}

}  // namespace procat
