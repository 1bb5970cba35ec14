#pragma once

// Lifts against special M-maps (built degree by degree from base lifts of
// relative matching maps), a brute-force lifting oracle for finite sets,
// the retract exhibitor, and the one-level lift for pro-squares.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "procat/diagram.hpp"
#include "procat/finset.hpp"

namespace procat {

/// Square g: A → B against f: X → Y over a poset T, with compatible cones
/// top_t: A → X(t) and bottom_t: B → Y(t).
template <FactorizationBase C>
struct LiftingProblem {
  typename C::Morphism left;
  NatTrans<C> right;
  std::vector<typename C::Morphism> top;
  std::vector<typename C::Morphism> bottom;

  std::optional<std::string> failure() const {
    const FinPoset& T = right.shape();
    if (top.size() != T.size() || bottom.size() != T.size())
      return std::string("lifting problem needs one top and one bottom map per element");
    for (Elem t = 0; t < T.size(); ++t) {
      if (!C::same_object(C::source(top[t]), C::source(left)) ||
          !C::same_object(C::target(top[t]), right.source().at(t)) ||
          !C::same_object(C::source(bottom[t]), C::target(left)) ||
          !C::same_object(C::target(bottom[t]), right.target().at(t)))
        return "maps at " + T.name(t) + " have the wrong type";
      if (!C::equal(C::compose(right.at(t), top[t]), C::compose(bottom[t], left)))
        return "square at " + T.name(t) + " does not commute";
      for (Elem s = 0; s < T.size(); ++s) {
        if (!T.lt(s, t)) continue;
        if (!C::equal(C::compose(right.source().map(t, s), top[t]), top[s]))
          return "top cone is not compatible along " + T.name(t) + "->" + T.name(s);
        if (!C::equal(C::compose(right.target().map(t, s), bottom[t]), bottom[s]))
          return "bottom cone is not compatible along " + T.name(t) + "->" + T.name(s);
      }
    }
    return std::nullopt;
  }
};

template <FactorizationBase C>
struct ConeLift {
  std::vector<typename C::Morphism> components;  // B → X(t)
};

/// Both triangles at every element plus compatibility with X.
template <FactorizationBase C>
std::optional<std::string> cone_lift_failure(const LiftingProblem<C>& p, const ConeLift<C>& l) {
  const FinPoset& T = p.right.shape();
  if (l.components.size() != T.size()) return std::string("lift has the wrong number of components");
  for (Elem t = 0; t < T.size(); ++t) {
    if (!C::equal(C::compose(l.components[t], p.left), p.top[t]))
      return "upper triangle fails at " + T.name(t);
    if (!C::equal(C::compose(p.right.at(t), l.components[t]), p.bottom[t]))
      return "lower triangle fails at " + T.name(t);
    for (Elem s = 0; s < T.size(); ++s)
      if (T.lt(s, t) && !C::equal(C::compose(p.right.source().map(t, s), l.components[t]), l.components[s]))
        return "lift is not compatible along " + T.name(t) + "->" + T.name(s);
  }
  return std::nullopt;
}

/// The base square used at element t: g against the relative matching map
/// of f at t, given the components already built below t.
template <FactorizationBase C>
struct RelativeSquare {
  typename C::Morphism relative;  // X(t) → P(t)
  typename C::Morphism bottom;    // B → P(t)
};

template <FactorizationBase C>
RelativeSquare<C> relative_square(const LiftingProblem<C>& p, const std::vector<typename C::Morphism>& built,
                                  Elem t) {
  const auto in = matching_input(p.right);
  const MatchingObject<C> mo = matching_object<C>(p.right.shape(), in, t);
  std::vector<typename C::Morphism> x_legs, b_legs;
  for (Elem s : mo.below) {
    x_legs.push_back(p.right.source().map(t, s));
    b_legs.push_back(built.at(s));
  }
  const auto& B = C::target(p.left);
  return {induce_into_matching<C>(p.right.shape(), in, mo, t, p.right.source().at(t), x_legs, p.right.at(t)),
          induce_into_matching<C>(p.right.shape(), in, mo, t, B, b_legs, p.bottom[t])};
}

/// Requires g ∈ N and f special M. Components are built in (degree, index)
/// order; each is a base lift against a relative matching map.
template <FactorizationBase C>
ConeLift<C> lift_against_special(const LiftingProblem<C>& p) {
  if (auto why = p.failure()) throw ContractViolation("invalid lifting problem: " + *why);
  if (!C::in_N(p.left)) throw ContractViolation("left map is not in N");
  if (auto bad = special_failure(p.right, MapClass::M))
    throw ContractViolation("right map is not special M at " + p.right.shape().name(*bad));
  std::vector<typename C::Morphism> built(p.right.size());
  for (Elem t : p.right.shape().degree_order()) {
    RelativeSquare<C> sq = relative_square(p, built, t);
    built[t] = C::lift(p.left, sq.relative, p.top[t], sq.bottom);
  }
  ConeLift<C> out{std::move(built)};
  if (auto why = cone_lift_failure(p, out)) throw Error("internal error: constructed lift is invalid: " + *why);
  return out;
}

/// A pro-level square A → X over B → Y, with A → B levelwise N over T and
/// f: X → Y in the base, represented at the single index t0.
template <FactorizationBase C>
struct LevelwiseSquare {
  NatTrans<C> left;  // A → B over T
  typename C::Morphism right;
  Elem t0 = 0;
  typename C::Morphism top;     // A(t0) → X
  typename C::Morphism bottom;  // B(t0) → Y
};

template <FactorizationBase C>
struct LevelwiseLift {
  Elem t0 = 0;
  typename C::Morphism lift;  // B(t0) → X
  /// The representative at any t >= t0: lift ∘ B(t → t0).
  typename C::Morphism at(const NatTrans<C>& left, Elem t) const {
    return C::compose(lift, left.target().map(t, t0));
  }
};

template <FactorizationBase C>
LevelwiseLift<C> solve_square_levelwise(const LevelwiseSquare<C>& sq) {
  if (sq.t0 >= sq.left.size()) throw ContractViolation("representative index is not an element of T");
  const auto& g = sq.left.at(sq.t0);
  if (!C::same_object(C::source(sq.top), C::source(g)) || !C::same_object(C::target(sq.top), C::source(sq.right)) ||
      !C::same_object(C::source(sq.bottom), C::target(g)) ||
      !C::same_object(C::target(sq.bottom), C::target(sq.right)))
    throw ContractViolation("representative maps have the wrong type at " + sq.left.shape().name(sq.t0));
  if (!C::equal(C::compose(sq.right, sq.top), C::compose(sq.bottom, g)))
    throw ContractViolation("square does not factor through " + sq.left.shape().name(sq.t0));
  return {sq.t0, C::lift(g, sq.right, sq.top, sq.bottom)};
}

// ---------------------------------------------------------------------------
// Finite-set oracles

enum class SearchStatus { found, none, exhausted };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::exhausted: return "exhausted";
  }
  return "?";
}

struct BruteForceLift {
  SearchStatus status = SearchStatus::none;
  std::optional<FinMap> witness;
  std::size_t candidates = 0;  // maps examined
};

inline constexpr std::size_t kDefaultSearchCap = 1'000'000;

/// Enumerates every map B → X in lexicographic order and returns the first
/// one making both triangles commute. Refuses when |X|^|B| exceeds `cap`.
inline BruteForceLift has_lift_bruteforce(const FinMap& g, const FinMap& f, const FinMap& top,
                                          const FinMap& bottom, std::size_t cap = kDefaultSearchCap) {
  FinSets::check_square(g, f, top, bottom);
  const std::size_t nb = g.tgt.size(), nx = f.src.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < nb; ++i) {
    if (nx == 0) {
      total = 0;
      break;
    }
    if (total > cap / nx) return {SearchStatus::exhausted, std::nullopt, 0};
    total *= nx;
  }
  BruteForceLift out;
  if (total == 0) return out;
  std::vector<std::size_t> h(nb, 0);
  while (true) {
    ++out.candidates;
    bool ok = true;
    for (std::size_t a = 0; a < g.src.size() && ok; ++a) ok = h[g.images[a]] == top.images[a];
    for (std::size_t b = 0; b < nb && ok; ++b) ok = f.images[h[b]] == bottom.images[b];
    if (ok) {
      out.status = SearchStatus::found;
      out.witness = FinMap(g.tgt, f.src, h);
      return out;
    }
    std::size_t i = nb;
    while (i > 0 && h[i - 1] + 1 == nx) h[--i] = 0;
    if (i == 0) return out;
    ++h[i - 1];
  }
}

/// h exhibited as a retract of the M-part p of its own factorization
/// h = p ∘ q:
///
///   X --q--> L --r--> X
///   |h       |p       |h
///   Y --id-> Y --id-> Y
///
/// with r ∘ q = id_X and h ∘ r = p, r found by the brute-force oracle.
struct RetractDiagram {
  FactorizationTriple<FinSets> factorization;
  FinMap section;  // q
  FinMap retraction;  // r
  FinMap bottom_left;  // id_Y
  FinMap bottom_right;  // id_Y
  bool top_row_identity = false;
  bool left_square = false;
  bool right_square = false;
  bool ok() const { return top_row_identity && left_square && right_square; }
};

inline RetractDiagram retract_exhibitor(const FinMap& h, std::size_t cap = kDefaultSearchCap) {
  auto fac = FinSets::factorize(h);
  auto found = has_lift_bruteforce(fac.left, h, FinSets::identity(h.src), fac.right, cap);
  if (found.status == SearchStatus::exhausted)
    throw BudgetExceeded("retract search exceeds the search cap");
  if (found.status == SearchStatus::none)
    throw ContractViolation("map has no lift against the left part of its factorization (not surjective)");
  RetractDiagram d{fac, fac.left, *found.witness, FinSets::identity(h.tgt), FinSets::identity(h.tgt)};
  d.top_row_identity = FinSets::equal(FinSets::compose(d.retraction, d.section), FinSets::identity(h.src));
  d.left_square = FinSets::equal(FinSets::compose(fac.right, d.section), FinSets::compose(d.bottom_left, h));
  d.right_square = FinSets::equal(FinSets::compose(h, d.retraction), FinSets::compose(d.bottom_right, fac.right));
  return d;
}

}  // namespace procat
