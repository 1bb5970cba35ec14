#pragma once

// The pluggable base category. A model supplies finite limits, a strictly
// functorial factorization Mor = M ∘ N, membership tests for both classes
// and a lift for N ⊥ M squares. Everything above this layer is written
// against the `FactorizationBase` concept only.

#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

namespace procat {

template <class C>
struct LimitEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  typename C::Morphism map;
};

/// A finite diagram presented as a graph: objects plus arrows between them.
/// The edge graph must be acyclic (identities are implicit). `keys` name the
/// vertices for labelling; `visible[i] == false` hides a vertex from labels.
template <class C>
struct LimitProblem {
  std::vector<typename C::Object> objects;
  std::vector<std::string> keys;
  std::vector<LimitEdge<C>> edges;
  std::vector<bool> visible;
};

template <class C>
struct LimitCone {
  typename C::Object apex;
  std::vector<typename C::Morphism> legs;
};

template <class C>
struct FactorizationTriple {
  typename C::Object mid;
  typename C::Morphism left;   // in N
  typename C::Morphism right;  // in M
};

template <class C>
concept FactorizationBase = requires(const typename C::Object& o, const typename C::Morphism& f,
                                     const LimitProblem<C>& problem, const LimitCone<C>& cone,
                                     const std::vector<typename C::Morphism>& legs) {
  { C::source(f) } -> std::convertible_to<typename C::Object>;
  { C::target(f) } -> std::convertible_to<typename C::Object>;
  { C::identity(o) } -> std::convertible_to<typename C::Morphism>;
  { C::compose(f, f) } -> std::convertible_to<typename C::Morphism>;
  { C::equal(f, f) } -> std::convertible_to<bool>;
  { C::same_object(o, o) } -> std::convertible_to<bool>;
  { C::limit(problem) } -> std::convertible_to<LimitCone<C>>;
  { C::pullback(f, f) } -> std::convertible_to<LimitCone<C>>;
  { C::induce(cone, o, legs) } -> std::convertible_to<typename C::Morphism>;
  { C::factorize(f) } -> std::convertible_to<FactorizationTriple<C>>;
  { C::factorize_square(f, f, f, f) } -> std::convertible_to<typename C::Morphism>;
  { C::in_N(f) } -> std::convertible_to<bool>;
  { C::in_M(f) } -> std::convertible_to<bool>;
  { C::lift(f, f, f, f) } -> std::convertible_to<typename C::Morphism>;
};

}  // namespace procat
