#pragma once

// The Reedy construction: factor f: C → D over a finite poset as a
// levelwise-N map g followed by a special-M map h, one element at a time in
// (degree, index) order.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "procat/diagram.hpp"

namespace procat {

template <FactorizationBase C>
struct ReedyStage {
  Elem element = 0;
  MatchingObject<C> matching;
  typename C::Morphism induced;  // C(x) → P(x)
  FactorizationTriple<C> triple;
};

/// Partial factorization over the set of already processed elements (always
/// a Reysha).
template <FactorizationBase C>
class PartialReedy {
 public:
  using Object = typename C::Object;
  using Morphism = typename C::Morphism;

  explicit PartialReedy(NatTrans<C> f)
      : f_(std::move(f)), n_(f_.size()), done_(n_, 0), mid_(n_), g_(n_), h_(n_),
        maps_(n_ * n_), stages_(n_) {}

  const NatTrans<C>& input() const noexcept { return f_; }
  const FinPoset& shape() const noexcept { return f_.shape(); }
  bool done(Elem x) const { return done_.at(x) != 0; }

  std::vector<Elem> processed() const {
    std::vector<Elem> out;
    for (Elem x = 0; x < n_; ++x)
      if (done_[x]) out.push_back(x);
    return out;
  }

  const Object& mid(Elem x) const { return checked(mid_, x); }
  const Morphism& g(Elem x) const { return checked(g_, x); }
  const Morphism& h(Elem x) const { return checked(h_, x); }
  const Morphism& mid_map(Elem x, Elem y) const {
    if (!done_.at(x) || !done_.at(y) || !shape().le(y, x))
      throw ContractViolation("mid map requested outside the processed part");
    return *maps_[x * n_ + y];
  }
  const ReedyStage<C>& stage(Elem x) const { return *stages_.at(x); }

  MatchingInput<C> matching_input() const {
    return {[this](Elem s) -> const Object& { return mid(s); },
            [this](Elem a, Elem b) -> const Morphism& { return mid_map(a, b); },
            [this](Elem s) -> const Object& { return f_.target().at(s); },
            [this](Elem a, Elem b) -> const Morphism& { return f_.target().map(a, b); },
            [this](Elem s) -> const Morphism& { return h(s); }};
  }

  /// Extends the factorization to x. Requires every s < x to be processed
  /// and x itself not yet processed.
  void extend_step(Elem x) {
    if (x >= n_) throw ContractViolation("extend_step: unknown element");
    if (done_[x])
      throw ContractViolation("extend_step: " + shape().name(x) + " is already part of the factorization");
    for (Elem s : shape().strict_down_set(x))
      if (!done_[s])
        throw ContractViolation("extend_step: " + shape().name(s) + " < " + shape().name(x) +
                                " has not been factored yet");

    const auto in = matching_input();
    ReedyStage<C> st;
    st.element = x;
    st.matching = matching_object<C>(shape(), in, x);
    std::vector<Morphism> legs;
    for (Elem s : st.matching.below) legs.push_back(C::compose(g(s), f_.source().map(x, s)));
    st.induced = induce_into_matching<C>(shape(), in, st.matching, x, f_.source().at(x), legs, f_.at(x));
    st.triple = C::factorize(st.induced);

    mid_[x] = st.triple.mid;
    g_[x] = st.triple.left;
    h_[x] = C::compose(st.matching.target_leg(), st.triple.right);
    maps_[x * n_ + x] = C::identity(st.triple.mid);
    for (std::size_t i = 0; i < st.matching.below.size(); ++i)
      maps_[x * n_ + st.matching.below[i]] = C::compose(st.matching.source_leg(i), st.triple.right);
    stages_[x] = std::move(st);
    done_[x] = 1;
  }

 private:
  template <class T>
  const T& checked(const std::vector<std::optional<T>>& v, Elem x) const {
    if (x >= n_ || !done_[x]) throw ContractViolation("element has not been factored yet");
    return *v[x];
  }

  NatTrans<C> f_;
  std::size_t n_;
  std::vector<char> done_;
  std::vector<std::optional<Object>> mid_;
  std::vector<std::optional<Morphism>> g_;
  std::vector<std::optional<Morphism>> h_;
  std::vector<std::optional<Morphism>> maps_;
  std::vector<std::optional<ReedyStage<C>>> stages_;
};

struct ReedyReport {
  bool composite = false;     // h ∘ g = f
  bool levelwise_N = false;   // every g_x in N
  bool special_M = false;     // every relative matching map of h in M
  std::vector<std::string> failures;
  bool ok() const { return composite && levelwise_N && special_M; }
};

template <FactorizationBase C>
struct ReedyFactorization {
  NatTrans<C> input;
  Diagram<C> mid;
  NatTrans<C> g;
  NatTrans<C> h;
  ReedyReport report;
  std::vector<ReedyStage<C>> stages;  // indexed by element
};

/// Recomputes all three invariants from scratch.
template <FactorizationBase C>
ReedyReport verify_reedy(const NatTrans<C>& f, const NatTrans<C>& g, const NatTrans<C>& h) {
  ReedyReport r;
  r.composite = true;
  for (Elem x = 0; x < f.size(); ++x)
    if (!C::equal(C::compose(h.at(x), g.at(x)), f.at(x))) {
      r.composite = false;
      r.failures.push_back("h∘g differs from f at " + f.shape().name(x));
      break;
    }
  r.levelwise_N = true;
  for (Elem x = 0; x < g.size(); ++x)
    if (!C::in_N(g.at(x))) {
      r.levelwise_N = false;
      r.failures.push_back("g is not in N at " + g.shape().name(x));
      break;
    }
  auto bad = special_failure(h, MapClass::M);
  r.special_M = !bad;
  if (bad) r.failures.push_back("relative matching map of h is not in M at " + h.shape().name(*bad));
  return r;
}

template <FactorizationBase C>
ReedyFactorization<C> reedy(const NatTrans<C>& f) {
  PartialReedy<C> partial(f);
  for (Elem x : f.shape().degree_order()) partial.extend_step(x);

  const FinPoset& shape = f.shape();
  std::vector<typename C::Object> objects;
  std::vector<typename Diagram<C>::Generator> maps;
  std::vector<typename C::Morphism> gs, hs;
  for (Elem x = 0; x < shape.size(); ++x) {
    objects.push_back(partial.mid(x));
    gs.push_back(partial.g(x));
    hs.push_back(partial.h(x));
    for (Elem y = 0; y < shape.size(); ++y)
      if (shape.lt(y, x)) maps.emplace_back(x, y, partial.mid_map(x, y));
  }
  Diagram<C> mid(shape, std::move(objects), maps);
  NatTrans<C> g(f.source(), mid, std::move(gs));
  NatTrans<C> h(mid, f.target(), std::move(hs));
  ReedyReport report = verify_reedy(f, g, h);
  std::vector<ReedyStage<C>> stages;
  for (Elem x = 0; x < shape.size(); ++x) stages.push_back(partial.stage(x));
  return {f, std::move(mid), std::move(g), std::move(h), std::move(report), std::move(stages)};
}

}  // namespace procat
