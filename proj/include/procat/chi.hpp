#pragma once

// Functorial factorization on arrows of the pre-morphism model. An arrow is
// a natural transformation f: E → F over A; a morphism f → t (t: K → G
// over B) is a pre-morphism of arrows (α, φ, ψ) with ψ ∘ f_α = t ∘ φ. The
// χ-construction produces χ: H_f ∘ α → H_t between the mid diagrams of the
// two Reedy factorizations.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "procat/premorphism.hpp"
#include "procat/reedy.hpp"

namespace procat {

template <FactorizationBase C>
struct ArrowPreMorphism {
  std::vector<Elem> alpha;
  std::vector<typename C::Morphism> phi;  // E(α(b)) → K(b)
  std::vector<typename C::Morphism> psi;  // F(α(b)) → G(b)

  PreMorphism<C> source_part() const { return {alpha, phi}; }
  PreMorphism<C> target_part() const { return {alpha, psi}; }
};

template <FactorizationBase C>
std::optional<std::string> arrow_pre_morphism_failure(const NatTrans<C>& f, const NatTrans<C>& t,
                                                      const ArrowPreMorphism<C>& p) {
  if (auto why = pre_morphism_failure(f.source(), t.source(), p.source_part())) return "source part: " + *why;
  if (auto why = pre_morphism_failure(f.target(), t.target(), p.target_part())) return "target part: " + *why;
  for (Elem b = 0; b < t.size(); ++b)
    if (!C::equal(C::compose(p.psi[b], f.at(p.alpha[b])), C::compose(t.at(b), p.phi[b])))
      return "square at " + t.shape().name(b) + " does not commute";
  return std::nullopt;
}

template <FactorizationBase C>
ArrowPreMorphism<C> arrow_identity(const NatTrans<C>& f) {
  auto s = pm_identity(f.source());
  auto t = pm_identity(f.target());
  return {s.alpha, s.phi, t.phi};
}

/// q ∘ p.
template <FactorizationBase C>
ArrowPreMorphism<C> arrow_compose(const ArrowPreMorphism<C>& q, const ArrowPreMorphism<C>& p) {
  auto s = pm_compose(q.source_part(), p.source_part());
  auto t = pm_compose(q.target_part(), p.target_part());
  return {s.alpha, s.phi, t.phi};
}

template <FactorizationBase C>
bool arrow_leq(const NatTrans<C>& f, const ArrowPreMorphism<C>& p, const ArrowPreMorphism<C>& q) {
  return pm_leq(f.source(), p.source_part(), q.source_part()) && pm_leq(f.target(), p.target_part(), q.target_part());
}

template <FactorizationBase C>
std::vector<Channel<C>> arrow_channels(const NatTrans<C>& f, const NatTrans<C>& t) {
  return {{&f.source(), &t.source()}, {&f.target(), &t.target()}};
}

template <FactorizationBase C>
ChannelMorphism<C> as_channels(const ArrowPreMorphism<C>& p) {
  return {p.alpha, {p.phi, p.psi}};
}

/// Common upper bound of two arrow pre-morphisms in the same component.
template <FactorizationBase C>
ArrowPreMorphism<C> dominate_arrow(const NatTrans<C>& f, const NatTrans<C>& t, const ArrowPreMorphism<C>& p,
                                   const ArrowPreMorphism<C>& q, SearchOptions opt = {}) {
  if (auto why = arrow_pre_morphism_failure(f, t, p)) throw ContractViolation("first arrow pre-morphism: " + *why);
  if (auto why = arrow_pre_morphism_failure(f, t, q)) throw ContractViolation("second arrow pre-morphism: " + *why);
  auto cm = dominate_channels<C>(arrow_channels(f, t), as_channels(p), as_channels(q), opt);
  return {cm.alpha, cm.phi[0], cm.phi[1]};
}

template <FactorizationBase C>
struct ChiMap {
  std::vector<Elem> alpha;
  std::vector<typename C::Morphism> chi;  // H_f(α(b)) → H_t(b)

  PreMorphism<C> as_pre_morphism() const { return {alpha, chi}; }
};

/// χ_b is the mid map the base factorization assigns to the square
///
///   E(α(b)) ---> P_f(α(b))
///     |φ_b          |v
///   K(b)    ---> P_t(b)
///
/// where P denotes the relative matching object used by the Reedy
/// construction and v is induced by ψ_b and the χ_{b'} built below b.
template <FactorizationBase C>
ChiMap<C> chi_construct(const ReedyFactorization<C>& rf, const ReedyFactorization<C>& rt,
                        const ArrowPreMorphism<C>& p) {
  const NatTrans<C>& f = rf.input;
  const NatTrans<C>& t = rt.input;
  if (auto why = arrow_pre_morphism_failure(f, t, p)) throw ContractViolation("invalid arrow pre-morphism: " + *why);
  const FinPoset& B = t.shape();

  MatchingInput<C> in_t{[&](Elem s) -> const typename C::Object& { return rt.mid.at(s); },
                        [&](Elem a, Elem b) -> const typename C::Morphism& { return rt.mid.map(a, b); },
                        [&](Elem s) -> const typename C::Object& { return t.target().at(s); },
                        [&](Elem a, Elem b) -> const typename C::Morphism& { return t.target().map(a, b); },
                        [&](Elem s) -> const typename C::Morphism& { return rt.h.at(s); }};

  ChiMap<C> out{p.alpha, std::vector<typename C::Morphism>(B.size())};
  for (Elem b : B.degree_order()) {
    const Elem a = p.alpha[b];
    const ReedyStage<C>& sf = rf.stages[a];
    const ReedyStage<C>& st = rt.stages[b];
    const auto& below_a = sf.matching.below;
    std::vector<typename C::Morphism> legs;
    for (Elem s : st.matching.below) {
      // α(s) < α(b), so α(s) indexes a coordinate of P_f(α(b)).
      std::size_t i = 0;
      while (i < below_a.size() && below_a[i] != p.alpha[s]) ++i;
      if (i == below_a.size())
        throw ContractViolation("index map is not strictly increasing at " + B.name(s) + " < " + B.name(b));
      legs.push_back(C::compose(out.chi[s], sf.matching.source_leg(i)));
    }
    auto v = induce_into_matching<C>(B, in_t, st.matching, b, sf.matching.apex(), legs,
                                     C::compose(p.psi[b], sf.matching.target_leg()));
    out.chi[b] = C::factorize_square(sf.induced, st.induced, p.phi[b], v);
  }
  return out;
}

struct ChiReport {
  bool left_square = false;   // χ ∘ (g_f)_α = g_t ∘ φ
  bool right_square = false;  // h_t ∘ χ = ψ ∘ (h_f)_α
  bool natural = false;       // (α, χ) is a pre-morphism H_f → H_t
  std::vector<std::string> failures;
  bool ok() const { return left_square && right_square && natural; }
};

template <FactorizationBase C>
ChiReport verify_chi(const ReedyFactorization<C>& rf, const ReedyFactorization<C>& rt, const ArrowPreMorphism<C>& p,
                     const ChiMap<C>& chi) {
  ChiReport r;
  r.left_square = r.right_square = true;
  const FinPoset& B = rt.input.shape();
  for (Elem b = 0; b < B.size(); ++b) {
    const Elem a = p.alpha[b];
    if (r.left_square && !C::equal(C::compose(chi.chi[b], rf.g.at(a)), C::compose(rt.g.at(b), p.phi[b]))) {
      r.left_square = false;
      r.failures.push_back("left square fails at " + B.name(b));
    }
    if (r.right_square && !C::equal(C::compose(rt.h.at(b), chi.chi[b]), C::compose(p.psi[b], rf.h.at(a)))) {
      r.right_square = false;
      r.failures.push_back("right square fails at " + B.name(b));
    }
  }
  auto why = pre_morphism_failure(rf.mid, rt.mid, chi.as_pre_morphism());
  r.natural = !why;
  if (why) r.failures.push_back("χ is not natural: " + *why);
  return r;
}

template <FactorizationBase C>
struct ProFactorization {
  ReedyFactorization<C> source;
  ReedyFactorization<C> target;
  std::optional<ChiMap<C>> chi;
  std::optional<ChiReport> chi_report;
};

/// The section of the composition functor on the pre-morphism model: Reedy
/// factorizations of both arrows and, when a morphism is given, its χ.
template <FactorizationBase C>
ProFactorization<C> functorial_factorization_pro(const NatTrans<C>& f, const NatTrans<C>& t,
                                                 const std::optional<ArrowPreMorphism<C>>& p) {
  ProFactorization<C> out{reedy(f), reedy(t), std::nullopt, std::nullopt};
  if (p) {
    out.chi = chi_construct(out.source, out.target, *p);
    out.chi_report = verify_chi(out.source, out.target, *p, *out.chi);
  }
  return out;
}

}  // namespace procat
