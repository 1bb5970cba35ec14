#pragma once

// Pre-morphisms (α, φ) between diagrams over finite truncations of cofinite
// directed posets: validity, order, composition, colimit equality,
// straightening of raw level representatives, and the dominator merge.
//
// A diagram F over A stands for the pro-object it presents; "infinite
// height" is replaced by the finite truncation, and every construction that
// needs an element the truncation lacks raises TruncationExhausted.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "procat/diagram.hpp"

namespace procat {

template <FactorizationBase C>
struct ProObject {
  Diagram<C> diagram;
  std::size_t height_cap = 0;

  ProObject() = default;
  ProObject(Diagram<C> d, std::size_t cap) : diagram(std::move(d)), height_cap(cap) {
    if (!diagram.shape().is_directed()) throw ContractViolation("pro-object index poset is not directed");
    if (!diagram.shape().empty() && diagram.shape().height() >= height_cap)
      throw ContractViolation("pro-object index poset reaches the height cap");
  }
};

/// (α: B → A, φ_b: F(α(b)) → G(b)).
template <FactorizationBase C>
struct PreMorphism {
  std::vector<Elem> alpha;
  std::vector<typename C::Morphism> phi;
};

/// Level representatives with no monotonicity: rep at b is a map
/// F(index[b]) → G(b).
template <FactorizationBase C>
struct RawMorphism {
  std::vector<Elem> index;
  std::vector<typename C::Morphism> rep;
};

/// Strict: b < b' implies α(b) < α(b'). (Order preservation follows.)
inline std::optional<std::string> strictness_failure(const FinPoset& A, const FinPoset& B,
                                                     const std::vector<Elem>& alpha) {
  if (alpha.size() != B.size()) return std::string("index map must be defined on every element");
  for (Elem a : alpha)
    if (a >= A.size()) return std::string("index map leaves the source poset");
  for (Elem b = 0; b < B.size(); ++b)
    for (Elem c = 0; c < B.size(); ++c)
      if (B.lt(b, c) && !A.lt(alpha[b], alpha[c]))
        return "index map is not strictly increasing on " + B.name(b) + " < " + B.name(c);
  return std::nullopt;
}

template <FactorizationBase C>
std::optional<std::string> pre_morphism_failure(const Diagram<C>& F, const Diagram<C>& G,
                                                const PreMorphism<C>& p) {
  const FinPoset& A = F.shape();
  const FinPoset& B = G.shape();
  if (auto why = strictness_failure(A, B, p.alpha)) return why;
  if (p.phi.size() != B.size()) return std::string("one component per target element is required");
  for (Elem b = 0; b < B.size(); ++b)
    if (!C::same_object(C::source(p.phi[b]), F.at(p.alpha[b])) || !C::same_object(C::target(p.phi[b]), G.at(b)))
      return "component at " + B.name(b) + " has the wrong type";
  for (Elem b = 0; b < B.size(); ++b)
    for (Elem c = 0; c < B.size(); ++c)
      if (B.lt(c, b) && !C::equal(C::compose(G.map(b, c), p.phi[b]),
                                  C::compose(p.phi[c], F.map(p.alpha[b], p.alpha[c]))))
        return "components are not natural along " + B.name(b) + "->" + B.name(c);
  return std::nullopt;
}

template <FactorizationBase C>
bool is_pre_morphism(const Diagram<C>& F, const Diagram<C>& G, const PreMorphism<C>& p) {
  return !pre_morphism_failure(F, G, p);
}

/// p <= q: α_q >= α_p pointwise and φ_p ∘ F(α_q(b) → α_p(b)) = φ_q.
template <FactorizationBase C>
bool pm_leq(const Diagram<C>& F, const PreMorphism<C>& p, const PreMorphism<C>& q) {
  const FinPoset& A = F.shape();
  if (p.alpha.size() != q.alpha.size()) return false;
  for (Elem b = 0; b < p.alpha.size(); ++b) {
    if (!A.le(p.alpha[b], q.alpha[b])) return false;
    if (!C::equal(C::compose(p.phi[b], F.map(q.alpha[b], p.alpha[b])), q.phi[b])) return false;
  }
  return true;
}

template <FactorizationBase C>
bool pm_equal(const PreMorphism<C>& p, const PreMorphism<C>& q) {
  if (p.alpha != q.alpha || p.phi.size() != q.phi.size()) return false;
  for (std::size_t b = 0; b < p.phi.size(); ++b)
    if (!C::equal(p.phi[b], q.phi[b])) return false;
  return true;
}

template <FactorizationBase C>
PreMorphism<C> pm_identity(const Diagram<C>& F) {
  PreMorphism<C> p;
  for (Elem a = 0; a < F.size(); ++a) {
    p.alpha.push_back(a);
    p.phi.push_back(C::identity(F.at(a)));
  }
  return p;
}

/// q ∘ p for p: F → G (α, φ) and q: G → H (β, ψ): (α ∘ β, ψ ∘ φ_β).
template <FactorizationBase C>
PreMorphism<C> pm_compose(const PreMorphism<C>& q, const PreMorphism<C>& p) {
  PreMorphism<C> r;
  for (std::size_t c = 0; c < q.alpha.size(); ++c) {
    const Elem b = q.alpha[c];
    if (b >= p.alpha.size()) throw ContractViolation("pm_compose: index maps do not compose");
    r.alpha.push_back(p.alpha[b]);
    r.phi.push_back(C::compose(q.phi[c], p.phi[b]));
  }
  return r;
}

/// Searches a >= a1, a2 in (degree, index) order with
/// u ∘ F(a → a1) = v ∘ F(a → a2). nullopt means "not found within the
/// truncation", not semantic inequality.
template <FactorizationBase C>
std::optional<Elem> eq_in_colim(const Diagram<C>& F, Elem a1, const typename C::Morphism& u, Elem a2,
                                const typename C::Morphism& v) {
  const FinPoset& A = F.shape();
  for (Elem a : A.degree_order())
    if (A.le(a1, a) && A.le(a2, a) && C::equal(C::compose(u, F.map(a, a1)), C::compose(v, F.map(a, a2))))
      return a;
  return std::nullopt;
}

/// Compatibility of raw representatives up to colimit equality.
template <FactorizationBase C>
std::optional<std::string> raw_morphism_failure(const Diagram<C>& F, const Diagram<C>& G, const RawMorphism<C>& raw) {
  const FinPoset& A = F.shape();
  const FinPoset& B = G.shape();
  if (raw.index.size() != B.size() || raw.rep.size() != B.size())
    return std::string("raw morphism needs one representative per target element");
  for (Elem b = 0; b < B.size(); ++b) {
    if (raw.index[b] >= A.size()) return "representative index of " + B.name(b) + " is not in the source";
    if (!C::same_object(C::source(raw.rep[b]), F.at(raw.index[b])) || !C::same_object(C::target(raw.rep[b]), G.at(b)))
      return "representative at " + B.name(b) + " has the wrong type";
  }
  for (Elem b = 0; b < B.size(); ++b)
    for (Elem c = 0; c < B.size(); ++c)
      if (B.lt(c, b) &&
          !eq_in_colim(F, raw.index[b], C::compose(G.map(b, c), raw.rep[b]), raw.index[c], raw.rep[c]))
        return "representatives at " + B.name(b) + " and " + B.name(c) + " are not compatible within the truncation";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Degree-recursive search shared by straighten and dominate.
//
// Several channels share one index map: a plain pre-morphism has one, a
// pre-morphism of arrows (φ, ψ) has two. At each b the standard bound chain
// gives a preferred index; when it leads to a dead end later on, the search
// backtracks through the other admissible indices in (degree, index) order.

template <FactorizationBase C>
struct Channel {
  const Diagram<C>* source;  // over A
  const Diagram<C>* target;  // over B
};

template <FactorizationBase C>
struct ChannelMorphism {
  std::vector<Elem> alpha;
  std::vector<std::vector<typename C::Morphism>> phi;  // phi[channel][b]
};

struct SearchOptions {
  std::size_t node_budget = 200'000;
};

namespace detail {

template <FactorizationBase C>
struct Seed {
  // Where the bound chain starts (a_0 and its map).
  Elem index = 0;
  std::vector<typename C::Morphism> maps;  // per channel, F(index) → G(b)
  // Every candidate a >= base gets component base_maps ∘ F(a → base).
  Elem base = 0;
  std::vector<typename C::Morphism> base_maps;
};

template <FactorizationBase C>
class IndexSearch {
 public:
  using Morphism = typename C::Morphism;

  IndexSearch(const FinPoset& A, const FinPoset& B, std::vector<Channel<C>> channels,
              std::vector<Seed<C>> seeds, std::function<bool(Elem, Elem)> admissible, SearchOptions opt)
      : A_(A), B_(B), ch_(std::move(channels)), seeds_(std::move(seeds)), admissible_(std::move(admissible)),
        opt_(opt) {}

  ChannelMorphism<C> run(const std::string& what) {
    out_.alpha.assign(B_.size(), 0);
    out_.phi.assign(ch_.size(), std::vector<Morphism>(B_.size()));
    if (!descend(0)) {
      if (budget_hit_)
        throw BudgetExceeded(what + ": search budget of " + std::to_string(opt_.node_budget) + " nodes exhausted");
      throw TruncationExhausted(what + ": no strictly increasing choice of indices exists within the truncation (" +
                                blocker_ + ")");
    }
    return std::move(out_);
  }

 private:
  /// Does seed-map ∘ F(a → seed) restricted along b → c agree with the
  /// already chosen component at c after pulling back to a?
  bool natural_at(Elem b, Elem a, Elem c, const std::vector<Morphism>& maps_at_a) const {
    for (std::size_t k = 0; k < ch_.size(); ++k) {
      const auto& F = *ch_[k].source;
      const auto& G = *ch_[k].target;
      if (!C::equal(C::compose(G.map(b, c), maps_at_a[k]), C::compose(out_.phi[k][c], F.map(a, out_.alpha[c]))))
        return false;
    }
    return true;
  }

  std::vector<Morphism> pull(Elem b, Elem a) const {
    std::vector<Morphism> maps;
    for (std::size_t k = 0; k < ch_.size(); ++k)
      maps.push_back(C::compose(seeds_[b].base_maps[k], ch_[k].source->map(a, seeds_[b].base)));
    return maps;
  }

  /// The bound chain: walk the strict downset of b, raising
  /// the bound a_i to a least witness each time, then take a_k when it is
  /// already strictly above every chosen α(b_j), else its least strict
  /// successor.
  std::optional<Elem> preferred(Elem b) const {
    Elem a = seeds_[b].index;
    std::vector<Morphism> m = seeds_[b].maps;
    const auto below = B_.strict_down_set(b);
    std::vector<Elem> ordered;
    for (Elem c : B_.degree_order())
      if (B_.lt(c, b)) ordered.push_back(c);
    for (Elem c : ordered) {
      std::optional<Elem> next;
      for (Elem w : A_.degree_order()) {
        if (!A_.le(a, w) || !A_.le(out_.alpha[c], w)) continue;
        std::vector<Morphism> mw;
        for (std::size_t k = 0; k < ch_.size(); ++k) mw.push_back(C::compose(m[k], ch_[k].source->map(w, a)));
        if (natural_at(b, w, c, mw)) {
          next = w;
          m = std::move(mw);
          break;
        }
      }
      if (!next) return std::nullopt;
      a = *next;
    }
    auto strictly_above = [&](Elem w) {
      for (Elem c : below)
        if (!A_.lt(out_.alpha[c], w)) return false;
      return true;
    };
    if (strictly_above(a)) return a;
    for (Elem w : A_.degree_order())
      if (A_.lt(a, w)) return w;
    return std::nullopt;
  }

  bool acceptable(Elem b, Elem a) const {
    if (!A_.le(seeds_[b].base, a) || !admissible_(b, a)) return false;
    const auto maps = pull(b, a);
    for (Elem c = 0; c < B_.size(); ++c)
      if (B_.lt(c, b) && (!A_.lt(out_.alpha[c], a) || !natural_at(b, a, c, maps))) return false;
    return true;
  }

  bool descend(std::size_t pos) {
    if (pos == B_.size()) return true;
    if (++nodes_ > opt_.node_budget) {
      budget_hit_ = true;
      return false;
    }
    const Elem b = B_.degree_order()[pos];
    std::vector<Elem> candidates;
    if (auto p = preferred(b); p && acceptable(b, *p)) candidates.push_back(*p);
    for (Elem a : A_.degree_order())
      if ((candidates.empty() || a != candidates.front()) && acceptable(b, a)) candidates.push_back(a);
    if (candidates.empty() && blocker_.empty()) blocker_ = "stuck at " + B_.name(b);
    for (Elem a : candidates) {
      out_.alpha[b] = a;
      auto maps = pull(b, a);
      for (std::size_t k = 0; k < ch_.size(); ++k) out_.phi[k][b] = std::move(maps[k]);
      if (descend(pos + 1)) return true;
      if (budget_hit_) return false;
    }
    return false;
  }

  const FinPoset& A_;
  const FinPoset& B_;
  std::vector<Channel<C>> ch_;
  std::vector<Seed<C>> seeds_;
  std::function<bool(Elem, Elem)> admissible_;
  SearchOptions opt_;
  ChannelMorphism<C> out_;
  std::size_t nodes_ = 0;
  bool budget_hit_ = false;
  std::string blocker_;
};

}  // namespace detail

/// Replaces raw level representatives by a strict pre-morphism inducing the
/// same representatives up to colimit equality.
template <FactorizationBase C>
PreMorphism<C> straighten(const Diagram<C>& F, const Diagram<C>& G, const RawMorphism<C>& raw,
                          SearchOptions opt = {}) {
  if (auto why = raw_morphism_failure(F, G, raw)) throw ContractViolation("invalid raw morphism: " + *why);
  std::vector<detail::Seed<C>> seeds;
  for (Elem b = 0; b < G.size(); ++b) seeds.push_back({raw.index[b], {raw.rep[b]}, raw.index[b], {raw.rep[b]}});
  detail::IndexSearch<C> search(F.shape(), G.shape(), {{&F, &G}}, std::move(seeds),
                                [](Elem, Elem) { return true; }, opt);
  auto cm = search.run("straighten");
  return {std::move(cm.alpha), std::move(cm.phi[0])};
}

/// Pre-morphisms sharing one index map across channels; channel k of p is
/// p_phi[k].
template <FactorizationBase C>
ChannelMorphism<C> dominate_channels(const std::vector<Channel<C>>& channels, const ChannelMorphism<C>& p,
                                     const ChannelMorphism<C>& q, SearchOptions opt = {}) {
  if (channels.empty()) throw ContractViolation("dominate needs at least one channel");
  const FinPoset& A = channels[0].source->shape();
  const FinPoset& B = channels[0].target->shape();
  auto equalizes = [&](Elem b, Elem a) {
    if (!A.le(p.alpha[b], a) || !A.le(q.alpha[b], a)) return false;
    for (std::size_t k = 0; k < channels.size(); ++k) {
      const auto& F = *channels[k].source;
      if (!C::equal(C::compose(p.phi[k][b], F.map(a, p.alpha[b])), C::compose(q.phi[k][b], F.map(a, q.alpha[b]))))
        return false;
    }
    return true;
  };
  // Base bound a_0 per b: least common witness over all channels.
  std::vector<detail::Seed<C>> seeds;
  for (Elem b = 0; b < B.size(); ++b) {
    std::optional<Elem> a0;
    for (Elem a : A.degree_order())
      if (equalizes(b, a)) {
        a0 = a;
        break;
      }
    if (!a0)
      throw NotColimEqual("not colim-equal: components at " + B.name(b) +
                          " are not identified within the truncation");
    detail::Seed<C> s{*a0, {}, p.alpha[b], {}};
    for (std::size_t k = 0; k < channels.size(); ++k) {
      s.maps.push_back(C::compose(p.phi[k][b], channels[k].source->map(*a0, p.alpha[b])));
      s.base_maps.push_back(p.phi[k][b]);
    }
    seeds.push_back(std::move(s));
  }
  detail::IndexSearch<C> search(A, B, channels, std::move(seeds), equalizes, opt);
  return search.run("dominate");
}

template <FactorizationBase C>
PreMorphism<C> dominate(const Diagram<C>& F, const Diagram<C>& G, const PreMorphism<C>& p, const PreMorphism<C>& q,
                        SearchOptions opt = {}) {
  if (auto why = pre_morphism_failure(F, G, p)) throw ContractViolation("first pre-morphism is invalid: " + *why);
  if (auto why = pre_morphism_failure(F, G, q)) throw ContractViolation("second pre-morphism is invalid: " + *why);
  auto cm = dominate_channels<C>({{&F, &G}}, {p.alpha, {p.phi}}, {q.alpha, {q.phi}}, opt);
  return {std::move(cm.alpha), std::move(cm.phi[0])};
}

/// Exhaustive oracle: does any pre-morphism r >= p, q exist within the
/// truncation? r is determined by its index map, so it suffices to search
/// strictly increasing index maps inside the sets of equalizing indices.
template <FactorizationBase C>
bool upper_bound_exists_bruteforce(const std::vector<Channel<C>>& channels, const ChannelMorphism<C>& p,
                                   const ChannelMorphism<C>& q) {
  const FinPoset& A = channels[0].source->shape();
  const FinPoset& B = channels[0].target->shape();
  std::vector<std::vector<Elem>> allowed(B.size());
  for (Elem b = 0; b < B.size(); ++b)
    for (Elem a = 0; a < A.size(); ++a) {
      if (!A.le(p.alpha[b], a) || !A.le(q.alpha[b], a)) continue;
      bool all = true;
      for (std::size_t k = 0; k < channels.size() && all; ++k) {
        const auto& F = *channels[k].source;
        all = C::equal(C::compose(p.phi[k][b], F.map(a, p.alpha[b])), C::compose(q.phi[k][b], F.map(a, q.alpha[b])));
      }
      if (all) allowed[b].push_back(a);
    }
  // Plain odometer over the product of allowed sets.
  std::vector<std::size_t> pick(B.size(), 0);
  for (Elem b = 0; b < B.size(); ++b)
    if (allowed[b].empty()) return false;
  while (true) {
    bool strict = true;
    for (Elem b = 0; b < B.size() && strict; ++b)
      for (Elem c = 0; c < B.size() && strict; ++c)
        if (B.lt(b, c) && !A.lt(allowed[b][pick[b]], allowed[c][pick[c]])) strict = false;
    if (strict) return true;
    std::size_t i = B.size();
    while (i > 0 && pick[i - 1] + 1 == allowed[i - 1].size()) pick[--i] = 0;
    if (i == 0) return false;
    ++pick[i - 1];
  }
}

struct DirectedCheck {
  bool directed = true;
  std::optional<std::string> failure;
};

/// Every pair of the sample has a common upper bound found by dominate.
template <FactorizationBase C>
DirectedCheck connected_component_directed_check(const Diagram<C>& F, const Diagram<C>& G,
                                                 const std::vector<PreMorphism<C>>& sample, SearchOptions opt = {}) {
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      try {
        auto r = dominate(F, G, sample[i], sample[j], opt);
        if (!pm_leq(F, sample[i], r) || !pm_leq(F, sample[j], r) || !is_pre_morphism(F, G, r))
          return {false, "dominator of pair (" + std::to_string(i) + "," + std::to_string(j) + ") is not an upper bound"};
      } catch (const Error& e) {
        return {false, "pair (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what()};
      }
    }
  return {};
}

}  // namespace procat
