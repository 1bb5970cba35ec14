#pragma once

// The concrete base category: finite sets and functions, with
// N = injections and M = surjections.
//
// Elements are dense indices 0..n-1. Printable ids are derived lazily from
// how a set was built (explicit list, tuple of a limit, tagged disjoint
// union), so large intermediate limits never materialize strings.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "procat/base.hpp"
#include "procat/errors.hpp"

namespace procat {

class FinSet;

namespace detail {

struct ExplicitLabels {
  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> index;
};

struct RowHash {
  std::size_t operator()(const std::vector<std::size_t>& row) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t v : row) h = (h ^ (v + 0x9e3779b97f4a7c15ull)) * 1099511628211ull;
    return h;
  }
};

struct TupleLabels;
struct SumLabels;

using LabelNode = std::variant<ExplicitLabels, TupleLabels, SumLabels>;

}  // namespace detail

class FinSet {
 public:
  FinSet() = default;

  /// Anonymous set {0, ..., n-1}; ids are the decimal indices.
  explicit FinSet(std::size_t n) : n_(n) {}

  /// Set with explicit ids; throws ContractViolation on duplicates.
  static FinSet of(std::vector<std::string> ids);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  std::string label(std::size_t i) const;
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    out.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) out.push_back(label(i));
    return out;
  }
  std::optional<std::size_t> find(std::string_view id) const;

  /// Structural identity: same size and same ids, with cheap shortcuts for
  /// sets built the same way.
  static bool same(const FinSet& a, const FinSet& b);

  const detail::LabelNode* node() const noexcept { return node_.get(); }

 private:
  friend struct FinSets;
  FinSet(std::size_t n, std::shared_ptr<const detail::LabelNode> node)
      : n_(n), node_(std::move(node)) {}

  std::size_t n_ = 0;
  std::shared_ptr<const detail::LabelNode> node_;
};

namespace detail {

/// Elements of a limit: rows of coordinates, one per diagram vertex.
struct TupleLabels {
  std::vector<FinSet> parts;
  std::vector<std::string> keys;
  std::vector<bool> visible;
  std::vector<std::size_t> rows;  // flat, width = parts.size()
  mutable std::once_flag index_once;
  mutable std::unordered_map<std::vector<std::size_t>, std::size_t, RowHash> index;

  std::size_t width() const noexcept { return parts.size(); }
  std::size_t at(std::size_t row, std::size_t col) const { return rows[row * width() + col]; }

  const std::unordered_map<std::vector<std::size_t>, std::size_t, RowHash>& row_index() const {
    std::call_once(index_once, [&] {
      const std::size_t w = width();
      const std::size_t n = w == 0 ? 1 : rows.size() / w;
      index.reserve(n);
      for (std::size_t r = 0; r < n; ++r)
        index.emplace(std::vector<std::size_t>(rows.begin() + r * w, rows.begin() + (r + 1) * w),
                      r);
    });
    return index;
  }
};

struct SumLabels {
  FinSet left;
  FinSet right;
};

}  // namespace detail

inline FinSet FinSet::of(std::vector<std::string> ids) {
  detail::ExplicitLabels ex;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!ex.index.emplace(ids[i], i).second)
      throw ContractViolation("duplicate element id '" + ids[i] + "'");
  const std::size_t n = ids.size();
  ex.ids = std::move(ids);
  return FinSet(n, std::make_shared<const detail::LabelNode>(std::move(ex)));
}

inline std::string FinSet::label(std::size_t i) const {
  if (i >= n_) throw ContractViolation("element index out of range");
  if (!node_) return std::to_string(i);
  if (const auto* ex = std::get_if<detail::ExplicitLabels>(node_.get())) return ex->ids[i];
  if (const auto* sum = std::get_if<detail::SumLabels>(node_.get())) {
    if (i < sum->left.size()) return "L:" + sum->left.label(i);
    return "R:" + sum->right.label(i - sum->left.size());
  }
  const auto& tup = std::get<detail::TupleLabels>(*node_);
  std::string out;
  bool keyed = !tup.keys.empty();
  out += keyed ? '{' : '(';
  bool first = true;
  for (std::size_t c = 0; c < tup.width(); ++c) {
    if (!tup.visible.empty() && !tup.visible[c]) continue;
    if (!first) out += ',';
    first = false;
    if (keyed) out += tup.keys[c] + ":";
    out += tup.parts[c].label(tup.at(i, c));
  }
  if (first) return "*";
  out += keyed ? '}' : ')';
  return out;
}

inline std::optional<std::size_t> FinSet::find(std::string_view id) const {
  if (node_) {
    if (const auto* ex = std::get_if<detail::ExplicitLabels>(node_.get())) {
      auto it = ex->index.find(std::string(id));
      if (it == ex->index.end()) return std::nullopt;
      return it->second;
    }
  }
  for (std::size_t i = 0; i < n_; ++i)
    if (label(i) == id) return i;
  return std::nullopt;
}

inline bool FinSet::same(const FinSet& a, const FinSet& b) {
  if (a.n_ != b.n_) return false;
  if (a.node_ == b.node_) return true;
  if (a.node_ && b.node_) {
    const auto* sa = std::get_if<detail::SumLabels>(a.node_.get());
    const auto* sb = std::get_if<detail::SumLabels>(b.node_.get());
    if (sa && sb) return same(sa->left, sb->left) && same(sa->right, sb->right);
    const auto* ta = std::get_if<detail::TupleLabels>(a.node_.get());
    const auto* tb = std::get_if<detail::TupleLabels>(b.node_.get());
    if (ta && tb && ta->width() == tb->width() && ta->keys == tb->keys &&
        ta->visible == tb->visible) {
      if (ta->rows != tb->rows) return false;
      for (std::size_t c = 0; c < ta->width(); ++c)
        if (!same(ta->parts[c], tb->parts[c])) return false;
      return true;
    }
  }
  for (std::size_t i = 0; i < a.n_; ++i)
    if (a.label(i) != b.label(i)) return false;
  return true;
}

/// A function between finite sets, stored as its image table.
struct FinMap {
  FinSet src;
  FinSet tgt;
  std::vector<std::size_t> images;

  FinMap() = default;
  FinMap(FinSet s, FinSet t, std::vector<std::size_t> img)
      : src(std::move(s)), tgt(std::move(t)), images(std::move(img)) {
    if (images.size() != src.size())
      throw ContractViolation("map is not total: " + std::to_string(images.size()) + " images for " +
                              std::to_string(src.size()) + " elements");
    for (std::size_t v : images)
      if (v >= tgt.size()) throw ContractViolation("map image outside the target");
  }

  std::size_t operator()(std::size_t i) const { return images[i]; }

  bool injective() const {
    std::vector<char> hit(tgt.size(), 0);
    for (std::size_t v : images) {
      if (hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  }

  bool surjective() const {
    std::vector<char> hit(tgt.size(), 0);
    std::size_t count = 0;
    for (std::size_t v : images)
      if (!hit[v]) {
        hit[v] = 1;
        ++count;
      }
    return count == tgt.size();
  }
};

/// Upper bound on the number of elements a single limit may have.
inline constexpr std::size_t kLimitElementCap = 4'000'000;

/// Traits class realizing `FactorizationBase` for finite sets.
struct FinSets {
  using Object = FinSet;
  using Morphism = FinMap;

  static const FinSet& source(const FinMap& f) { return f.src; }
  static const FinSet& target(const FinMap& f) { return f.tgt; }
  static bool same_object(const FinSet& a, const FinSet& b) { return FinSet::same(a, b); }

  static FinMap identity(const FinSet& x) {
    std::vector<std::size_t> img(x.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
    return FinMap(x, x, std::move(img));
  }

  /// g ∘ f.
  static FinMap compose(const FinMap& g, const FinMap& f) {
    if (!FinSet::same(f.tgt, g.src))
      throw ContractViolation("cannot compose: target of the first map is not the source of the second");
    std::vector<std::size_t> img(f.images.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = g.images[f.images[i]];
    return FinMap(f.src, g.tgt, std::move(img));
  }

  static bool equal(const FinMap& f, const FinMap& g) {
    return f.images == g.images && FinSet::same(f.src, g.src) && FinSet::same(f.tgt, g.tgt);
  }

  static bool in_N(const FinMap& f) { return f.injective(); }
  static bool in_M(const FinMap& f) { return f.surjective(); }

  /// Set of compatible families, enumerated by backtracking. Vertices whose
  /// value is forced by an incoming arrow are assigned as early as possible;
  /// vertices with an outgoing arrow into an assigned vertex only range
  /// over the relevant preimage.
  static LimitCone<FinSets> limit(const LimitProblem<FinSets>& problem) {
    const std::size_t m = problem.objects.size();
    for (const auto& e : problem.edges) {
      if (e.from >= m || e.to >= m) throw ContractViolation("limit edge out of range");
      if (!FinSet::same(e.map.src, problem.objects[e.from]) ||
          !FinSet::same(e.map.tgt, problem.objects[e.to]))
        throw ContractViolation("limit edge map does not match its endpoints");
    }

    std::vector<std::vector<std::size_t>> in(m), out(m);
    for (std::size_t k = 0; k < problem.edges.size(); ++k) {
      in[problem.edges[k].to].push_back(k);
      out[problem.edges[k].from].push_back(k);
    }

    // Static variable order.
    std::vector<std::size_t> order;
    std::vector<char> placed(m, 0);
    for (std::size_t step = 0; step < m; ++step) {
      std::size_t best = m;
      int best_score = 3;
      for (std::size_t v = 0; v < m; ++v) {
        if (placed[v]) continue;
        int score = 2;
        for (std::size_t k : in[v])
          if (placed[problem.edges[k].from]) score = 0;
        if (score == 2)
          for (std::size_t k : out[v])
            if (placed[problem.edges[k].to]) score = 1;
        if (score < best_score) {
          best_score = score;
          best = v;
        }
      }
      placed[best] = 1;
      order.push_back(best);
    }
    std::vector<std::size_t> position(m);
    for (std::size_t p = 0; p < m; ++p) position[order[p]] = p;

    // Per position: how the candidate set is generated and which edges to check.
    struct Plan {
      int mode = 2;  // 0 forced by edge, 1 preimage along edge, 2 all values
      std::size_t edge = 0;
      std::vector<std::size_t> checks;
    };
    std::vector<Plan> plan(m);
    std::vector<std::vector<std::vector<std::size_t>>> preimages(problem.edges.size());
    for (std::size_t p = 0; p < m; ++p) {
      const std::size_t v = order[p];
      Plan& pl = plan[p];
      for (std::size_t k : in[v])
        if (position[problem.edges[k].from] < p && pl.mode != 0) {
          pl.mode = 0;
          pl.edge = k;
        }
      if (pl.mode != 0)
        for (std::size_t k : out[v])
          if (position[problem.edges[k].to] < p && pl.mode != 1) {
            pl.mode = 1;
            pl.edge = k;
          }
      for (std::size_t k : in[v])
        if (position[problem.edges[k].from] < p && !(pl.mode == 0 && k == pl.edge))
          pl.checks.push_back(k);
      for (std::size_t k : out[v])
        if (position[problem.edges[k].to] < p && !(pl.mode == 1 && k == pl.edge))
          pl.checks.push_back(k);
      if (pl.mode == 1 && preimages[pl.edge].empty()) {
        const auto& e = problem.edges[pl.edge];
        preimages[pl.edge].assign(e.map.tgt.size(), {});
        for (std::size_t x = 0; x < e.map.images.size(); ++x)
          preimages[pl.edge][e.map.images[x]].push_back(x);
      }
    }

    std::vector<std::size_t> value(m, 0);
    std::vector<std::size_t> rows;
    std::size_t count = 0;

    auto consistent = [&](std::size_t p) {
      for (std::size_t k : plan[p].checks) {
        const auto& e = problem.edges[k];
        if (e.map.images[value[e.from]] != value[e.to]) return false;
      }
      return true;
    };

    std::function<void(std::size_t)> descend = [&](std::size_t p) {
      if (p == m) {
        if (++count > kLimitElementCap)
          throw BudgetExceeded("limit has more than " + std::to_string(kLimitElementCap) +
                               " elements");
        rows.insert(rows.end(), value.begin(), value.end());
        return;
      }
      const std::size_t v = order[p];
      const Plan& pl = plan[p];
      if (pl.mode == 0) {
        const auto& e = problem.edges[pl.edge];
        value[v] = e.map.images[value[e.from]];
        if (consistent(p)) descend(p + 1);
      } else if (pl.mode == 1) {
        const auto& e = problem.edges[pl.edge];
        for (std::size_t x : preimages[pl.edge][value[e.to]]) {
          value[v] = x;
          if (consistent(p)) descend(p + 1);
        }
      } else {
        for (std::size_t x = 0; x < problem.objects[v].size(); ++x) {
          value[v] = x;
          if (consistent(p)) descend(p + 1);
        }
      }
    };
    descend(0);

    return make_tuple_cone(problem.objects, problem.keys, problem.visible, std::move(rows), count);
  }

  /// {(x, y) : f(x) = g(y)} in lexicographic order.
  static LimitCone<FinSets> pullback(const FinMap& f, const FinMap& g) {
    if (!FinSet::same(f.tgt, g.tgt)) throw ContractViolation("pullback of maps with different targets");
    std::vector<std::vector<std::size_t>> pre(g.tgt.size());
    for (std::size_t y = 0; y < g.images.size(); ++y) pre[g.images[y]].push_back(y);
    std::vector<std::size_t> rows;
    std::size_t count = 0;
    for (std::size_t x = 0; x < f.images.size(); ++x)
      for (std::size_t y : pre[f.images[x]]) {
        rows.push_back(x);
        rows.push_back(y);
        ++count;
      }
    return make_tuple_cone({f.src, g.src}, {}, {}, std::move(rows), count);
  }

  /// The map into a limit apex determined by `legs` (one per vertex of the
  /// problem the cone was built from). Throws if the legs are not a cone.
  static FinMap induce(const LimitCone<FinSets>& cone, const FinSet& from,
                       const std::vector<FinMap>& legs) {
    const auto* tup = cone.apex.node()
                          ? std::get_if<detail::TupleLabels>(cone.apex.node())
                          : nullptr;
    if (!tup) throw ContractViolation("induce needs a cone produced by limit or pullback");
    if (legs.size() != tup->width()) throw ContractViolation("induce: wrong number of legs");
    for (std::size_t c = 0; c < legs.size(); ++c)
      if (!FinSet::same(legs[c].src, from) || !FinSet::same(legs[c].tgt, tup->parts[c]))
        throw ContractViolation("induce: leg " + std::to_string(c) + " has the wrong type");
    const auto& index = tup->row_index();
    std::vector<std::size_t> img(from.size());
    std::vector<std::size_t> row(legs.size());
    for (std::size_t x = 0; x < from.size(); ++x) {
      for (std::size_t c = 0; c < legs.size(); ++c) row[c] = legs[c].images[x];
      auto it = index.find(row);
      if (it == index.end())
        throw ContractViolation("induce: legs are not compatible at element " + from.label(x));
      img[x] = it->second;
    }
    return FinMap(from, cone.apex, std::move(img));
  }

  static FinSet disjoint_union(const FinSet& x, const FinSet& y) {
    return FinSet(x.size() + y.size(),
                  std::make_shared<const detail::LabelNode>(detail::SumLabels{x, y}));
  }

  /// X → X ⊔ Y → Y with left the inclusion and right = [f, id].
  static FactorizationTriple<FinSets> factorize(const FinMap& f) {
    FinSet mid = disjoint_union(f.src, f.tgt);
    std::vector<std::size_t> left(f.src.size()), right(mid.size());
    for (std::size_t i = 0; i < f.src.size(); ++i) {
      left[i] = i;
      right[i] = f.images[i];
    }
    for (std::size_t j = 0; j < f.tgt.size(); ++j) right[f.src.size() + j] = j;
    return {mid, FinMap(f.src, mid, std::move(left)), FinMap(mid, f.tgt, std::move(right))};
  }

  /// The mid map l ⊔ k induced by a commuting square t∘l = k∘f.
  static FinMap factorize_square(const FinMap& f, const FinMap& t, const FinMap& l,
                                 const FinMap& k) {
    if (!FinSet::same(l.src, f.src) || !FinSet::same(k.src, f.tgt) || !FinSet::same(l.tgt, t.src) ||
        !FinSet::same(k.tgt, t.tgt))
      throw ContractViolation("factorize_square: square maps have the wrong types");
    for (std::size_t x = 0; x < f.src.size(); ++x)
      if (t.images[l.images[x]] != k.images[f.images[x]])
        throw ContractViolation("factorize_square: square does not commute at " + f.src.label(x));
    FinSet from = disjoint_union(f.src, f.tgt);
    FinSet to = disjoint_union(t.src, t.tgt);
    std::vector<std::size_t> img(from.size());
    for (std::size_t x = 0; x < f.src.size(); ++x) img[x] = l.images[x];
    for (std::size_t y = 0; y < f.tgt.size(); ++y) img[f.src.size() + y] = t.src.size() + k.images[y];
    return FinMap(from, to, std::move(img));
  }

  /// Lift for a commuting square with g injective and f surjective: the
  /// image of g follows `top`; every other b goes to the least preimage of
  /// bottom(b) under f.
  static FinMap lift(const FinMap& g, const FinMap& f, const FinMap& top, const FinMap& bottom) {
    check_square(g, f, top, bottom);
    if (!g.injective()) throw ContractViolation("lift: left map is not injective");
    if (!f.surjective()) throw ContractViolation("lift: right map is not surjective");
    std::vector<std::size_t> least(f.tgt.size(), f.src.size());
    for (std::size_t x = f.src.size(); x-- > 0;) least[f.images[x]] = x;
    std::vector<std::size_t> img(g.tgt.size(), f.src.size());
    for (std::size_t a = 0; a < g.src.size(); ++a) img[g.images[a]] = top.images[a];
    for (std::size_t b = 0; b < g.tgt.size(); ++b)
      if (img[b] == f.src.size()) img[b] = least[bottom.images[b]];
    return FinMap(g.tgt, f.src, std::move(img));
  }

  /// Throws ContractViolation unless f∘top = bottom∘g with matching types.
  static void check_square(const FinMap& g, const FinMap& f, const FinMap& top,
                           const FinMap& bottom) {
    if (!FinSet::same(top.src, g.src) || !FinSet::same(top.tgt, f.src) ||
        !FinSet::same(bottom.src, g.tgt) || !FinSet::same(bottom.tgt, f.tgt))
      throw ContractViolation("lifting square maps have the wrong types");
    for (std::size_t a = 0; a < g.src.size(); ++a)
      if (f.images[top.images[a]] != bottom.images[g.images[a]])
        throw ContractViolation("lifting square does not commute at " + g.src.label(a));
  }

 private:
  static LimitCone<FinSets> make_tuple_cone(const std::vector<FinSet>& parts,
                                            const std::vector<std::string>& keys,
                                            const std::vector<bool>& visible,
                                            std::vector<std::size_t> rows, std::size_t count) {
    auto node = std::make_shared<detail::LabelNode>(std::in_place_type<detail::TupleLabels>);
    auto& tup = std::get<detail::TupleLabels>(*node);
    tup.parts = parts;
    tup.keys = keys;
    tup.visible = visible;
    tup.rows = std::move(rows);
    FinSet apex(count, std::shared_ptr<const detail::LabelNode>(node));
    LimitCone<FinSets> cone{apex, {}};
    const std::size_t w = parts.size();
    for (std::size_t c = 0; c < w; ++c) {
      std::vector<std::size_t> img(count);
      for (std::size_t r = 0; r < count; ++r) img[r] = tup.rows[r * w + c];
      cone.legs.emplace_back(apex, parts[c], std::move(img));
    }
    return cone;
  }
};

static_assert(FactorizationBase<FinSets>);

}  // namespace procat
