#pragma once

// Small index categories used by tests, the acceptance run and the CLI
// fixtures directory.

#include <string>
#include <utility>
#include <vector>

#include "procat/order.hpp"

namespace procat::fixtures {

inline FinPoset wedge() { return FinPoset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}); }

inline FinCategory one_object() { return FinCategory({"o"}, {{"id_o", 0, 0}}, {0}, {}); }

inline FinCategory two_chain() { return FinCategory::from_poset(FinPoset::chain(2, "c")); }

inline FinCategory wedge_category() { return FinCategory::from_poset(wedge()); }

/// One object with an idempotent e ∘ e = e.
inline FinCategory idempotent() {
  return FinCategory({"o"}, {{"id_o", 0, 0}, {"e", 0, 0}}, {0}, {{1, 1, 1}});
}

/// f, g: x → y equalized by h: e → x, with f ∘ h = g ∘ h = k.
inline FinCategory equalized_pair() {
  return FinCategory({"e", "x", "y"},
                     {{"id_e", 0, 0}, {"id_x", 1, 1}, {"id_y", 2, 2}, {"f", 1, 2}, {"g", 1, 2}, {"h", 0, 1}, {"k", 0, 2}},
                     {0, 1, 2}, {{3, 5, 6}, {4, 5, 6}});
}

/// The parallel pair •⇉•: not directed, since nothing equalizes f and g.
inline FinCategory parallel_pair() {
  return FinCategory({"x", "y"}, {{"id_x", 0, 0}, {"id_y", 1, 1}, {"f", 0, 1}, {"g", 0, 1}}, {0, 1}, {});
}

inline std::vector<std::pair<std::string, FinCategory>> directed_categories() {
  return {{"one_object", one_object()},   {"two_chain", two_chain()},
          {"wedge", wedge_category()},    {"idempotent", idempotent()},
          {"equalized_pair", equalized_pair()}};
}

}  // namespace procat::fixtures
