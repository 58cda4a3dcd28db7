#pragma once

#include <array>
#include <string>
#include <vector>

#include "nilaw/group.hpp"

namespace nilaw {

// A translation pattern is data, not code: row r assigns to coordinate c a
// translation index p in 0..arity, meaning coordinate c of the instance is
// x_c * g_p (side = right), g_p * x_c (side = left), or x_c untranslated when
// p = 0. Row 0 is always all-zero (the untranslated tuple). The canonical
// right pattern is the 12-condition set whose satisfaction forces
// [g1,g2,g3] = 1; the left and arity-4 variants are the open questions the
// search subcommand probes.
struct TranslationPattern {
  enum class Side { kRight, kLeft };

  Side side = Side::kRight;
  int arity = 3;
  std::vector<std::array<int, 4>> rows;

  static TranslationPattern canonical_right();
  static TranslationPattern canonical_left();
  // Default arity-4 probe: the full grid {0,1} x {0,2} x {0,3} x {0..4}
  // (40 rows), the strongest structured premise set extending the canonical
  // layout one coordinate up.
  static TranslationPattern default_arity4();

  // File format: "side=right|left" header, then one row per line with
  // space-separated entries. Arity inferred from row width (3 or 4).
  static TranslationPattern parse(const std::string& text);
  std::string serialize() const;

  bool is_canonical_right() const;
  void validate() const;

  friend bool operator==(const TranslationPattern&, const TranslationPattern&) = default;
};

// "[x1 g1, x2 g2, x3]"-style condition strings, one per row.
std::vector<std::string> render_conditions(const TranslationPattern& p);

// Rows 1.. of a right pattern as the translate vectors "(g1^-1, 1, g2^-1)"
// whose right-translates of the law set the conditions test membership in.
std::vector<std::string> render_translate_vectors(const TranslationPattern& p);

}  // namespace nilaw
