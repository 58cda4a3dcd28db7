#include "nilaw/pattern.hpp"

#include <sstream>

namespace nilaw {

namespace {

constexpr std::array<std::array<int, 4>, 12> kCanonicalRows = {{
    {0, 0, 0, 0},
    {1, 2, 3, 0},
    {1, 2, 0, 0},
    {1, 0, 2, 0},
    {1, 0, 0, 0},
    {1, 0, 3, 0},
    {0, 0, 1, 0},
    {0, 2, 1, 0},
    {0, 2, 0, 0},
    {0, 0, 2, 0},
    {0, 2, 3, 0},
    {0, 0, 3, 0},
}};

}  // namespace

TranslationPattern TranslationPattern::canonical_right() {
  TranslationPattern p;
  p.side = Side::kRight;
  p.arity = 3;
  p.rows.assign(kCanonicalRows.begin(), kCanonicalRows.end());
  return p;
}

TranslationPattern TranslationPattern::canonical_left() {
  TranslationPattern p = canonical_right();
  p.side = Side::kLeft;
  return p;
}

TranslationPattern TranslationPattern::default_arity4() {
  TranslationPattern p;
  p.side = Side::kRight;
  p.arity = 4;
  for (int t1 : {0, 1})
    for (int t2 : {0, 2})
      for (int t3 : {0, 3})
        for (int t4 : {0, 1, 2, 3, 4}) p.rows.push_back({t1, t2, t3, t4});
  // the all-zero row is first already (odometer order starts at 0,0,0,0)
  p.validate();
  return p;
}

void TranslationPattern::validate() const {
  if (arity != 3 && arity != 4)
    fail(ErrorKind::kInvalidArgument, "pattern arity must be 3 or 4");
  if (rows.empty()) fail(ErrorKind::kInvalidArgument, "pattern has no rows");
  if (rows.size() > 64)
    fail(ErrorKind::kInvalidArgument, "patterns are limited to 64 rows (the premise mask width)");
  for (int c = 0; c < arity; ++c)
    if (rows[0][c] != 0)
      fail(ErrorKind::kInvalidArgument, "pattern row 0 must be all-zero (the untranslated tuple)");
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < 4; ++c) {
      if (c >= arity && rows[r][c] != 0)
        fail(ErrorKind::kInvalidArgument, "pattern row " + std::to_string(r) +
                                              " uses more coordinates than its arity");
      if (rows[r][c] < 0 || rows[r][c] > arity)
        fail(ErrorKind::kInvalidArgument,
             "pattern entry out of range in row " + std::to_string(r));
    }
}

bool TranslationPattern::is_canonical_right() const {
  return *this == canonical_right();
}

TranslationPattern TranslationPattern::parse(const std::string& text) {
  TranslationPattern p;
  p.rows.clear();
  std::istringstream in(text);
  std::string line;
  bool side_seen = false;
  int arity = -1;
  while (std::getline(in, line)) {
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string t = line.substr(b, e - b + 1);
    if (t[0] == '#') continue;
    if (!side_seen) {
      if (t == "side=right")
        p.side = Side::kRight;
      else if (t == "side=left")
        p.side = Side::kLeft;
      else
        fail(ErrorKind::kParse, "pattern file must start with side=right or side=left");
      side_seen = true;
      continue;
    }
    std::istringstream row_in(t);
    std::array<int, 4> row = {0, 0, 0, 0};
    int v, count = 0;
    while (row_in >> v) {
      if (count >= 4) fail(ErrorKind::kParse, "pattern row has more than 4 entries");
      row[count++] = v;
    }
    if (!row_in.eof()) fail(ErrorKind::kParse, "non-numeric pattern entry in line: " + t);
    if (arity == -1) {
      if (count != 3 && count != 4)
        fail(ErrorKind::kParse, "pattern rows must have 3 or 4 entries");
      arity = count;
    } else if (count != arity) {
      fail(ErrorKind::kParse, "pattern rows have inconsistent widths");
    }
    p.rows.push_back(row);
  }
  if (!side_seen) fail(ErrorKind::kParse, "pattern file is missing the side= header");
  if (arity == -1) fail(ErrorKind::kParse, "pattern file has no rows");
  p.arity = arity;
  try {
    p.validate();
  } catch (const Error& err) {
    fail(ErrorKind::kParse, err.what());
  }
  return p;
}

std::string TranslationPattern::serialize() const {
  std::ostringstream out;
  out << (side == Side::kLeft ? "side=left" : "side=right") << "\n";
  for (const auto& row : rows) {
    for (int c = 0; c < arity; ++c) {
      if (c) out << ' ';
      out << row[c];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> render_conditions(const TranslationPattern& p) {
  std::vector<std::string> out;
  for (const auto& row : p.rows) {
    std::string s = "[";
    for (int c = 0; c < p.arity; ++c) {
      if (c) s += ", ";
      std::string x = "x" + std::to_string(c + 1);
      if (row[c] == 0) {
        s += x;
      } else {
        std::string g = "g" + std::to_string(row[c]);
        s += p.side == TranslationPattern::Side::kLeft ? g + " " + x : x + " " + g;
      }
    }
    s += "]";
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::string> render_translate_vectors(const TranslationPattern& p) {
  if (p.side != TranslationPattern::Side::kRight)
    fail(ErrorKind::kInvalidArgument,
         "translate vectors describe right patterns only");
  std::vector<std::string> out;
  for (size_t r = 1; r < p.rows.size(); ++r) {
    std::string s = "(";
    for (int c = 0; c < p.arity; ++c) {
      if (c) s += ", ";
      s += p.rows[r][c] == 0 ? "1" : "g" + std::to_string(p.rows[r][c]) + "^-1";
    }
    s += ")";
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace nilaw
