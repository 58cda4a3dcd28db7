#include "nilaw/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace nilaw {

namespace {

void check_cap(long long order, int cap, const std::string& what) {
  if (order > cap)
    fail(ErrorKind::kBudget, what + " has order " + std::to_string(order) +
                                 " above the cap " + std::to_string(cap) +
                                 " (raise --order-cap to allow it)");
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Group make_cyclic(int n, int cap) {
  if (n < 1) fail(ErrorKind::kParse, "cyclic(n) requires n >= 1");
  check_cap(n, cap, "cyclic(" + std::to_string(n) + ")");
  std::vector<element_t> mul(size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[size_t(a) * n + b] = element_t((a + b) % n);
  return Group("C" + std::to_string(n), n, std::move(mul));
}

// Dihedral group of the n-gon, order 2n. Elements are the affine maps
// x -> ex + c on Z/n with e = +-1: index c for rotations (e = +1) and
// n + c for reflections x -> -x + c. Identity (+1, 0) sits at index 0.
Group make_dihedral(int n, int cap) {
  if (n < 1) fail(ErrorKind::kParse, "dihedral(n) requires n >= 1");
  check_cap(2ll * n, cap, "dihedral(" + std::to_string(n) + ")");
  int order = 2 * n;
  auto sign = [&](int idx) { return idx < n ? 1 : -1; };
  auto shift = [&](int idx) { return idx < n ? idx : idx - n; };
  auto index_of = [&](int e, int c) {
    c = ((c % n) + n) % n;
    return e == 1 ? c : n + c;
  };
  std::vector<element_t> mul(size_t(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      // (e1,c1) o (e2,c2): x -> e1(e2 x + c2) + c1
      int e = sign(a) * sign(b);
      int c = sign(a) * shift(b) + shift(a);
      mul[size_t(a) * order + b] = element_t(index_of(e, c));
    }
  return Group("D" + std::to_string(n), order, std::move(mul));
}

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {  // (a o b)(x) = a[b[x]]
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

uint64_t perm_key(const Perm& p) {
  uint64_t k = 0;
  for (size_t i = 0; i < p.size(); ++i) k |= uint64_t(p[i]) << (4 * i);
  return k;
}

bool is_even(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  int transpositions = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = size_t(p[j])) {
      seen[j] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

Group table_from_perms(std::string name, const std::vector<Perm>& elems) {
  std::unordered_map<uint64_t, element_t> index;
  index.reserve(elems.size() * 2);
  for (size_t i = 0; i < elems.size(); ++i) index[perm_key(elems[i])] = element_t(i);
  int order = int(elems.size());
  std::vector<element_t> mul(size_t(order) * order);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      mul[size_t(a) * order + b] = index.at(perm_key(compose(elems[a], elems[b])));
  return Group(std::move(name), order, std::move(mul));
}

// Permutations of 0..n-1 in lexicographic one-line order (identity first),
// optionally filtered to even permutations.
Group make_symmetric_like(const std::string& name, int n, bool even_only, int cap) {
  if (n < 1 || n > 16) fail(ErrorKind::kParse, name + " requires 1 <= n <= 16");
  long long order = 1;
  for (int i = 2; i <= n; ++i) {
    order *= i;
    if (order > 4 * 1024 * 1024) break;  // avoid overflow before the cap check
  }
  if (even_only && n >= 2) order /= 2;
  check_cap(order, cap, name);
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<Perm> elems;
  do {
    if (!even_only || is_even(p)) elems.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return table_from_perms(name, elems);
}

// Unit quaternions {1, -1, i, -i, j, -j, k, -k} encoded as (axis, sign) with
// axis 0..3 for 1,i,j,k; index = 2*axis + (sign < 0).
Group make_quaternion8(int cap) {
  check_cap(8, cap, "quaternion8");
  // axis products: axis_mul[a][b] and the sign the product picks up
  static const int axis_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int axis_sign[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<element_t> mul(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ax = a / 2, bx = b / 2;
      int sign = (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1) * axis_sign[ax][bx];
      int cx = axis_mul[ax][bx];
      mul[size_t(a) * 8 + b] = element_t(2 * cx + (sign < 0 ? 1 : 0));
    }
  return Group("Q8", 8, std::move(mul));
}

// Upper unitriangular 3x3 matrices over Z/p: element (a,b,c) has index
// a*p^2 + b*p + c; (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
Group make_heisenberg(int p, int cap, const std::string& name) {
  if (!is_prime(p)) fail(ErrorKind::kParse, "heisenberg(p) requires a prime p");
  long long order = 1ll * p * p * p;
  check_cap(order, cap, name);
  int n = int(order);
  auto idx = [&](int a, int b, int c) { return (a * p + b) * p + c; };
  std::vector<element_t> mul(size_t(n) * n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int a2 = 0; a2 < p; ++a2)
          for (int b2 = 0; b2 < p; ++b2)
            for (int c2 = 0; c2 < p; ++c2)
              mul[size_t(idx(a, b, c)) * n + idx(a2, b2, c2)] =
                  element_t(idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p));
  return Group(name, n, std::move(mul));
}

// Extraspecial group of order p^3 and exponent p^2 (odd p): generated by x of
// order p^2 and y of order p with y^-1 x y = x^{1+p}. Element x^i y^j has
// index i*p + j; (i,j)(k,l) = (i + k(1+jp) mod p^2, j+l mod p).
Group make_extraspecial_p2(int p, int cap) {
  long long order = 1ll * p * p * p;
  std::string name = "ES(" + std::to_string(p) + ",p2)";
  check_cap(order, cap, name);
  int n = int(order), p2 = p * p;
  std::vector<element_t> mul(size_t(n) * n);
  for (int i = 0; i < p2; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < p2; ++k)
        for (int l = 0; l < p; ++l) {
          int ii = (i + k * (1 + j * p)) % p2;
          int jj = (j + l) % p;
          mul[size_t(i * p + j) * n + (k * p + l)] = element_t(ii * p + jj);
        }
  return Group(name, n, std::move(mul));
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int parse_int_arg(const std::string& arg, const std::string& family) {
  std::string t = trim(arg);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(ErrorKind::kParse, family + ": expected a number, got \"" + arg + "\"");
  return std::stoi(t);
}

BuiltGroup build_factor(const std::string& token, int cap) {
  std::string t = trim(token);
  if (t.empty()) fail(ErrorKind::kParse, "empty group spec factor");

  std::string head = t, args;
  size_t paren = t.find('(');
  if (paren != std::string::npos) {
    if (t.back() != ')')
      fail(ErrorKind::kParse, "unbalanced parentheses in spec factor \"" + t + "\"");
    head = trim(t.substr(0, paren));
    args = t.substr(paren + 1, t.size() - paren - 2);
  }
  std::string h = lower(head);

  // shorthands: C6 / D4 / S3 / A4
  if (args.empty() && h.size() >= 2 && (h[0] == 'c' || h[0] == 'd' || h[0] == 's' || h[0] == 'a') &&
      std::all_of(h.begin() + 1, h.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    args = h.substr(1);
    h = std::string(1, h[0]) == "c"   ? "cyclic"
        : std::string(1, h[0]) == "d" ? "dihedral"
        : std::string(1, h[0]) == "s" ? "symmetric"
                                      : "alternating";
  }

  if (h == "cyclic") {
    int n = parse_int_arg(args, "cyclic");
    return {make_cyclic(n, cap), "cyclic(" + std::to_string(n) + ")"};
  }
  if (h == "dihedral") {
    int n = parse_int_arg(args, "dihedral");
    return {make_dihedral(n, cap), "dihedral(" + std::to_string(n) + ")"};
  }
  if (h == "symmetric") {
    int n = parse_int_arg(args, "symmetric");
    return {make_symmetric_like("S" + std::to_string(n), n, false, cap),
            "symmetric(" + std::to_string(n) + ")"};
  }
  if (h == "alternating") {
    int n = parse_int_arg(args, "alternating");
    return {make_symmetric_like("A" + std::to_string(n), n, true, cap),
            "alternating(" + std::to_string(n) + ")"};
  }
  if (h == "quaternion8" || h == "q8") {
    if (!args.empty()) fail(ErrorKind::kParse, "quaternion8 takes no parameters");
    return {make_quaternion8(cap), "quaternion8"};
  }
  if (h == "heisenberg") {
    int p = parse_int_arg(args, "heisenberg");
    return {make_heisenberg(p, cap, "Heis" + std::to_string(p)),
            "heisenberg(" + std::to_string(p) + ")"};
  }
  if (h == "extraspecial") {
    size_t comma = args.find(',');
    if (comma == std::string::npos)
      fail(ErrorKind::kParse, "extraspecial requires (p, p|p2)");
    int p = parse_int_arg(args.substr(0, comma), "extraspecial");
    std::string variant = lower(trim(args.substr(comma + 1)));
    if (!is_prime(p) || p == 2)
      fail(ErrorKind::kParse,
           "extraspecial(p, ...) requires an odd prime p (for order 8 use dihedral(4) or "
           "quaternion8)");
    if (variant == "p")
      return {make_heisenberg(p, cap, "ES(" + std::to_string(p) + ",p)"),
              "extraspecial(" + std::to_string(p) + ",p)"};
    if (variant == "p2")
      return {make_extraspecial_p2(p, cap), "extraspecial(" + std::to_string(p) + ",p2)"};
    fail(ErrorKind::kParse, "extraspecial variant must be p or p2, got \"" + variant + "\"");
  }
  if (h == "klein") {
    Group a = make_cyclic(2, cap);
    Group b = make_cyclic(2, cap);
    return {direct_product(a, b, cap), "cyclic(2) x cyclic(2)"};
  }
  if (h == "cayley-file") {
    std::string path = trim(args);
    return {parse_cayley(read_file(path), cap), "cayley-file(" + path + ")"};
  }
  if (h == "perm-file") {
    std::string path = trim(args);
    return {parse_permutations(read_file(path), cap), "perm-file(" + path + ")"};
  }
  fail(ErrorKind::kParse, "unknown group family \"" + head + "\"");
}

}  // namespace

Group direct_product(const Group& a, const Group& b, int cap) {
  long long order = 1ll * a.order() * b.order();
  check_cap(order, cap, a.name() + " x " + b.name());
  int na = a.order(), nb = b.order(), n = int(order);
  std::vector<element_t> mul(size_t(n) * n);
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2) {
          int lhs = a1 * nb + b1, rhs = a2 * nb + b2;
          mul[size_t(lhs) * n + rhs] = element_t(a.mul(a1, a2) * nb + b.mul(b1, b2));
        }
  return Group(a.name() + " x " + b.name(), n, std::move(mul));
}

BuiltGroup build_group_spec(const std::string& spec, int cap) {
  // split on top-level 'x' separators (not inside parens, not inside a word)
  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (size_t i = 0; i < spec.size(); ++i) {
    char c = spec[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == 'x' || c == 'X')) {
      // an x with letters touching it on both sides is part of a family name
      // ("extraspecial"); anything else separates product factors
      bool prev_alpha = i > 0 && std::isalpha(static_cast<unsigned char>(spec[i - 1]));
      bool next_alpha =
          i + 1 < spec.size() && std::isalpha(static_cast<unsigned char>(spec[i + 1]));
      if (!(prev_alpha && next_alpha)) {
        tokens.push_back(cur);
        cur.clear();
        continue;
      }
    }
    cur += c;
  }
  tokens.push_back(cur);
  if (depth != 0) fail(ErrorKind::kParse, "unbalanced parentheses in group spec");

  BuiltGroup acc = build_factor(tokens[0], cap);
  for (size_t i = 1; i < tokens.size(); ++i) {
    BuiltGroup f = build_factor(tokens[i], cap);
    acc = {direct_product(acc.group, f.group, cap), acc.spec + " x " + f.spec};
  }
  return acc;
}

Group build_group(const std::string& spec, int cap) { return build_group_spec(spec, cap).group; }

Group parse_cayley(const std::string& text, int cap) {
  std::istringstream in(text);
  std::string word;
  if (!(in >> word) || lower(word) != "order")
    fail(ErrorKind::kParse, "cayley table must start with \"order n\"");
  long long n = -1;
  if (!(in >> n) || n < 1) fail(ErrorKind::kParse, "bad order in cayley header");
  check_cap(n, cap, "cayley table");

  std::vector<element_t> mul(size_t(n) * n);
  for (long long row = 0; row < n; ++row)
    for (long long col = 0; col < n; ++col) {
      long long v;
      if (!(in >> v))
        fail(ErrorKind::kParse, "cayley table is ragged: row " + std::to_string(row) +
                                    " ends at column " + std::to_string(col) + " of " +
                                    std::to_string(n));
      if (v < 0 || v >= n)
        fail(ErrorKind::kParse, "cayley entry " + std::to_string(v) + " out of range at row " +
                                    std::to_string(row) + ", column " + std::to_string(col));
      mul[size_t(row) * n + col] = element_t(v);
    }
  long long extra;
  if (in >> extra) fail(ErrorKind::kParse, "trailing data after the cayley table");

  // locate the identity, relabel it to index 0 if needed
  element_t identity = -1;
  for (element_t e = 0; e < n; ++e) {
    bool ok = true;
    for (element_t a = 0; a < n && ok; ++a)
      ok = mul[size_t(e) * n + a] == a && mul[size_t(a) * n + e] == a;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) fail(ErrorKind::kParse, "cayley table has no identity element");

  if (identity != 0) {
    std::vector<element_t> relabel(n);
    for (element_t i = 0; i < n; ++i) relabel[i] = i;
    relabel[identity] = 0;
    relabel[0] = identity;
    std::vector<element_t> remapped(size_t(n) * n);
    for (element_t a = 0; a < n; ++a)
      for (element_t b = 0; b < n; ++b)
        remapped[size_t(relabel[a]) * n + relabel[b]] = relabel[mul[size_t(a) * n + b]];
    mul = std::move(remapped);
  }

  return Group("cayley" + std::to_string(n), int(n), std::move(mul));
}

std::string serialize_cayley(const Group& g) {
  std::ostringstream out;
  out << "order " << g.order() << "\n";
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) {
      if (b) out << ' ';
      out << g.mul(element_t(a), element_t(b));
    }
    out << '\n';
  }
  return out.str();
}

Group parse_permutations(const std::string& text, int cap) {
  // split generator tokens on newlines and on commas outside parentheses
  std::vector<std::string> gen_tokens;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == '\n' || (c == ',' && depth == 0))) {
      gen_tokens.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  gen_tokens.push_back(cur);
  if (depth != 0) fail(ErrorKind::kParse, "unbalanced parentheses in permutation input");

  // first pass: parse cycles, find the largest point
  struct RawGen {
    std::vector<std::vector<int>> cycles;
  };
  std::vector<RawGen> raw;
  int max_point = 0;
  for (const std::string& tok : gen_tokens) {
    std::string t = trim(tok);
    if (t.empty() || t[0] == '#') continue;
    RawGen gen;
    size_t i = 0;
    while (i < t.size()) {
      if (std::isspace(static_cast<unsigned char>(t[i]))) {
        ++i;
        continue;
      }
      if (t[i] != '(') fail(ErrorKind::kParse, "malformed cycle near \"" + t.substr(i) + "\"");
      size_t close = t.find(')', i);
      if (close == std::string::npos) fail(ErrorKind::kParse, "unclosed cycle in \"" + t + "\"");
      std::string body = t.substr(i + 1, close - i - 1);
      for (char& c : body)
        if (c == ',') c = ' ';
      std::istringstream cyc(body);
      std::vector<int> points;
      long long v;
      while (cyc >> v) {
        if (v < 1 || v > 16)
          fail(ErrorKind::kParse, "permutation points must lie in 1..16, got " + std::to_string(v));
        points.push_back(int(v));
      }
      std::string leftover;
      if (cyc.clear(), cyc >> leftover; !leftover.empty())
        fail(ErrorKind::kParse, "malformed cycle \"(" + body + ")\"");
      if (points.empty()) fail(ErrorKind::kParse, "empty cycle in \"" + t + "\"");
      std::vector<int> sorted = points;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail(ErrorKind::kParse, "cycle repeats a point in \"(" + body + ")\"");
      max_point = std::max(max_point, sorted.back());
      gen.cycles.push_back(std::move(points));
      i = close + 1;
    }
    if (!gen.cycles.empty()) raw.push_back(std::move(gen));
  }
  if (raw.empty()) fail(ErrorKind::kParse, "no permutation generators given");

  int m = max_point;
  std::vector<Perm> gens;
  for (const RawGen& rg : raw) {
    Perm p(m);
    for (int i = 0; i < m; ++i) p[i] = i;
    for (const auto& cycle : rg.cycles) {
      // disjointness across cycles of one generator
      for (size_t i = 0; i < cycle.size(); ++i) {
        int from = cycle[i] - 1, to = cycle[(i + 1) % cycle.size()] - 1;
        if (p[from] != from)
          fail(ErrorKind::kParse, "cycles of one generator overlap at point " +
                                      std::to_string(from + 1));
        p[from] = to;
      }
    }
    gens.push_back(std::move(p));
  }

  // closure by breadth-first products with the generators
  Perm id(m);
  for (int i = 0; i < m; ++i) id[i] = i;
  std::vector<Perm> elems{id};
  std::unordered_map<uint64_t, element_t> index{{perm_key(id), 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    Perm base = elems[head];  // copy: elems may reallocate
    for (const Perm& gen : gens) {
      Perm q = compose(base, gen);
      uint64_t key = perm_key(q);
      if (index.emplace(key, element_t(elems.size())).second) {
        elems.push_back(std::move(q));
        if (elems.size() > size_t(cap))
          fail(ErrorKind::kBudget, "permutation closure exceeds the order cap " +
                                       std::to_string(cap));
      }
    }
  }

  return table_from_perms("perm" + std::to_string(elems.size()), elems);
}

const std::vector<CatalogEntry>& small_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<std::pair<std::string, std::string>> specs = {
        {"C1", "cyclic(1)"},
        {"C2", "cyclic(2)"},
        {"C3", "cyclic(3)"},
        {"C4", "cyclic(4)"},
        {"C5", "cyclic(5)"},
        {"C6", "cyclic(6)"},
        {"C8", "cyclic(8)"},
        {"C12", "cyclic(12)"},
        {"C2 x C2", "cyclic(2) x cyclic(2)"},
        {"D3", "dihedral(3)"},
        {"D4", "dihedral(4)"},
        {"D5", "dihedral(5)"},
        {"D6", "dihedral(6)"},
        {"D8", "dihedral(8)"},
        {"S3", "symmetric(3)"},
        {"S4", "symmetric(4)"},
        {"A4", "alternating(4)"},
        {"Q8", "quaternion8"},
        {"Heis3", "heisenberg(3)"},
        {"Heis5", "heisenberg(5)"},
        {"ES(3,p2)", "extraspecial(3,p2)"},
        {"C2 x S3", "cyclic(2) x symmetric(3)"},
        {"Heis3 x S3", "heisenberg(3) x symmetric(3)"},
    };
    std::vector<CatalogEntry> entries;
    for (auto& [name, spec] : specs) {
      Group g = build_group(spec);
      entries.push_back({name, spec, g.order()});
    }
    return entries;
  }();
  return catalog;
}

}  // namespace nilaw
