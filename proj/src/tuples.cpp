#include "fiedlerkron/tuples.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fk {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

IndexTuple make_string(int a, int b) {
  IndexTuple t;
  if (a <= b)
    for (int v = a; v <= b; ++v) t.push_back(v);
  else
    for (int v = a; v >= b; --v) t.push_back(v);
  return t;
}

IndexTuple rev_tuple(const IndexTuple& t) { return IndexTuple(t.rbegin(), t.rend()); }

IndexTuple shift(const IndexTuple& t, int a) {
  IndexTuple out = t;
  for (int& v : out) {
    require(!is_neg_zero(v), "cannot shift a tuple containing -0");
    v += a;
  }
  return out;
}

IndexTuple negate(const IndexTuple& t) {
  IndexTuple out = t;
  for (int& v : out) {
    require(!is_neg_zero(v), "cannot negate a tuple containing -0");
    v = -v;
  }
  return out;
}

IndexTuple concat(std::initializer_list<IndexTuple> parts) {
  IndexTuple out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

bool contains(const IndexTuple& t, int v) {
  return std::find(t.begin(), t.end(), v) != t.end();
}

bool is_permutation_of(const IndexTuple& t, int lo, int hi) {
  if (static_cast<int>(t.size()) != hi - lo + 1) return false;
  std::vector<bool> seen(t.size(), false);
  for (int v : t) {
    if (is_neg_zero(v) || v < lo || v > hi || seen[v - lo]) return false;
    seen[v - lo] = true;
  }
  return true;
}

bool sign_homogeneous(const IndexTuple& t) {
  bool has_nonneg = false, has_neg = false;
  for (int v : t) {
    if (is_neg_zero(v)) return false;
    (v >= 0 ? has_nonneg : has_neg) = true;
  }
  return !(has_nonneg && has_neg);
}

bool satisfies_sip(const IndexTuple& t) {
  require(sign_homogeneous(t), "SIP requires a sign-homogeneous tuple");
  const int r = static_cast<int>(t.size());
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) {
      if (t[a] != t[b]) continue;
      bool found = false;
      for (int c = a + 1; c < b && !found; ++c) found = (t[c] == t[a] + 1);
      if (!found) return false;
    }
  return true;
}

IndexTuple Csf::flatten() const {
  IndexTuple out;
  for (const auto& [a, b] : strings)
    for (int v = a; v <= b; ++v) out.push_back(v);
  return out;
}

std::set<int> Csf::heads() const {
  std::set<int> out;
  for (const auto& [a, b] : strings) out.insert(b);
  return out;
}

// Left-to-right stack construction.  Appending x to a prefix in csf either
// extends the string whose head is x-1 (Type I) or inserts the singleton
// (x:x) at the slot keeping heads strictly decreasing (Type II); x already a
// head means the SIP fails.
Csf csf(const IndexTuple& t) {
  for (int v : t) require(v >= 0 && !is_neg_zero(v), "csf needs nonnegative indices");
  struct Str {
    int a, b;
    std::vector<int> pos;
  };
  std::vector<Str> stack;  // heads strictly decreasing left to right
  for (int i = 0; i < static_cast<int>(t.size()); ++i) {
    const int x = t[i];
    int extend = -1, insert_at = static_cast<int>(stack.size());
    for (int s = 0; s < static_cast<int>(stack.size()); ++s) {
      require(stack[s].b != x, "tuple violates the SIP; no csf exists");
      if (stack[s].b == x - 1) extend = s;
      if (stack[s].b < x) {
        insert_at = s;
        break;
      }
    }
    if (extend >= 0) {
      stack[extend].b = x;
      stack[extend].pos.push_back(i);
    } else {
      stack.insert(stack.begin() + insert_at, Str{x, x, {i}});
    }
  }
  Csf out;
  for (const auto& s : stack) {
    out.strings.emplace_back(s.a, s.b);
    out.positions.insert(out.positions.end(), s.pos.begin(), s.pos.end());
  }
  return out;
}

std::set<int> heads(const IndexTuple& t) { return csf(t).heads(); }

int h_count(const IndexTuple& t) { return csf(t).h_count(); }

int h_count_shifted(const IndexTuple& t, int a) { return h_count(shift(t, a)); }

std::set<int> heads_shifted(const IndexTuple& t, int a) { return heads(shift(t, a)); }

IndexTypeResult index_type(const IndexTuple& t, int x) {
  require(x >= 0, "index_type classifies nonnegative indices");
  auto h = heads(t);
  require(!h.count(x), "(t, x) violates the SIP");
  IndexTypeResult res;
  if (h.count(x - 1)) {
    res.type = IndexType::TypeI;
    h.erase(x - 1);
    h.insert(x);
  } else {
    res.type = IndexType::TypeII;
    h.insert(x);
  }
  res.updated_heads = std::move(h);
  return res;
}

bool tuple_equivalent(const IndexTuple& t1, const IndexTuple& t2) {
  return csf(t1).flatten() == csf(t2).flatten();
}

bool sip_append_check(const IndexTuple& t, int a, int b) {
  if (!satisfies_sip(t)) return false;
  auto h = heads(t);
  for (int c = a; c <= b; ++c)
    if (h.count(c)) return false;
  return true;
}

bool distinct_tuple_equivalent(const IndexTuple& t1, const IndexTuple& t2) {
  if (t1.size() != t2.size()) return false;
  auto s1 = t1, s2 = t2;
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  if (s1 != s2) return false;
  if (std::adjacent_find(s1.begin(), s1.end()) != s1.end()) return false;
  // Positions of each value in both tuples.
  auto pos_of = [](const IndexTuple& t, int v) {
    return static_cast<int>(std::find(t.begin(), t.end(), v) - t.begin());
  };
  for (size_t i = 0; i < s1.size(); ++i)
    for (size_t j = i + 1; j < s1.size(); ++j) {
      const int u = s1[i], v = s1[j];
      if (std::abs(std::abs(u) - std::abs(v)) > 1) continue;  // commuting pair
      const bool before1 = pos_of(t1, u) < pos_of(t1, v);
      const bool before2 = pos_of(t2, u) < pos_of(t2, v);
      if (before1 != before2) return false;
    }
  return true;
}

std::string format_tuple(const IndexTuple& t) {
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < t.size()) {
    if (!first) os << ',';
    first = false;
    if (is_neg_zero(t[i])) {
      os << "-0";
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < t.size() && !is_neg_zero(t[j + 1]) && t[j + 1] == t[j] + 1) ++j;
    if (j > i) {
      os << t[i] << ':' << t[j];
      i = j + 1;
    } else {
      os << t[i];
      ++i;
    }
  }
  return os.str();
}

namespace {

int parse_int(const std::string& s, size_t& i) {
  size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  require(i > start + (s[start] == '-' || s[start] == '+' ? 1 : 0),
          "tuple syntax: expected an integer");
  if (s.compare(start, i - start, "-0") == 0) return kNegZero;
  int v = 0;
  auto [p, ec] = std::from_chars(s.data() + start, s.data() + i, v);
  require(ec == std::errc{} && p == s.data() + i, "tuple syntax: bad integer");
  return v;
}

}  // namespace

IndexTuple parse_tuple(const std::string& text) {
  IndexTuple out;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    int a = parse_int(text, i);
    skip_ws();
    if (i < text.size() && text[i] == ':') {
      ++i;
      skip_ws();
      int b = parse_int(text, i);
      require(!is_neg_zero(a) && !is_neg_zero(b), "tuple syntax: -0 cannot bound a string");
      auto str = make_string(a, b);
      out.insert(out.end(), str.begin(), str.end());
    } else {
      out.push_back(a);
    }
    skip_ws();
    if (i < text.size()) {
      require(text[i] == ',', "tuple syntax: expected ','");
      ++i;
      skip_ws();
      require(i < text.size(), "tuple syntax: trailing ','");
    }
  }
  return out;
}

}  // namespace fk
