// Index-tuple algebra: successor infix property, column standard form,
// heads, Type I/II classification, equivalence, and the text syntax used by
// the CLI ("3:5,2,0:1"; "-6:-1" is the ascending string (-6,...,-1)).
#pragma once

#include <initializer_list>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fk {

using IndexTuple = std::vector<int>;

// Sentinel for the index "-0" appearing in nonproper generalized Fiedler
// tuples; it is distinct from 0 and only meaningful inside gfp z-tuples.
constexpr int kNegZero = std::numeric_limits<int>::min();
inline bool is_neg_zero(int v) { return v == kNegZero; }

IndexTuple make_string(int a, int b);  // (a:b); descending when a > b
IndexTuple rev_tuple(const IndexTuple& t);
IndexTuple shift(const IndexTuple& t, int a);   // a + t
IndexTuple negate(const IndexTuple& t);         // -t
IndexTuple concat(std::initializer_list<IndexTuple> parts);
bool contains(const IndexTuple& t, int v);
bool is_permutation_of(const IndexTuple& t, int lo, int hi);  // of {lo:hi}

bool sign_homogeneous(const IndexTuple& t);

// Successor Infix Property, evaluated directly from the definition.
bool satisfies_sip(const IndexTuple& t);

// Column standard form of a nonnegative SIP tuple: strings (a_i:b_i) with
// strictly decreasing heads.  `positions` is the permutation of input slots
// realizing the csf by adjacent commuting swaps (csf values = t[positions]).
struct Csf {
  std::vector<std::pair<int, int>> strings;  // stored left to right
  std::vector<int> positions;

  IndexTuple flatten() const;
  std::set<int> heads() const;
  int h_count() const { return static_cast<int>(strings.size()); }
};

Csf csf(const IndexTuple& t);  // throws std::invalid_argument if SIP fails

std::set<int> heads(const IndexTuple& t);
int h_count(const IndexTuple& t);

// h-count of a + t, the form the pencil theorems use for negative tuples.
int h_count_shifted(const IndexTuple& t, int a);
std::set<int> heads_shifted(const IndexTuple& t, int a);

enum class IndexType { TypeI, TypeII };

struct IndexTypeResult {
  IndexType type;
  std::set<int> updated_heads;  // heads(t, x)
};

IndexTypeResult index_type(const IndexTuple& t, int x);

bool tuple_equivalent(const IndexTuple& t1, const IndexTuple& t2);

// (t, a:b) satisfies SIP iff t does and no c in (a:b) lies in heads(t).
bool sip_append_check(const IndexTuple& t, int a, int b);

// Equivalence check for tuples with pairwise distinct entries (e.g. pencil
// permutation tuples): equal multisets and every non-commuting pair (values
// with ||i|-|j|| <= 1) in the same relative order.
bool distinct_tuple_equivalent(const IndexTuple& t1, const IndexTuple& t2);

std::string format_tuple(const IndexTuple& t);
IndexTuple parse_tuple(const std::string& text);  // throws on bad syntax

}  // namespace fk
