// Nielsen-style reduction for subloop generating tuples.
//
// A tuple Y is reducible when some entry y can be shortened by a word v over
// the remaining entries. Because cancellation only happens at the top of a
// canonical word, every such v is caught by three cases, checked against the
// irreducible form Z' of the remaining entries:
//   1. y itself lies in S(Z')            -> y*y = e
//   2. an immediate factor of y lies in S(Z') -> the other factor remains
//   3. an entry of Z' is a pair (y u) with |u| < |y| -> u remains
// Anything else in S(Z') is a pair of S(Z') elements (irreducible tuples
// generate freely), and a cancelling pair puts y in S(Z'), which is case 1.

#include "steiner/subloop.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "steiner/errors.hpp"

namespace steiner {

struct ParseTree::N {
  std::shared_ptr<const N> left, right;
  int entry = -1;  // >= 0 leaf, -1 inner, -2 empty
};

namespace {
const std::shared_ptr<const ParseTree::N>& empty_parse_node() {
  static const auto n = std::make_shared<const ParseTree::N>(
      ParseTree::N{nullptr, nullptr, -2});
  return n;
}
}  // namespace

ParseTree::ParseTree() : node_(empty_parse_node()) {}

ParseTree ParseTree::leaf(int entry_index) {
  return ParseTree(std::make_shared<const N>(N{nullptr, nullptr, entry_index}));
}

ParseTree ParseTree::node(ParseTree left, ParseTree right) {
  return ParseTree(
      std::make_shared<const N>(N{left.node_, right.node_, -1}));
}

bool ParseTree::is_empty() const { return node_->entry == -2; }
bool ParseTree::is_leaf() const { return node_->entry >= 0; }
int ParseTree::entry_index() const { return node_->entry; }
ParseTree ParseTree::left() const { return ParseTree(node_->left); }
ParseTree ParseTree::right() const { return ParseTree(node_->right); }

Word ParseTree::eval(std::span<const Word> values) const {
  if (is_empty()) return Word();
  if (is_leaf()) {
    if (entry_index() >= static_cast<int>(values.size()))
      throw precondition_error("parse tree leaf outside tuple");
    return values[entry_index()];
  }
  return mult(left().eval(values), right().eval(values));
}

long long ParseTree::weighted_length(std::span<const int> weights) const {
  if (is_empty()) return 0;
  if (is_leaf()) return weights[entry_index()];
  return left().weighted_length(weights) + right().weighted_length(weights);
}

ParseTree ParseTree::substitute(std::span<const ParseTree> repl) const {
  if (is_empty()) return *this;
  if (is_leaf()) {
    if (entry_index() >= static_cast<int>(repl.size()))
      throw precondition_error("parse tree leaf outside substitution");
    return repl[entry_index()];
  }
  return node(left().substitute(repl), right().substitute(repl));
}

std::vector<Word> closure(const GenTuple& t, int max_len, std::size_t max_set) {
  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> frontier;
  auto add = [&](Word w) {
    if (seen.insert(w).second) {
      frontier.push_back(w);
      if (seen.size() > max_set)
        throw resource_limit_error("closure exceeded cap of " +
                                   std::to_string(max_set));
    }
  };
  add(Word());
  for (Word w : t.entries) add(w);
  std::vector<Word> members(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (Word a : frontier) {
      for (Word b : members) {
        Word p = mult(a, b);
        if (p.length() > max_len) continue;
        if (seen.insert(p).second) {
          next.push_back(p);
          if (seen.size() > max_set)
            throw resource_limit_error("closure exceeded cap of " +
                                       std::to_string(max_set));
        }
      }
      // products within the frontier itself
      for (Word b : frontier) {
        Word p = mult(a, b);
        if (p.length() > max_len) continue;
        if (seen.insert(p).second) next.push_back(p);
      }
    }
    members.insert(members.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<Word> out;
  out.reserve(seen.size());
  for (Word w : seen)
    if (w.length() <= max_len) out.push_back(w);
  std::sort(out.begin(), out.end(), WordLess{});
  return out;
}

namespace {

// Membership without the irreducibility precondition check; callers guarantee
// the tuple is irreducible.
std::optional<ParseTree> member_unchecked(Word w, const GenTuple& t) {
  if (w.is_identity()) return ParseTree();
  for (std::size_t j = 0; j < t.entries.size(); ++j)
    if (t.entries[j] == w) return ParseTree::leaf(static_cast<int>(j));
  if (!w.is_pair()) return std::nullopt;
  auto a = member_unchecked(w.first(), t);
  if (!a) return std::nullopt;
  auto b = member_unchecked(w.second(), t);
  if (!b) return std::nullopt;
  return ParseTree::node(*a, *b);
}

struct Candidate {
  ParseTree parse;  // over the other entries of the original tuple
  Word reducer;
  Word after;
};

void check_entries(const GenTuple& t) {
  for (Word w : t.entries)
    if (w.is_identity())
      throw precondition_error("tuple entries must be nonempty words");
}

}  // namespace

std::optional<ReductionStep> find_reduction(const GenTuple& t) {
  check_entries(t);
  const std::size_t m = t.entries.size();
  for (std::size_t i = 0; i < m; ++i) {
    Word y = t.entries[i];
    GenTuple others;
    others.entries.reserve(m - 1);
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) others.entries.push_back(t.entries[j]);
    NielsenResult nr = nielsen_reduce(others);
    const GenTuple& zp = nr.reduced;
    auto over_others = [&](const ParseTree& p) {
      return p.substitute(std::span(nr.reduced_over_input));
    };
    std::vector<Candidate> cand;
    if (auto p = member_unchecked(y, zp))
      cand.push_back({over_others(*p), y, Word()});
    if (y.is_pair()) {
      for (Word f : {y.first(), y.second()}) {
        if (auto p = member_unchecked(f, zp))
          cand.push_back({over_others(*p), f, mult(y, f)});
      }
    }
    for (std::size_t k = 0; k < zp.entries.size(); ++k) {
      Word z = zp.entries[k];
      // Only (y u) with |u| < |y| shrinks; the mirrored shape (u y) forces
      // |u| >= |y| by canonicity and never qualifies.
      if (z.is_pair() && z.first() == y && z.second().length() < y.length())
        cand.push_back({nr.reduced_over_input[k], z, z.second()});
    }
    if (cand.empty()) continue;
    const Candidate* best = &cand[0];
    for (const Candidate& c : cand) {
      if (c.after.length() < best->after.length() ||
          (c.after.length() == best->after.length() &&
           compare(c.reducer, best->reducer) == Order::less))
        best = &c;
    }
    return ReductionStep{static_cast<int>(i), best->parse, best->reducer, y,
                         best->after};
  }
  return std::nullopt;
}

bool is_irreducible(const GenTuple& t) { return !find_reduction(t).has_value(); }

NielsenResult nielsen_reduce(const GenTuple& t) {
  NielsenResult res;
  GenTuple cur;
  std::vector<int> origin;               // current position -> input position
  std::vector<ParseTree> expr;           // current entry over the input tuple
  for (std::size_t j = 0; j < t.entries.size(); ++j) {
    if (t.entries[j].is_identity()) {
      res.dropped.push_back(static_cast<int>(j));
      continue;
    }
    cur.entries.push_back(t.entries[j]);
    origin.push_back(static_cast<int>(j));
    expr.push_back(ParseTree::leaf(static_cast<int>(j)));
  }
  while (auto step = find_reduction(cur)) {
    const int i = step->entry;
    // Lift the reducer parse from "others of cur" to the input tuple.
    std::vector<ParseTree> others_expr;
    others_expr.reserve(expr.size() - 1);
    for (std::size_t j = 0; j < expr.size(); ++j)
      if (static_cast<int>(j) != i) others_expr.push_back(expr[j]);
    ParseTree lifted = step->reducer_parse.substitute(std::span(others_expr));
    expr[i] = ParseTree::node(expr[i], lifted);
    cur.entries[i] = step->after;
    res.steps.push_back(*step);
    if (step->after.is_identity()) {
      res.dropped.push_back(origin[i]);
      cur.entries.erase(cur.entries.begin() + i);
      origin.erase(origin.begin() + i);
      expr.erase(expr.begin() + i);
    }
  }
  res.reduced = cur;
  res.reduced_over_input = std::move(expr);
  res.input_over_reduced.reserve(t.entries.size());
  for (Word w : t.entries) {
    auto p = member_unchecked(w, res.reduced);
    if (!p) throw error("reduction lost a generator");  // cannot happen
    res.input_over_reduced.push_back(*p);
  }
  return res;
}

std::optional<ParseTree> membership(Word w, const GenTuple& t) {
  check_entries(t);
  if (!is_irreducible(t))
    throw precondition_error("membership requires an irreducible tuple");
  return member_unchecked(w, t);
}

bool is_free_isometric_upto(const GenTuple& t, int max_weighted_len,
                            std::size_t cap) {
  const int m = static_cast<int>(t.entries.size());
  for (Word w : t.entries)
    if (w.is_identity()) return false;  // kills injectivity immediately
  if (m == 0 || max_weighted_len <= 0) return true;
  std::vector<int> weights;
  weights.reserve(m);
  for (Word w : t.entries) weights.push_back(w.length());
  // Formal products are canonical words over an abstract rank-m alphabet;
  // abstract length never exceeds weighted length, so this range is complete.
  std::unordered_map<Word, Word, WordHash> image_of;  // value -> formal word
  std::function<long long(Word)> wlen = [&](Word f) -> long long {
    if (f.is_leaf()) return weights[f.gen()];
    return wlen(f.first()) + wlen(f.second());
  };
  std::function<Word(Word)> value = [&](Word f) -> Word {
    if (f.is_leaf()) return t.entries[f.gen()];
    return mult(value(f.first()), value(f.second()));
  };
  for (Word f : enumerate_words(m, max_weighted_len, cap)) {
    if (f.is_identity()) continue;
    long long wl = wlen(f);
    if (wl > max_weighted_len) continue;
    Word v = value(f);
    if (v.length() != wl) return false;           // lengths fail to add
    if (!image_of.emplace(v, f).second) return false;  // two products collide
  }
  return true;
}

}  // namespace steiner
