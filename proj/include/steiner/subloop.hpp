#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "steiner/word.hpp"

namespace steiner {

// Ordered tuple of subloop generators. Entries are canonical words; the empty
// word is not a legal entry for the reduction operations below.
struct GenTuple {
  std::vector<Word> entries;
  int weight() const {
    int s = 0;
    for (Word w : entries) s += w.length();
    return s;
  }
  std::size_t size() const { return entries.size(); }
};

// Formal bracketing over the entries of a tuple: how a word is built from
// generators. Immutable and shared, like Word.
class ParseTree {
 public:
  ParseTree();  // the empty product, evaluating to the empty word
  static ParseTree leaf(int entry_index);
  static ParseTree node(ParseTree left, ParseTree right);

  bool is_empty() const;
  bool is_leaf() const;
  int entry_index() const;     // pre: is_leaf
  ParseTree left() const;      // pre: inner node
  ParseTree right() const;

  // Folds mult over the tree with values[i] substituted for entry i.
  Word eval(std::span<const Word> values) const;
  Word eval(const GenTuple& t) const { return eval(std::span(t.entries)); }
  // Sum over leaves of weights[entry]; the formal length of the product.
  long long weighted_length(std::span<const int> weights) const;
  // Replaces each leaf i by repl[i].
  ParseTree substitute(std::span<const ParseTree> repl) const;

  struct N;  // opaque shared node

 private:
  explicit ParseTree(std::shared_ptr<const N> n) : node_(std::move(n)) {}
  std::shared_ptr<const N> node_;
};

// Ball of radius max_len in the generated subloop: fixpoint of pairwise mult
// from entries plus the empty word, discarding products longer than max_len.
// For an irreducible tuple this is exactly every subloop element of length
// <= max_len. Sorted ascending. Entries longer than max_len participate in
// products but are omitted from the result.
std::vector<Word> closure(const GenTuple& t, int max_len,
                          std::size_t max_set = 1'000'000);

// One reduction move: entry shrinks strictly when multiplied by a word over
// the other entries.
struct ReductionStep {
  int entry;              // index of the shrinking entry
  ParseTree reducer_parse;  // over the other entries, in order with `entry` removed
  Word reducer;           // its value
  Word before;
  Word after;             // mult(before, reducer), strictly shorter
};

// Searches entries in ascending index order; within an entry prefers the
// reducer leaving the shortest result, then the least reducer word. Complete:
// if any entry can shrink, a step is returned. Entries must be nonempty words.
std::optional<ReductionStep> find_reduction(const GenTuple& t);

bool is_irreducible(const GenTuple& t);

struct NielsenResult {
  GenTuple reduced;                 // irreducible, empty entries dropped
  std::vector<ReductionStep> steps;  // indices refer to the tuple state at the time
  std::vector<int> dropped;          // original positions whose entries became empty
  // Substitutions witnessing that the generated subloop is unchanged:
  // reduced entry k as a product of the input entries, and vice versa.
  std::vector<ParseTree> reduced_over_input;
  std::vector<ParseTree> input_over_reduced;
};

NielsenResult nielsen_reduce(const GenTuple& t);

// Decides whether w lies in the subloop generated by an irreducible tuple,
// returning a bracketing when it does. Recursion on canonical factors; sound
// because irreducible tuples generate freely with additive lengths.
// Throws precondition_error when the tuple is reducible.
std::optional<ParseTree> membership(Word w, const GenTuple& t);

// Checks, over all formal products of weighted length <= max_weighted_len,
// that evaluation is injective and lengths add up. False reports a genuine
// isometry/freeness failure; true is exhaustive up to the bound.
bool is_free_isometric_upto(const GenTuple& t, int max_weighted_len,
                            std::size_t cap = 5'000'000);

}  // namespace steiner
