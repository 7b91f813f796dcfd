#pragma once

#include "steiner/word.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace steiner {

// Element of the multiplication group, kept as a reduced word in the
// translation letters R_v (v a nonempty canonical word).  Every letter is an
// involution and no relation holds beyond R_v R_v = 1, so two elements are
// equal iff their reduced letter sequences are equal.
class MultElement {
 public:
  MultElement() = default;  // identity
  explicit MultElement(std::vector<Word> letters);

  const std::vector<Word>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  bool operator==(const MultElement&) const = default;

 private:
  std::vector<Word> letters_;
};

// Cancels adjacent equal letters to a fixpoint.  Rejects the empty word as a
// letter: R_e is the identity translation, not a generator.
MultElement reduce_word(const std::vector<Word>& letters);

// The single translation R_v.
MultElement translation(Word v);

// Concatenation a then b, re-reduced.  act(compose(a, b), w) = act(b, act(a, w)).
MultElement compose(const MultElement& a, const MultElement& b);

// Reverse the letters; each letter is its own inverse.
MultElement inverse(const MultElement& g);

// Folds w through the letters left to right via mult.
Word act(const MultElement& g, Word w);

// g = stabilizer * R_{rep} where rep = act(g, e); rep is absent when g
// already fixes the identity.
struct StabFactorization {
  MultElement stabilizer;
  std::optional<Word> rep;
};

StabFactorization stab_factor(const MultElement& g);

// The stabilizer element R_v R_w R_{v*w}.  Degenerate (equal to the identity)
// exactly when v is empty or w = v.
struct StabGenerator {
  Word v;
  Word w;

  bool degenerate() const;
  MultElement element() const;

  bool operator==(const StabGenerator&) const = default;
};

// One factor of a Schreier rewriting.  The left-to-right coset scan only ever
// produces exponent +1; the field exists because the generator family is
// closed under inversion (s(v, w)^-1 = s(v*w, w)) and callers may negate.
struct SchreierFactor {
  StabGenerator gen;
  int exponent = 1;
};

// Rewrites an element of the stabilizer of the identity as a product of
// Schreier generators, scanning letters with a running coset representative
// and dropping degenerate factors.  Throws precondition_error when h moves
// the identity.  The recomposition is checked before returning.
std::vector<SchreierFactor> schreier_rewrite(const MultElement& h);

// Textual form "R[x1]*R[(x2 x1)]"; the identity renders as "1".
std::string render(const MultElement& g, const Alphabet& alphabet);
MultElement parse_mult_element(std::string_view text, const Alphabet& alphabet);

}  // namespace steiner
