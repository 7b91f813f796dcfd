#pragma once

#include <vector>

#include "steiner/subloop.hpp"
#include "steiner/word.hpp"

namespace steiner {

// Endomorphism of the free Steiner loop on rank generators, given by the
// images of the generators. Composition is a right action: in compose(f, g),
// f acts first.
struct Endomorphism {
  int rank = 0;
  std::vector<Word> images;
  bool operator==(const Endomorphism&) const = default;
};

Endomorphism identity_endo(int rank);
// x_i -> x_sigma[i]; sigma must be a permutation of 0..rank-1.
Endomorphism permutation_endo(const std::vector<int>& sigma);

// Substitutes images for generators and refolds. Throws precondition_error
// when w mentions a generator outside the alphabet of f.
Word apply(const Endomorphism& f, Word w);

Endomorphism compose(const Endomorphism& f, const Endomorphism& g);

// x_index -> x_index * factor, all other generators fixed. An involution.
// factor must be a nonempty word over the other generators.
struct ElementaryAut {
  int rank;
  int index;
  Word factor;
  ElementaryAut(int rank, int index, Word factor);
  Endomorphism endo() const;
};

// Product of elementary automorphisms, applied leftmost first.
struct TameWord {
  std::vector<ElementaryAut> letters;
  Endomorphism evaluate(int rank) const;
};

// An endomorphism is an automorphism exactly when Nielsen reduction of its
// image tuple ends at a permutation of the generators with nothing dropped.
bool is_automorphism(const Endomorphism& f);

// Constructive tame decomposition: peels one elementary letter per reduction
// step of the image tuple, then expands the residual generator permutation
// into transpositions (three elementary letters each). The result evaluates
// back to f exactly. Throws precondition_error if f is not an automorphism.
TameWord tame_decompose(const Endomorphism& f);

// Inverse automorphism via the reversed decomposition (each letter is an
// involution).
Endomorphism invert(const Endomorphism& f);

// Dichotomy for how an elementary automorphism e acts on a pair u = (u1 u2):
// either the images of the factors pair up without cancellation, or u
// collapses to the moved generator (exactly when {u1, u2} = {x_index, factor}).
enum class L2Case { split_preserved, collapsed_to_generator };
L2Case lemma_l2_classify(Word u, const ElementaryAut& e);

}  // namespace steiner
