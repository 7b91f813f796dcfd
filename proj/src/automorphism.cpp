// Tame decomposition of free Steiner loop automorphisms.
//
// If f is an automorphism with image tuple Y != X, some entry shrinks under a
// reducer v over the other entries (the tuple generates everything, so it
// cannot be irreducible of full weight). Writing v as a word w in the other
// generators, f = e_i(w) . f' where f' has the reduced tuple as images;
// induction on weight terminates at a permutation, which is a product of
// transpositions (ij) = e_i(xj) e_j(xi) e_i(xj).

#include "steiner/automorphism.hpp"

#include <algorithm>

#include "steiner/errors.hpp"

namespace steiner {

Endomorphism identity_endo(int rank) {
  Endomorphism f{rank, {}};
  f.images.reserve(rank);
  for (int i = 0; i < rank; ++i) f.images.push_back(Word::leaf(i));
  return f;
}

Endomorphism permutation_endo(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<bool> hit(n, false);
  for (int v : sigma) {
    if (v < 0 || v >= n || hit[v])
      throw precondition_error("not a permutation");
    hit[v] = true;
  }
  Endomorphism f{n, {}};
  for (int i = 0; i < n; ++i) f.images.push_back(Word::leaf(sigma[i]));
  return f;
}

Word apply(const Endomorphism& f, Word w) {
  if (w.is_identity()) return w;
  if (w.is_leaf()) {
    if (w.gen() >= f.rank)
      throw precondition_error("word mentions generator outside the alphabet");
    return f.images[w.gen()];
  }
  return mult(apply(f, w.first()), apply(f, w.second()));
}

Endomorphism compose(const Endomorphism& f, const Endomorphism& g) {
  if (f.rank != g.rank) throw precondition_error("rank mismatch in compose");
  Endomorphism h{f.rank, {}};
  h.images.reserve(f.rank);
  for (Word w : f.images) h.images.push_back(apply(g, w));
  return h;
}

ElementaryAut::ElementaryAut(int rank_, int index_, Word factor_)
    : rank(rank_), index(index_), factor(factor_) {
  if (index < 0 || index >= rank)
    throw precondition_error("elementary automorphism index out of range");
  if (factor.is_identity())
    throw precondition_error("elementary automorphism factor must be nonempty");
  if (!is_canonical(factor) || max_gen(factor) >= rank)
    throw precondition_error("elementary automorphism factor malformed");
  // factor over the other generators only
  std::vector<Word> stack{factor};
  while (!stack.empty()) {
    Word w = stack.back();
    stack.pop_back();
    if (w.is_leaf() && w.gen() == index)
      throw precondition_error(
          "elementary automorphism factor mentions the moved generator");
    if (w.is_pair()) {
      stack.push_back(w.first());
      stack.push_back(w.second());
    }
  }
}

Endomorphism ElementaryAut::endo() const {
  Endomorphism f = identity_endo(rank);
  f.images[index] = mult(Word::leaf(index), factor);
  return f;
}

Endomorphism TameWord::evaluate(int rank) const {
  Endomorphism acc = identity_endo(rank);
  for (const ElementaryAut& e : letters) {
    if (e.rank != rank) throw precondition_error("rank mismatch in tame word");
    acc = compose(acc, e.endo());
  }
  return acc;
}

namespace {

bool is_generator_permutation(const std::vector<Word>& images, int rank) {
  if (static_cast<int>(images.size()) != rank) return false;
  std::vector<bool> hit(rank, false);
  for (Word w : images) {
    if (!w.is_leaf() || w.gen() >= rank || hit[w.gen()]) return false;
    hit[w.gen()] = true;
  }
  return true;
}

void check_endo(const Endomorphism& f) {
  if (static_cast<int>(f.images.size()) != f.rank)
    throw precondition_error("endomorphism image count != rank");
  for (Word w : f.images)
    if (max_gen(w) >= f.rank)
      throw precondition_error("image mentions generator outside the alphabet");
}

}  // namespace

bool is_automorphism(const Endomorphism& f) {
  check_endo(f);
  NielsenResult r = nielsen_reduce(GenTuple{f.images});
  return r.dropped.empty() && is_generator_permutation(r.reduced.entries, f.rank);
}

TameWord tame_decompose(const Endomorphism& f) {
  if (!is_automorphism(f))
    throw precondition_error("tame_decompose requires an automorphism");
  const int n = f.rank;
  TameWord out;
  GenTuple cur{f.images};
  int guard = cur.weight() + n + 2;
  while (!is_generator_permutation(cur.entries, n)) {
    if (--guard < 0) throw error("tame decomposition failed to terminate");
    auto step = find_reduction(cur);
    if (!step) throw error("automorphism tuple stuck before reaching a permutation");
    // Reducer as a word in the untouched generators: evaluate its parse at
    // x_j for each remaining position j.
    std::vector<Word> other_gens;
    other_gens.reserve(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != step->entry) other_gens.push_back(Word::leaf(j));
    Word w = step->reducer_parse.eval(std::span<const Word>(other_gens));
    out.letters.emplace_back(n, step->entry, w);
    cur.entries[step->entry] = step->after;
  }
  // Residual permutation: peel transpositions from the left. sigma = T o rest,
  // with T applied first under the right-action convention.
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = cur.entries[i].gen();
  auto emit_transposition = [&](int i, int j) {
    out.letters.emplace_back(n, i, Word::leaf(j));
    out.letters.emplace_back(n, j, Word::leaf(i));
    out.letters.emplace_back(n, i, Word::leaf(j));
  };
  for (int i = 0; i < n; ++i) {
    if (sigma[i] == i) continue;
    int j = -1;
    for (int k = i + 1; k < n; ++k)
      if (sigma[k] == i) j = k;
    emit_transposition(i, j);
    std::swap(sigma[i], sigma[j]);  // precompose with (i j)
  }
  if (out.evaluate(n) != f) throw error("tame decomposition failed to verify");
  return out;
}

Endomorphism invert(const Endomorphism& f) {
  TameWord d = tame_decompose(f);
  std::reverse(d.letters.begin(), d.letters.end());
  Endomorphism g = d.evaluate(f.rank);
  if (compose(f, g) != identity_endo(f.rank) ||
      compose(g, f) != identity_endo(f.rank))
    throw error("inverse failed to verify");
  return g;
}

L2Case lemma_l2_classify(Word u, const ElementaryAut& e) {
  if (!u.is_pair())
    throw precondition_error("lemma_l2_classify expects a pair");
  Endomorphism f = e.endo();
  Word b1 = apply(f, u.first());
  Word b2 = apply(f, u.second());
  Word a = apply(f, u);
  if (a != mult(b1, b2)) throw error("apply is not multiplicative");
  if (a.is_pair() && ((a.first() == b1 && a.second() == b2) ||
                      (a.first() == b2 && a.second() == b1)))
    return L2Case::split_preserved;
  Word xi = Word::leaf(e.index);
  bool factors_match = (u.first() == xi && u.second() == e.factor) ||
                       (u.first() == e.factor && u.second() == xi);
  if (a == xi && factors_match) return L2Case::collapsed_to_generator;
  throw error("pair image escaped the split/collapse dichotomy");
}

}  // namespace steiner
