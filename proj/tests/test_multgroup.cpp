#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "doctest.h"
#include "steiner/errors.hpp"
#include "steiner/multgroup.hpp"
#include "steiner/word.hpp"

using namespace steiner;

namespace {

const Alphabet ab3(3);
Word W(const char* s) { return parse_word(s, ab3); }

MultElement M(std::vector<const char*> texts) {
  std::vector<Word> letters;
  for (const char* t : texts) letters.push_back(W(t));
  return MultElement(std::move(letters));
}

// Nonempty words of length <= 2 over three generators: the letter pool used
// by the randomized cases.
std::vector<Word> short_letters() {
  std::vector<Word> out;
  for (Word w : enumerate_words(3, 2)) {
    if (!w.is_identity()) out.push_back(w);
  }
  return out;
}

MultElement random_element(std::mt19937_64& rng, int max_len) {
  static const std::vector<Word> pool = short_letters();
  std::vector<Word> letters;
  int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    letters.push_back(pool[rng() % pool.size()]);
  }
  return MultElement(std::move(letters));
}

}  // namespace

TEST_SUITE_BEGIN("multgroup");

TEST_CASE("reduction cancels adjacent equal letters") {
  CHECK(M({"x1", "x1"}).is_identity());
  CHECK(M({"x1", "x2", "x2", "x1"}).is_identity());
  CHECK(M({"x1", "x2", "(x2 x1)", "(x2 x1)", "x2", "x1"}).is_identity());

  MultElement aba = M({"x1", "x2", "x1"});
  CHECK(aba.size() == 3);
  CHECK(aba == reduce_word({W("x1"), W("x2"), W("x1")}));

  // Reduction only merges adjacent pairs; an interleaved word stays put.
  CHECK(M({"x1", "x2", "x1", "x2"}).size() == 4);

  CHECK_THROWS_AS(translation(Word()), precondition_error);
  CHECK_THROWS_AS(M({"x1", "e", "x1"}), precondition_error);
}

TEST_CASE("action folds through mult") {
  CHECK(act(M({"x1", "x2"}), Word()) == W("(x2 x1)"));
  CHECK(act(M({"x1", "x2", "(x2 x1)"}), Word()) == Word());
  for (Word w : enumerate_words(3, 3)) {
    CHECK(act(MultElement(), w) == w);
  }

  // Involution: each translation letter undoes itself.
  for (Word v : enumerate_words(3, 3)) {
    if (v.is_identity()) continue;
    CHECK(MultElement({v, v}).is_identity());
    for (Word w : enumerate_words(3, 3)) {
      CHECK(act(translation(v), act(translation(v), w)) == w);
    }
  }
}

TEST_CASE("composition is action-compatible and invertible") {
  std::mt19937_64 rng(411);
  std::vector<Word> probes = enumerate_words(3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    MultElement a = random_element(rng, 6);
    MultElement b = random_element(rng, 6);
    MultElement c = random_element(rng, 6);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(compose(a, inverse(a)).is_identity());
    CHECK(compose(inverse(a), a).is_identity());
    Word w = probes[rng() % probes.size()];
    CHECK(act(compose(a, b), w) == act(b, act(a, w)));
  }
}

TEST_CASE("stab_factor splits off the coset representative") {
  auto fab = stab_factor(M({"x1", "x2"}));
  REQUIRE(fab.rep.has_value());
  CHECK(*fab.rep == W("(x2 x1)"));
  CHECK(fab.stabilizer == M({"x1", "x2", "(x2 x1)"}));

  auto fa = stab_factor(M({"x1"}));
  REQUIRE(fa.rep.has_value());
  CHECK(*fa.rep == W("x1"));
  CHECK(fa.stabilizer.is_identity());

  auto fid = stab_factor(MultElement());
  CHECK(!fid.rep.has_value());
  CHECK(fid.stabilizer.is_identity());

  std::mt19937_64 rng(412);
  for (int trial = 0; trial < 200; ++trial) {
    MultElement g = random_element(rng, 8);
    auto f = stab_factor(g);
    CHECK(act(f.stabilizer, Word()).is_identity());
    MultElement back = f.stabilizer;
    if (f.rep) back = compose(back, translation(*f.rep));
    CHECK(back == g);
  }
}

TEST_CASE("schreier_rewrite pinned scans") {
  auto single = schreier_rewrite(M({"x1", "x2", "(x2 x1)"}));
  REQUIRE(single.size() == 1);
  CHECK(single[0].gen == StabGenerator{W("x1"), W("x2")});
  CHECK(single[0].exponent == 1);

  CHECK(schreier_rewrite(MultElement()).empty());

  StabGenerator s12{W("x1"), W("x2")};
  StabGenerator s13{W("x1"), W("x3")};
  auto two = schreier_rewrite(compose(s12.element(), s13.element()));
  REQUIRE(two.size() == 2);
  CHECK(two[0].gen == s12);
  CHECK(two[1].gen == s13);

  CHECK_THROWS_AS(schreier_rewrite(M({"x1"})), precondition_error);
  CHECK_THROWS_AS(schreier_rewrite(M({"x1", "x2"})), precondition_error);
}

TEST_CASE("schreier_rewrite recomposes random stabilizers") {
  std::mt19937_64 rng(413);
  for (int trial = 0; trial < 200; ++trial) {
    MultElement h = stab_factor(random_element(rng, 8)).stabilizer;
    auto factors = schreier_rewrite(h);
    MultElement prod;
    for (const auto& f : factors) {
      CHECK(f.exponent == 1);
      CHECK(!f.gen.degenerate());
      CHECK(act(f.gen.element(), Word()).is_identity());
      prod = compose(prod, f.gen.element());
    }
    CHECK(prod == h);
  }
}

TEST_CASE("degenerate stab generators vanish") {
  CHECK(StabGenerator{Word(), W("x1")}.degenerate());
  CHECK(StabGenerator{W("x1"), W("x1")}.degenerate());
  CHECK(StabGenerator{Word(), W("x1")}.element().is_identity());
  CHECK(StabGenerator{W("x2"), W("x2")}.element().is_identity());
  StabGenerator live{W("x1"), W("x2")};
  CHECK(!live.degenerate());
  CHECK(live.element().size() == 3);
}

TEST_CASE("nonempty reduced words act nontrivially") {
  // Depth-first over reduced words of length <= 6 in the letters R_v with
  // |v| <= 2: each must move some word of length <= 4. This is the
  // observable face of the free-product structure.
  const std::vector<Word> pool = short_letters();
  const std::vector<Word> probes = enumerate_words(3, 4);
  long total = 0;
  long moved = 0;
  std::vector<Word> stack;
  auto dfs = [&](auto&& self) -> void {
    if (!stack.empty()) {
      ++total;
      for (Word w : probes) {
        Word image = w;
        for (Word v : stack) image = mult(image, v);
        if (image != w) {
          ++moved;
          break;
        }
      }
    }
    if (stack.size() == 6) return;
    for (Word v : pool) {
      if (!stack.empty() && stack.back() == v) continue;
      stack.push_back(v);
      self(self);
      stack.pop_back();
    }
  };
  dfs(dfs);
  CHECK(total == 6 * (1 + 5 + 25 + 125 + 625 + 3125));
  CHECK(moved == total);
}

TEST_CASE("short stab generator products stay distinct") {
  // The Schreier family is closed under inversion (the inverse of s(v, w) is
  // s(v*w, w)), so sequences avoiding adjacent mutually inverse pairs are
  // reduced words over a free basis and must land on distinct elements.
  std::vector<StabGenerator> gens;
  for (Word v : short_letters()) {
    for (Word w : short_letters()) {
      StabGenerator s{v, w};
      if (!s.degenerate()) gens.push_back(s);
    }
  }
  CHECK(gens.size() == 30);

  auto inverse_pair = [](const StabGenerator& a, const StabGenerator& b) {
    return compose(a.element(), b.element()).is_identity();
  };

  std::unordered_set<std::string> seen;
  long sequences = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    MultElement gi = gens[i].element();
    ++sequences;
    seen.insert(render(gi, ab3));
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (inverse_pair(gens[i], gens[j])) continue;
      MultElement gij = compose(gi, gens[j].element());
      ++sequences;
      seen.insert(render(gij, ab3));
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (inverse_pair(gens[j], gens[k])) continue;
        ++sequences;
        seen.insert(render(compose(gij, gens[k].element()), ab3));
      }
    }
  }
  CHECK(sequences > 25000);
  CHECK(static_cast<long>(seen.size()) == sequences);
}

TEST_CASE("text form round trips") {
  CHECK(render(MultElement(), ab3) == "1");
  CHECK(parse_mult_element("1", ab3).is_identity());
  CHECK(parse_mult_element(" 1 ", ab3).is_identity());

  MultElement g = M({"x1", "x2", "(x2 x1)"});
  CHECK(render(g, ab3) == "R[x1]*R[x2]*R[(x2 x1)]");
  CHECK(parse_mult_element("R[x1]*R[x2]*R[(x2 x1)]", ab3) == g);
  CHECK(parse_mult_element(" R[x1] * R[x2] * R[(x2 x1)] ", ab3) == g);
  // Parsing reduces: adjacent equal letters cancel.
  CHECK(parse_mult_element("R[x1]*R[x1]", ab3).is_identity());

  std::mt19937_64 rng(414);
  for (int trial = 0; trial < 100; ++trial) {
    MultElement e = random_element(rng, 8);
    CHECK(parse_mult_element(render(e, ab3), ab3) == e);
  }

  CHECK_THROWS_AS(parse_mult_element("", ab3), parse_error);
  CHECK_THROWS_AS(parse_mult_element("R[x1", ab3), parse_error);
  CHECK_THROWS_AS(parse_mult_element("R[]", ab3), parse_error);
  CHECK_THROWS_AS(parse_mult_element("R[e]", ab3), parse_error);
  CHECK_THROWS_AS(parse_mult_element("Q[x1]", ab3), parse_error);
  CHECK_THROWS_AS(parse_mult_element("R[x1] R[x2]", ab3), parse_error);
  CHECK_THROWS_AS(parse_mult_element("1 R[x1]", ab3), parse_error);
  CHECK_THROWS_AS(parse_mult_element("R[x9]", ab3), parse_error);
}

TEST_SUITE_END();
