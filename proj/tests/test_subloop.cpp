#include <algorithm>
#include <set>

#include "doctest.h"
#include "steiner/errors.hpp"
#include "steiner/subloop.hpp"
#include "steiner/word.hpp"

using namespace steiner;

namespace {

const Alphabet ab3(3);
Word W(const char* s) { return parse_word(s, ab3); }

GenTuple T(std::initializer_list<const char*> ws) {
  GenTuple t;
  for (const char* s : ws) t.entries.push_back(W(s));
  return t;
}

std::set<Word, WordLess> as_set(const std::vector<Word>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_SUITE_BEGIN("subloop");

TEST_CASE("closure of a free pair of generators") {
  auto c = closure(T({"x1", "x2"}), 10);
  REQUIRE(c.size() == 4);  // 2-generated subloops cap at 4 elements
  CHECK(c[0] == Word());
  CHECK(c[3] == W("(x2 x1)"));
}

TEST_CASE("closure respects the length bound") {
  auto c = closure(T({"(x2 x1)", "x3"}), 3);
  auto expect = as_set({Word(), W("(x2 x1)"), W("x3"), W("((x2 x1) x3)")});
  CHECK(as_set(c) == expect);

  auto c2 = closure(T({"x1"}), 10);
  CHECK(c2.size() == 2);

  // A long entry still contributes short products but not itself.
  auto c3 = closure(T({"((x2 x1) x3)", "(x2 x1)"}), 2);
  CHECK(as_set(c3) == as_set({Word(), W("(x2 x1)"), W("x3")}));
}

TEST_CASE("closure cap triggers") {
  CHECK_THROWS_AS(closure(T({"x1", "x2", "x3"}), 12, 50), resource_limit_error);
}

TEST_CASE("membership and its parse certificates") {
  GenTuple t = T({"(x2 x1)", "x3"});
  REQUIRE(is_irreducible(t));
  auto p = membership(W("((x2 x1) x3)"), t);
  REQUIRE(p.has_value());
  CHECK(p->eval(t) == W("((x2 x1) x3)"));
  CHECK_FALSE(membership(W("x1"), t).has_value());
  CHECK(membership(Word(), t).has_value());
  auto pe = membership(Word(), t);
  CHECK(pe->is_empty());
  CHECK(membership(W("(x2 x1)"), t)->is_leaf());
}

TEST_CASE("membership demands irreducibility") {
  CHECK_THROWS_AS(membership(W("x1"), T({"x1", "(x2 x1)"})), precondition_error);
}

TEST_CASE("membership agrees with closure on irreducible tuples") {
  auto words = enumerate_words(3, 3);
  std::vector<GenTuple> tuples;
  for (Word a : words)
    for (Word b : words) {
      if (a.is_identity() || b.is_identity() || a == b) continue;
      GenTuple t{{a, b}};
      if (is_irreducible(t)) tuples.push_back(t);
    }
  REQUIRE(tuples.size() > 10);
  auto probes = enumerate_words(3, 6);
  for (const GenTuple& t : tuples) {
    auto ball = as_set(closure(t, 6));
    for (Word w : probes) {
      auto p = membership(w, t);
      CHECK(p.has_value() == (ball.count(w) > 0));
      if (p) CHECK(p->eval(t) == w);
    }
  }
}

TEST_CASE("find_reduction pinned examples") {
  auto s1 = find_reduction(T({"(x2 x1)", "x2", "x3"}));
  REQUIRE(s1.has_value());
  CHECK(s1->entry == 0);
  CHECK(s1->reducer == W("x2"));
  CHECK(s1->after == W("x1"));
  CHECK(s1->before == W("(x2 x1)"));

  // Entry 0 cannot shrink (the cofactor inequality is strict), entry 1 can.
  auto s2 = find_reduction(T({"x1", "(x2 x1)"}));
  REQUIRE(s2.has_value());
  CHECK(s2->entry == 1);
  CHECK(s2->reducer == W("x1"));
  CHECK(s2->after == W("x2"));

  CHECK_FALSE(find_reduction(T({"(x2 x1)", "x3"})).has_value());
  CHECK_FALSE(find_reduction(T({"x1", "x2", "x3"})).has_value());
  CHECK_FALSE(find_reduction(GenTuple{}).has_value());
  CHECK_THROWS_AS(find_reduction(T({"x1", "e"})), precondition_error);
}

TEST_CASE("find_reduction step invariants on random-ish tuples") {
  auto words = enumerate_words(3, 4);
  for (Word a : words)
    for (Word b : words) {
      if (a.is_identity() || b.is_identity()) continue;
      GenTuple t{{a, b}};
      auto s = find_reduction(t);
      if (!s) continue;
      CHECK(s->after == mult(s->before, s->reducer));
      CHECK(s->after.length() < s->before.length());
      // The parse really evaluates to the reducer over the other entries.
      GenTuple others;
      for (std::size_t j = 0; j < t.entries.size(); ++j)
        if (static_cast<int>(j) != s->entry) others.entries.push_back(t.entries[j]);
      CHECK(s->reducer_parse.eval(others) == s->reducer);
    }
}

TEST_CASE("nielsen_reduce examples and invariants") {
  auto r1 = nielsen_reduce(T({"(x2 x1)", "x2"}));
  CHECK(as_set(r1.reduced.entries) == as_set({W("x1"), W("x2")}));
  CHECK(r1.dropped.empty());
  CHECK(r1.steps.size() == 1);

  // x1 is redundant against {x2, (x2 x1)}; smallest-index tie-break drops it.
  auto r2 = nielsen_reduce(T({"x1", "x2", "(x2 x1)"}));
  CHECK(as_set(r2.reduced.entries) == as_set({W("x1"), W("x2")}));
  CHECK(r2.dropped.size() == 1);

  auto r3 = nielsen_reduce(T({"x3", "(x3 x1)"}));
  CHECK(as_set(r3.reduced.entries) == as_set({W("x1"), W("x3")}));

  // Already irreducible: untouched.
  auto r4 = nielsen_reduce(T({"(x2 x1)", "x3"}));
  CHECK(r4.steps.empty());
  CHECK(r4.reduced.entries == T({"(x2 x1)", "x3"}).entries);

  auto r5 = nielsen_reduce(T({"e", "x1"}));
  CHECK(r5.dropped == std::vector<int>{0});
  CHECK(r5.reduced.entries == std::vector<Word>{W("x1")});
}

TEST_CASE("nielsen_reduce substitutions witness equal subloops") {
  std::vector<GenTuple> cases = {
      T({"(x2 x1)", "x2"}),
      T({"x1", "x2", "(x2 x1)"}),
      T({"((x2 x1) x3)", "x3", "(x2 x1)"}),
      T({"((x3 x2) x1)", "(x3 x2)"}),
      T({"(x3 x1)", "(x3 x2)", "x3"}),
  };
  for (const GenTuple& t : cases) {
    auto r = nielsen_reduce(t);
    CHECK(is_irreducible(r.reduced));
    REQUIRE(r.reduced_over_input.size() == r.reduced.entries.size());
    for (std::size_t k = 0; k < r.reduced.entries.size(); ++k)
      CHECK(r.reduced_over_input[k].eval(t) == r.reduced.entries[k]);
    REQUIRE(r.input_over_reduced.size() == t.entries.size());
    for (std::size_t j = 0; j < t.entries.size(); ++j)
      CHECK(r.input_over_reduced[j].eval(r.reduced) == t.entries[j]);
    for (const auto& s : r.steps) {
      CHECK(s.after == mult(s.before, s.reducer));
      CHECK(s.after.length() < s.before.length());
    }
    // Idempotence.
    auto r2 = nielsen_reduce(r.reduced);
    CHECK(r2.steps.empty());
    CHECK(r2.reduced.entries == r.reduced.entries);
  }
}

TEST_CASE("free isometric check, pinned examples") {
  CHECK(is_free_isometric_upto(T({"(x2 x1)", "x3"}), 6));
  CHECK(is_free_isometric_upto(T({"x1"}), 10));
  CHECK_FALSE(is_free_isometric_upto(T({"(x2 x1)", "x2"}), 4));
  CHECK_FALSE(is_free_isometric_upto(T({"x1", "x1"}), 4));
}

TEST_CASE("irreducible iff free isometric, all short pairs") {
  auto words = enumerate_words(3, 3);
  for (Word a : words)
    for (Word b : words) {
      if (a.is_identity() || b.is_identity()) continue;
      GenTuple t{{a, b}};
      CHECK(is_irreducible(t) == is_free_isometric_upto(t, 8));
    }
}

TEST_CASE("three-entry reduction shrinks weight monotonically") {
  GenTuple t = T({"((x2 x1) x3)", "(x2 x1)", "((x3 x2) x1)"});
  auto r = nielsen_reduce(t);
  int last = t.weight();
  for (const auto& s : r.steps) {
    int w = last - s.before.length() + s.after.length();
    CHECK(w < last);
    last = w;
  }
  CHECK(is_irreducible(r.reduced));
}

TEST_SUITE_END();
