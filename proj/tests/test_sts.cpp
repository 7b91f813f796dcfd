#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "steiner/errors.hpp"
#include "steiner/permgroup.hpp"
#include "steiner/sts.hpp"

using namespace steiner;

namespace {

std::string fixture_text(const char* name) {
  std::ifstream in(std::string(STEINER_DATA_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "missing fixture ", name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

STS fixture(const char* name) {
  STS sts = parse_sts(fixture_text(name));
  REQUIRE(validate_sts(sts).valid);
  return sts;
}

}  // namespace

TEST_SUITE_BEGIN("sts");

TEST_CASE("fixture files parse and validate") {
  STS three = fixture("three.sts");
  CHECK(three.point_count == 3);
  CHECK(three.blocks.size() == 1);

  STS fano = fixture("fano.sts");
  CHECK(fano.point_count == 7);
  CHECK(fano.blocks.size() == 7);

  STS sts9 = fixture("sts9.sts");
  CHECK(sts9.point_count == 9);
  CHECK(sts9.blocks.size() == 12);

  STS six = parse_sts(fixture_text("invalid_six.sts"));
  CHECK(six.point_count == 6);
  STSValidation v = validate_sts(six);
  CHECK_FALSE(v.valid);
  CHECK(v.message.find("6") != std::string::npos);

  STS padded = parse_sts("  1   2 3   # trailing note\n\n# a full comment line\n");
  CHECK(padded == three);
}

TEST_CASE("validation names the first bad pair") {
  STS dup = parse_sts("1 2 3\n1 2 4\n5 6 7\n");
  STSValidation v = validate_sts(dup);
  CHECK_FALSE(v.valid);
  REQUIRE(v.pair.has_value());
  CHECK(*v.pair == std::pair<int, int>{1, 2});
  CHECK(v.message.find("covered 2 times") != std::string::npos);

  STS sparse = parse_sts("1 2 3\n4 5 7\n");
  v = validate_sts(sparse);
  CHECK_FALSE(v.valid);
  REQUIRE(v.pair.has_value());
  CHECK(*v.pair == std::pair<int, int>{1, 4});
  CHECK(v.message.find("not covered") != std::string::npos);

  v = validate_sts(parse_sts("1 1 3\n2 3 1\n"));
  CHECK_FALSE(v.valid);
  CHECK(v.message.find("repeats") != std::string::npos);

  v = validate_sts(parse_sts("1 2 3\n1 4 5\n"));
  CHECK_FALSE(v.valid);
  CHECK(v.message.find("neither 1 nor 3") != std::string::npos);

  CHECK_FALSE(validate_sts(parse_sts("")).valid);
  CHECK(validate_sts(STS{1, {}}).valid);

  STS stray{3, {{1, 2, 4}}};
  v = validate_sts(stray);
  CHECK_FALSE(v.valid);
  CHECK(v.message.find("outside") != std::string::npos);

  CHECK_THROWS_AS(parse_sts("1 2\n"), parse_error);
  CHECK_THROWS_AS(parse_sts("1 2 3 4\n"), parse_error);
  CHECK_THROWS_AS(parse_sts("1 2 x\n"), parse_error);
  CHECK_THROWS_AS(parse_sts("0 2 3\n"), parse_error);
  CHECK_THROWS_AS(parse_sts("-1 2 3\n"), parse_error);
}

TEST_CASE("quasigroup and exterior tables satisfy their laws") {
  for (const char* name : {"three.sts", "fano.sts", "sts9.sts"}) {
    CAPTURE(name);
    STS sts = fixture(name);
    int m = sts.point_count;

    FiniteLoop q = to_quasigroup(sts);
    CHECK(q.order == m);
    CHECK(q.identity == -1);
    for (int x = 0; x < m; ++x) {
      CHECK(q.mul(x, x) == x);
      for (int y = 0; y < m; ++y) {
        CHECK(q.mul(x, y) == q.mul(y, x));
        CHECK(q.mul(q.mul(x, y), y) == x);
        if (x != y) {
          CHECK(q.mul(x, y) != x);
          CHECK(q.mul(x, y) != y);
        }
      }
    }
    CHECK(sts_from_loop(q) == sts);

    FiniteLoop ext = to_exterior(sts);
    CHECK(ext.order == m + 1);
    CHECK(ext.identity == 0);
    for (int x = 0; x < ext.order; ++x) {
      CHECK(ext.mul(0, x) == x);
      CHECK(ext.mul(x, 0) == x);
      CHECK(ext.mul(x, x) == 0);
      for (int y = 0; y < ext.order; ++y) {
        CHECK(ext.mul(x, y) == ext.mul(y, x));
        CHECK(ext.mul(x, ext.mul(x, y)) == y);
      }
    }
    CHECK(sts_from_loop(ext) == sts);
  }
}

TEST_CASE("interior loops satisfy the cube and square laws") {
  STS three = fixture("three.sts");
  STS fano = fixture("fano.sts");
  STS sts9 = fixture("sts9.sts");

  auto battery = [](const STS& sts, int a) {
    CAPTURE(sts.point_count);
    CAPTURE(a);
    int m = sts.point_count;
    FiniteLoop loop = to_interior(sts, a);
    CHECK(loop.order == m);
    CHECK(loop.identity == a - 1);
    CHECK(loop.base_point == a - 1);
    int e = loop.identity;
    for (int x = 0; x < m; ++x) {
      CHECK(loop.mul(e, x) == x);
      CHECK(loop.mul(x, loop.mul(x, x)) == e);  // x^3 = 1
      for (int y = 0; y < m; ++y) {
        CHECK(loop.mul(x, y) == loop.mul(y, x));
        int s = loop.mul(loop.mul(x, x), loop.mul(y, y));
        CHECK(loop.mul(loop.mul(s, s), loop.mul(y, y)) == x);  // (x^2 y^2)^2 y^2 = x
      }
    }
    CHECK(sts_from_loop(loop) == sts);
  };

  for (int a = 1; a <= 3; ++a) battery(three, a);
  for (int a = 1; a <= 7; ++a) battery(fano, a);
  battery(sts9, 5);

  CHECK_THROWS_AS(to_interior(fano, 0), precondition_error);
  CHECK_THROWS_AS(to_interior(fano, 8), precondition_error);
}

TEST_CASE("the three-point interior loop is the cyclic group of order 3") {
  FiniteLoop loop = to_interior(fixture("three.sts"), 1);
  // 2*2 = 3, 2*3 = 1, 3*3 = 2: a 3-cycle generated by the point 2.
  CHECK(loop.mul(1, 1) == 2);
  CHECK(loop.mul(1, 2) == 0);
  CHECK(loop.mul(2, 2) == 1);
}

TEST_CASE("automorphism groups of the classical fixtures") {
  STS three = fixture("three.sts");
  STS fano = fixture("fano.sts");
  STS sts9 = fixture("sts9.sts");

  std::vector<Perm> aut_three = automorphisms(three);
  CHECK(aut_three.size() == 6);

  std::vector<Perm> aut_fano = automorphisms(fano);
  CHECK(aut_fano.size() == 168);
  CHECK(automorphism_group(fano).order() == 168);
  CHECK(naive_closure(aut_fano, 7).size() == 168);

  std::vector<Perm> aut_sts9 = automorphisms(sts9);
  CHECK(aut_sts9.size() == 432);
  CHECK(automorphism_group(sts9).order() == 432);

  // The system, its quasigroup and its exterior loop restricted to the
  // points all have the same automorphisms.
  for (const STS* sts : {&three, &fano, &sts9}) {
    CAPTURE(sts->point_count);
    std::vector<Perm> of_sts = automorphisms(*sts);
    CHECK(automorphisms(to_quasigroup(*sts)) == of_sts);
    std::vector<Perm> restricted;
    for (const Perm& p : automorphisms(to_exterior(*sts))) {
      restricted.push_back(restrict_to_points(p));
    }
    CHECK(restricted == of_sts);
  }

  CHECK_THROWS_AS(automorphisms(fano, 5), resource_limit_error);
  CHECK_THROWS_AS(automorphisms(to_exterior(fano), 7), resource_limit_error);
}

TEST_CASE("multiplication groups and inner mappings") {
  STS three = fixture("three.sts");
  STS fano = fixture("fano.sts");
  STS sts9 = fixture("sts9.sts");

  // Exterior loop of the 3-point system is an elementary abelian group, so
  // its translations already form the whole (regular) multiplication group.
  MultGroupResult mg = mult_group(to_exterior(three));
  CHECK(mg.group.order() == 4);
  CHECK(mg.generators.size() == 4);
  REQUIRE(mg.inner.has_value());
  CHECK(mg.inner->order() == 1);
  CHECK(naive_closure(mg.generators, 4).size() == 4);

  mg = mult_group(to_exterior(fano));
  CHECK(mg.group.order() == 8);
  REQUIRE(mg.inner.has_value());
  CHECK(mg.inner->order() == 1);
  CHECK(naive_closure(mg.generators, 8).size() == 8);

  // Quasigroup translations of the affine plane generate the maps
  // y -> -y + c and y -> y + c of AG(2,3).
  mg = mult_group(to_quasigroup(sts9));
  CHECK(mg.group.order() == 18);
  CHECK_FALSE(mg.inner.has_value());
  CHECK(mg.inner_generators.empty());
  CHECK(naive_closure(mg.generators, 9).size() == 18);

  mg = mult_group(to_quasigroup(three));
  CHECK(mg.group.order() == 6);
  CHECK(naive_closure(mg.generators, 3).size() == 6);

  // Fano translations have cycle type 2.2.2.1, and the group they generate
  // is the full symmetric group on the points.
  mg = mult_group(to_quasigroup(fano));
  CHECK(mg.group.order() == 5040);
  CHECK(naive_closure(mg.generators, 7).size() == 5040);

  // Same picture one level up: the ten translations of the exterior loop of
  // the affine plane generate all of Sym(10).
  mg = mult_group(to_exterior(sts9));
  CHECK(mg.group.order() == 3628800);
  REQUIRE(mg.inner.has_value());
  CHECK(mg.inner->order() == 362880);

  CHECK_THROWS_AS(mult_group(to_exterior(fano), 4), resource_limit_error);
}

TEST_CASE("s-decomposition splits the multiplication group") {
  STS three = fixture("three.sts");
  STS fano = fixture("fano.sts");
  STS sts9 = fixture("sts9.sts");

  for (const STS* sts : {&three, &fano, &sts9}) {
    CAPTURE(sts->point_count);
    SDecompositionReport rep = s_decomposition_check(to_exterior(*sts));
    CHECK(rep.all_pass());
    CHECK(rep.first_failure.empty());
    CHECK(rep.group_order ==
          static_cast<unsigned long long>(sts->point_count + 1) * rep.inner_order);
  }

  SDecompositionReport fano_rep = s_decomposition_check(to_exterior(fano));
  CHECK(fano_rep.group_order == 8);
  CHECK(fano_rep.inner_order == 1);

  // The interior loop has translations of order 3, so it is not a Steiner
  // loop and the involution axiom must fail.
  SDecompositionReport interior_rep = s_decomposition_check(to_interior(fano, 1));
  CHECK_FALSE(interior_rep.all_pass());
  CHECK_FALSE(interior_rep.translations_involutive);
  CHECK_FALSE(interior_rep.first_failure.empty());

  CHECK_THROWS_AS(s_decomposition_check(to_quasigroup(fano)), precondition_error);
}

TEST_CASE("s-decomposition rejects a corrupted table") {
  FiniteLoop loop = to_exterior(fixture("fano.sts"));
  // Swap an intercalate in rows 1 and 2 only. Rows and columns stay
  // permutations, but the table is no longer commutative or diassociative.
  REQUIRE(loop.table[1][4] == 5);
  REQUIRE(loop.table[1][7] == 6);
  REQUIRE(loop.table[2][4] == 6);
  REQUIRE(loop.table[2][7] == 5);
  loop.table[1][4] = 6;
  loop.table[1][7] = 5;
  loop.table[2][4] = 5;
  loop.table[2][7] = 6;

  SDecompositionReport rep = s_decomposition_check(loop);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.translations_involutive);
  CHECK_FALSE(rep.closure_common_representative);
  CHECK_FALSE(rep.star_matches_table);
  CHECK_FALSE(rep.first_failure.empty());
}

TEST_CASE("interior automorphisms equal the exterior stabilizer") {
  STS three = fixture("three.sts");
  STS fano = fixture("fano.sts");
  STS sts9 = fixture("sts9.sts");

  T4Report rep = t4_finite_check(three, 1);
  CHECK(rep.equal);
  CHECK(rep.interior_aut_order == 2);
  CHECK(rep.stabilizer_order == 2);
  CHECK(rep.exterior_aut_order == 6);

  rep = t4_finite_check(fano, 1);
  CHECK(rep.equal);
  CHECK(rep.interior_aut_order == 24);
  CHECK(rep.stabilizer_order == 24);
  CHECK(rep.exterior_aut_order == 168);

  rep = t4_finite_check(fano, 3);
  CHECK(rep.equal);
  CHECK(rep.stabilizer_order == 24);

  rep = t4_finite_check(sts9, 1);
  CHECK(rep.equal);
  CHECK(rep.exterior_aut_order == 432);
  CHECK(rep.interior_aut_order == rep.stabilizer_order);
  CHECK(rep.stabilizer_order == 48);

  CHECK_THROWS_AS(t4_finite_check(fano, 8), precondition_error);
}

TEST_CASE("rendered tables carry the kind header") {
  STS three = fixture("three.sts");
  STS fano = fixture("fano.sts");

  std::string text = render_loop_table(to_quasigroup(three));
  CHECK(text == "quasigroup 3\n1 3 2\n3 2 1\n2 1 3\n");

  text = render_loop_table(to_exterior(fano));
  CHECK(text.rfind("exterior 8\ne 1 2 3 4 5 6 7\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);

  text = render_loop_table(to_interior(fano, 1));
  CHECK(text.rfind("interior 7 base=1\n", 0) == 0);
}

TEST_CASE("point restriction drops the identity slot") {
  CHECK(restrict_to_points(make_perm({0, 2, 1})).images == std::vector<int>{1, 0});
  CHECK_THROWS_AS(restrict_to_points(make_perm({1, 0, 2})), precondition_error);
}

TEST_SUITE_END();
