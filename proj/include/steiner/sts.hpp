#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steiner/permgroup.hpp"

namespace steiner {

// Steiner triple system on points 1..point_count. Blocks are stored as
// ascending triples and the list itself is sorted, so == is set equality.
struct STS {
  int point_count = 0;
  std::vector<std::array<int, 3>> blocks;

  bool operator==(const STS&) const = default;
};

// One block per line: three whitespace-separated positive integer labels.
// '#' starts a comment, blank lines are skipped. Throws parse_error with the
// byte offset of the offending line. Parsing does not check the system
// axioms; see validate_sts.
STS parse_sts(const std::string& text);

struct STSValidation {
  bool valid = true;
  std::string message;
  // Set when the failure is a pair covered != once: the first such pair in
  // lexicographic order.
  std::optional<std::pair<int, int>> pair;
};

// Accepts iff point_count is 1 or 3 mod 6, every block has three distinct
// in-range points, and every pair of distinct points lies in exactly one
// block.
STSValidation validate_sts(const STS& sts);

enum class LoopKind { quasigroup, exterior, interior };

// Finite quasigroup or loop with an explicit multiplication table.
// Element indexing:
//   quasigroup, interior: index i is point i+1
//   exterior:             index 0 is the adjoined identity e, index i is point i
struct FiniteLoop {
  LoopKind kind = LoopKind::quasigroup;
  int order = 0;
  std::vector<std::vector<int>> table;  // table[x][y] = x*y, all indices
  int identity = -1;                    // -1 for the quasigroup
  int base_point = -1;                  // interior construction point, else -1

  int mul(int x, int y) const {
    return table[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }
  std::string label(int x) const;
};

// x*x = x, x*y = the third point of the block through x and y.
FiniteLoop to_quasigroup(const STS& sts);
// Quasigroup with a fresh identity adjoined and x*x = e.
FiniteLoop to_exterior(const STS& sts);
// x*y = (ax)(ay) computed in the quasigroup; a itself becomes the identity.
// The result satisfies x^3 = 1 and (x^2 y^2)^2 y^2 = x.
FiniteLoop to_interior(const STS& sts, int base_point_label);

// Inverse construction: blocks {x, y, xy} over the points. For an interior
// loop the block through x and y is {x, y, x^2 y^2}, which also yields the
// blocks {a, x, x^2} through the base point.
STS sts_from_loop(const FiniteLoop& loop);

// Header line "kind order" ("interior order base=<label>"), then one line per
// row of the table, entries space-separated by label.
std::string render_loop_table(const FiniteLoop& loop);

// Every point permutation preserving the block set, in image order.
// Exhaustive backtracking; throws resource_limit_error past the point cap.
std::vector<Perm> automorphisms(const STS& sts, int max_points = 15);
// Every element permutation preserving the table.
std::vector<Perm> automorphisms(const FiniteLoop& loop, int max_order = 16);

StabilizerChain automorphism_group(const STS& sts, int max_points = 15);
StabilizerChain automorphism_group(const FiniteLoop& loop, int max_order = 16);

// An exterior-loop automorphism fixes index 0, so it restricts to a
// permutation of the points; the restriction lines up with the quasigroup
// and STS indexing. Throws precondition_error if p moves 0.
Perm restrict_to_points(const Perm& p);

// Group generated by all row and column translations of the table.
struct MultGroupResult {
  std::vector<Perm> generators;          // distinct translations, sorted
  StabilizerChain group;
  std::vector<Perm> inner_generators;    // empty for a quasigroup
  std::optional<StabilizerChain> inner;  // stabilizer of the identity, when one exists
};
MultGroupResult mult_group(const FiniteLoop& loop,
                           unsigned long long order_cap = 10'000'000);

// Factorization Mult = B0 * Inner with B0 the right translations, checked
// exhaustively. closure_common_representative asks that R_b1 R_b2 and
// R_b2 R_b1 lie in the same coset b3 * Inner, and star_matches_table that
// the induced product b1 * b2 = b3 reproduces the loop table, including
// (b1 * b2) * b2 = b1. inner_from_schreier_generators checks that the
// elements R_a R_b R_(ab)^-1 generate the whole inner mapping group.
struct SDecompositionReport {
  unsigned long long group_order = 0;
  unsigned long long inner_order = 0;
  bool translations_involutive = false;
  bool intersection_trivial = false;
  bool factorization_counts = false;
  bool closure_common_representative = false;
  bool star_matches_table = false;
  bool inner_from_schreier_generators = false;
  std::string first_failure;  // empty when every check passed

  bool all_pass() const {
    return translations_involutive && intersection_trivial &&
           factorization_counts && closure_common_representative &&
           star_matches_table && inner_from_schreier_generators;
  }
};
// Needs a loop with an identity (exterior or interior kind).
SDecompositionReport s_decomposition_check(
    const FiniteLoop& loop, unsigned long long order_cap = 10'000'000);

// Compares Aut(interior loop at a) with the stabilizer of a inside
// Aut(exterior loop), both as permutation groups on the points.
struct T4Report {
  unsigned long long interior_aut_order = 0;
  unsigned long long exterior_aut_order = 0;
  unsigned long long stabilizer_order = 0;
  bool equal = false;
};
T4Report t4_finite_check(const STS& sts, int base_point_label,
                         int max_points = 15);

}  // namespace steiner
