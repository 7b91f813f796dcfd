#pragma once

#include "steiner/automorphism.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace steiner {

// Generating letters for the automorphism group of the 3-generated free
// loop and for the stabilizer of x3 inside it.  tau and s12 name the same
// automorphism; they are kept apart so words read like the presentations
// they came from.
enum class GroupLetter { phi, s12, s13, tau, xi };

Endomorphism letter_endo(GroupLetter l);

// Right-action product of the letters, leftmost applied first.
Endomorphism eval_word(const std::vector<GroupLetter>& letters);

struct RelationCheck {
  std::string name;
  bool holds = false;
};

struct KnownRelationsReport {
  std::vector<RelationCheck> checks;
  bool all_hold = false;
};

// Evaluates both sides of every identity the engine knows about among the
// involutions phi, tau, xi, the transpositions, and the elementary
// automorphisms, and reports pass/fail for each.
KnownRelationsReport verify_known_relations();

// sizes[d] = number of distinct group elements whose shortest word in the
// chosen generators has length exactly d.
struct SphereProfile {
  std::vector<long long> sizes;
  bool operator==(const SphereProfile&) const = default;
};

// A cycle found in the Cayley graph, as (generator index, exponent) letters.
// Every relator evaluates to the identity automorphism.
struct Relator {
  std::vector<std::pair<int, int>> letters;
  int depth = 0;
};

struct RelationReport {
  std::vector<Relator> relators;
  int depth = 0;
  long long element_count = 0;
};

struct CayleyResult {
  SphereProfile profile;
  RelationReport report;
};

struct CayleyOptions {
  int depth = 8;
  std::size_t max_elements = 2'000'000;
  int max_image_len = 64;
  int threads = 1;
  std::size_t max_relators = 100;
};

// Breadth-first closure of the subgroup generated by the given
// automorphisms, deduplicating elements by their canonical image tuples.
// Deterministic for any thread count: workers only compute products, the
// merge is sequential in frontier order.  Throws resource_limit_error when
// an image outgrows max_image_len or the element count passes max_elements.
CayleyResult cayley_bfs(const std::vector<Endomorphism>& generators,
                        const CayleyOptions& opts);
CayleyResult cayley_bfs(const std::vector<GroupLetter>& generators,
                        const CayleyOptions& opts);

// m[i][j] = order of s_i s_j: 1 on the diagonal, >= 2 elsewhere, symmetric.
using CoxeterMatrix = std::array<std::array<int, 3>, 3>;

// Sphere sizes of the Coxeter group, computed purely combinatorially:
// reduced words up to braid moves, canonical representative the
// lexicographically least member of the braid closure.  Independent of the
// automorphism representation.
SphereProfile coxeter_bfs(const CoxeterMatrix& m, int depth,
                          std::size_t max_elements = 2'000'000);

// Sphere sizes of a free product from the factors' own sphere profiles
// (factor_spheres[i][k] = elements of factor i at length exactly k, entry 0
// equal to 1).  Alternating-normal-form count: factor lengths add.
SphereProfile free_product_spheres(
    const std::vector<std::vector<long long>>& factor_spheres, int depth);

// Factor profiles used by the conjectured stabilizer presentation.
std::vector<long long> symmetric3_profile();  // <s,t | s^2, t^2, (st)^3>
std::vector<long long> order2_profile();      // <u | u^2>

enum class ConjectureTarget {
  full_group_coxeter = 1,        // <phi,(12),(13)> vs Coxeter (3,3,4)
  stabilizer_free_product = 2,   // <phi,tau,xi>  vs S3 * C2
};

struct ConjectureVerdict {
  SphereProfile cayley;
  SphereProfile oracle;
  int first_divergence = -1;  // depth of the first mismatch, -1 if none
  bool match = false;
};

// Runs the Cayley enumeration and the matching independent oracle to the
// given depth and compares sphere sizes.  A divergence exhibits a relation
// missing from the conjectured presentation.
ConjectureVerdict conjecture_scan(ConjectureTarget target, int depth,
                                  const CayleyOptions& opts = {});

struct SigmaScanResult {
  long long words_checked = 0;
  std::vector<std::string> identities;
};

// Replay of the constrained alternating search: words
// phi s_1 phi s_2 ... phi s_n with s_i in {(13),(23),(123),(132)} and no
// two consecutive (13), checked for evaluating to the identity.
SigmaScanResult sigma_scan(int max_n, std::size_t cap = 10'000'000);

}  // namespace steiner
