#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace steiner {

// Permutation of 0..degree-1 in image form.
struct Perm {
  std::vector<int> images;

  int degree() const { return static_cast<int>(images.size()); }
  int apply(int p) const { return images[static_cast<std::size_t>(p)]; }
  bool is_identity() const;

  bool operator==(const Perm&) const = default;
  bool operator<(const Perm& o) const { return images < o.images; }
};

Perm identity_perm(int degree);
// Validates that images is a bijection on 0..degree-1.
Perm make_perm(std::vector<int> images);
// a first, then b: compose(a, b).apply(p) = b.apply(a.apply(p)).
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
// "(0 1 2)(3 4)"; fixed points omitted, identity renders as "()".
// offset shifts the printed point names (1 for one-based data).
std::string cycle_string(const Perm& p, int offset = 0);

// Stabilizer chain built by the deterministic Schreier-Sims procedure:
// every Schreier generator of every level is sifted until the chain is
// closed, so order and membership answers are exact, not probabilistic.
// Intended for the small degrees that arise here (<= 16 or so).
class StabilizerChain {
 public:
  // preferred_first_base >= 0 forces that point to head the base, which
  // makes the point's stabilizer directly readable off the chain.
  StabilizerChain(const std::vector<Perm>& generators, int degree,
                  int preferred_first_base = -1);

  int degree() const { return degree_; }
  unsigned long long order() const;
  bool contains(const Perm& p) const;
  const std::vector<int>& base() const { return base_; }

  // Generators of the subgroup fixing the given point (the chain is rebuilt
  // with the point as first base; levels past the first all fix it).
  std::vector<Perm> point_stabilizer_generators(int point) const;

 private:
  struct Level {
    int base_point;
    std::vector<Perm> gens;
    std::vector<int> orbit;
    std::vector<int> where;         // point -> orbit index, -1 outside
    std::vector<Perm> transversal;  // maps base_point to orbit[i]
  };

  void rebuild_orbit(Level& level);
  // Sifts p through levels from..end; returns the residue and the level it
  // stopped at (levels_.size() when p fixes every base point).
  std::pair<Perm, std::size_t> strip(Perm p, std::size_t from) const;
  void close_level(std::size_t i);

  int degree_ = 0;
  std::vector<Perm> input_gens_;
  std::vector<Level> levels_;
  std::vector<int> base_;
};

// Plain breadth-first multiplication closure, sorted by image tuple: the
// independent oracle for the chain. Throws resource_limit_error past cap.
std::vector<Perm> naive_closure(const std::vector<Perm>& generators,
                                int degree, std::size_t cap = 100000);

// Equal order plus one-sided generator containment.
bool same_group(const std::vector<Perm>& a, const std::vector<Perm>& b,
                int degree);

}  // namespace steiner
