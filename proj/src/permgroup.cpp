// Small-degree permutation groups: exact order and membership through a
// deterministically closed stabilizer chain.
//
// Invariant after construction: for every level, the level's generators
// all fix the base points of the levels above it, the recorded orbit and
// transversal are complete for the level's generators, and every Schreier
// generator of the level sifts to the identity through the levels below.
// Those three facts make order() (product of orbit sizes) and contains()
// (residue-free sift) exact.

#include "steiner/permgroup.hpp"

#include "steiner/errors.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace steiner {

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i) {
    if (images[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

Perm identity_perm(int degree) {
  Perm p;
  p.images.resize(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p.images[static_cast<std::size_t>(i)] = i;
  return p;
}

Perm make_perm(std::vector<int> images) {
  std::vector<bool> hit(images.size(), false);
  for (int v : images) {
    if (v < 0 || v >= static_cast<int>(images.size()) ||
        hit[static_cast<std::size_t>(v)]) {
      throw precondition_error("permutation images must be a bijection");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
  Perm p;
  p.images = std::move(images);
  return p;
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) {
    throw precondition_error("composed permutations must share a degree");
  }
  Perm out;
  out.images.resize(a.images.size());
  for (std::size_t i = 0; i < a.images.size(); ++i) {
    out.images[i] = b.images[static_cast<std::size_t>(a.images[i])];
  }
  return out;
}

Perm inverse(const Perm& p) {
  Perm out;
  out.images.resize(p.images.size());
  for (std::size_t i = 0; i < p.images.size(); ++i) {
    out.images[static_cast<std::size_t>(p.images[i])] = static_cast<int>(i);
  }
  return out;
}

std::string cycle_string(const Perm& p, int offset) {
  std::string out;
  std::vector<bool> done(p.images.size(), false);
  for (int start = 0; start < p.degree(); ++start) {
    if (done[static_cast<std::size_t>(start)] || p.apply(start) == start) {
      continue;
    }
    out += "(";
    int cur = start;
    bool first = true;
    while (!done[static_cast<std::size_t>(cur)]) {
      done[static_cast<std::size_t>(cur)] = true;
      if (!first) out += " ";
      out += std::to_string(cur + offset);
      first = false;
      cur = p.apply(cur);
    }
    out += ")";
  }
  if (out.empty()) out = "()";
  return out;
}

StabilizerChain::StabilizerChain(const std::vector<Perm>& generators,
                                 int degree, int preferred_first_base)
    : degree_(degree) {
  if (degree <= 0) {
    throw precondition_error("stabilizer chain needs positive degree");
  }
  if (preferred_first_base >= degree) {
    throw precondition_error("preferred base point out of range");
  }
  for (const Perm& g : generators) {
    if (g.degree() != degree) {
      throw precondition_error("generator degree mismatch");
    }
    if (!g.is_identity()) input_gens_.push_back(g);
  }
  if (input_gens_.empty() && preferred_first_base < 0) {
    return;  // trivial group, empty chain
  }

  int first_base = preferred_first_base;
  if (first_base < 0) {
    for (int pt = 0; pt < degree_ && first_base < 0; ++pt) {
      for (const Perm& g : input_gens_) {
        if (g.apply(pt) != pt) {
          first_base = pt;
          break;
        }
      }
    }
  }
  if (first_base < 0) return;  // all generators were identity

  levels_.push_back(Level{first_base, input_gens_, {}, {}, {}});
  close_level(0);
  for (const Level& level : levels_) base_.push_back(level.base_point);
}

void StabilizerChain::rebuild_orbit(Level& level) {
  level.orbit.clear();
  level.where.assign(static_cast<std::size_t>(degree_), -1);
  level.transversal.clear();
  level.orbit.push_back(level.base_point);
  level.where[static_cast<std::size_t>(level.base_point)] = 0;
  level.transversal.push_back(identity_perm(degree_));
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    for (const Perm& g : level.gens) {
      int next = g.apply(level.orbit[i]);
      if (level.where[static_cast<std::size_t>(next)] < 0) {
        level.where[static_cast<std::size_t>(next)] =
            static_cast<int>(level.orbit.size());
        level.orbit.push_back(next);
        level.transversal.push_back(compose(level.transversal[i], g));
      }
    }
  }
}

std::pair<Perm, std::size_t> StabilizerChain::strip(Perm p,
                                                    std::size_t from) const {
  for (std::size_t j = from; j < levels_.size(); ++j) {
    const Level& level = levels_[j];
    int image = p.apply(level.base_point);
    int idx = level.where[static_cast<std::size_t>(image)];
    if (idx < 0) return {std::move(p), j};
    p = compose(p, inverse(level.transversal[static_cast<std::size_t>(idx)]));
  }
  return {std::move(p), levels_.size()};
}

void StabilizerChain::close_level(std::size_t i) {
  rebuild_orbit(levels_[i]);
  for (std::size_t oi = 0; oi < levels_[i].orbit.size(); ++oi) {
    for (std::size_t gi = 0; gi < levels_[i].gens.size(); ++gi) {
      // Schreier generator for this (orbit point, generator) pair.
      const Level& level = levels_[i];
      const Perm& u = level.transversal[oi];
      const Perm& g = level.gens[gi];
      int target = g.apply(level.orbit[oi]);
      const Perm& v =
          level.transversal[static_cast<std::size_t>(
              level.where[static_cast<std::size_t>(target)])];
      Perm s = compose(compose(u, g), inverse(v));
      auto [residue, j] = strip(std::move(s), i + 1);
      if (residue.is_identity()) continue;
      if (j == levels_.size()) {
        int new_base = -1;
        for (int pt = 0; pt < degree_; ++pt) {
          if (residue.apply(pt) != pt) {
            new_base = pt;
            break;
          }
        }
        levels_.push_back(Level{new_base, {}, {}, {}, {}});
      }
      for (std::size_t k = i + 1; k <= j; ++k) {
        levels_[k].gens.push_back(residue);
      }
      for (std::size_t k = j; k > i; --k) {
        close_level(k);
      }
      // The new strong generator lives strictly below this level, so the
      // current orbit, transversal, and Schreier pair list are unchanged.
    }
  }
}

unsigned long long StabilizerChain::order() const {
  unsigned long long n = 1;
  for (const Level& level : levels_) {
    n *= static_cast<unsigned long long>(level.orbit.size());
  }
  return n;
}

bool StabilizerChain::contains(const Perm& p) const {
  if (p.degree() != degree_) {
    throw precondition_error("membership query degree mismatch");
  }
  auto [residue, j] = strip(p, 0);
  (void)j;
  return residue.is_identity();
}

std::vector<Perm> StabilizerChain::point_stabilizer_generators(
    int point) const {
  if (point < 0 || point >= degree_) {
    throw precondition_error("stabilizer point out of range");
  }
  StabilizerChain rebased(input_gens_, degree_, point);
  std::vector<Perm> out;
  for (std::size_t k = 1; k < rebased.levels_.size(); ++k) {
    for (const Perm& g : rebased.levels_[k].gens) out.push_back(g);
  }
  return out;
}

std::vector<Perm> naive_closure(const std::vector<Perm>& generators,
                                int degree, std::size_t cap) {
  for (const Perm& g : generators) {
    if (g.degree() != degree) {
      throw precondition_error("generator degree mismatch");
    }
  }
  std::set<Perm> seen{identity_perm(degree)};
  std::vector<Perm> frontier{identity_perm(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& p : frontier) {
      for (const Perm& g : generators) {
        Perm q = compose(p, g);
        if (seen.insert(q).second) {
          if (seen.size() > cap) {
            throw resource_limit_error("naive closure cap exceeded");
          }
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

bool same_group(const std::vector<Perm>& a, const std::vector<Perm>& b,
                int degree) {
  StabilizerChain ca(a, degree);
  StabilizerChain cb(b, degree);
  if (ca.order() != cb.order()) return false;
  for (const Perm& g : b) {
    if (!ca.contains(g)) return false;
  }
  return true;
}

}  // namespace steiner
