#include "steiner/sts.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <set>

#include "steiner/errors.hpp"

namespace steiner {

namespace {

constexpr int kMaxLabel = 1'000'000;

// Label-indexed lookup of the third point of the block through two points.
// Rows and columns 1..m; entry 0 means "no block", which validate_sts rules
// out before any construction uses the table.
std::vector<std::vector<int>> third_table(const STS& sts) {
  int m = sts.point_count;
  std::vector<std::vector<int>> third(static_cast<std::size_t>(m) + 1,
                                      std::vector<int>(static_cast<std::size_t>(m) + 1, 0));
  for (const auto& b : sts.blocks) {
    third[b[0]][b[1]] = b[2];
    third[b[1]][b[0]] = b[2];
    third[b[0]][b[2]] = b[1];
    third[b[2]][b[0]] = b[1];
    third[b[1]][b[2]] = b[0];
    third[b[2]][b[1]] = b[0];
  }
  return third;
}

void require_valid(const STS& sts) {
  STSValidation v = validate_sts(sts);
  if (!v.valid) {
    throw precondition_error("not a Steiner triple system: " + v.message);
  }
}

std::string block_text(const std::array<int, 3>& b) {
  return "{" + std::to_string(b[0]) + ", " + std::to_string(b[1]) + ", " +
         std::to_string(b[2]) + "}";
}

std::string pair_text(int x, int y) {
  return "{" + std::to_string(x) + ", " + std::to_string(y) + "}";
}

}  // namespace

STS parse_sts(const std::string& text) {
  STS sts;
  std::size_t line_start = 0;
  for (;;) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos) line_end = text.size();
    std::string line = text.substr(line_start, line_end - line_start);
    if (std::size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }

    std::vector<int> labels;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
        ++j;
      }
      int value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
      if (ec != std::errc() || ptr != line.data() + j) {
        throw parse_error("point label is not a positive integer", line_start);
      }
      if (value < 1 || value > kMaxLabel) {
        throw parse_error("point label outside 1.." + std::to_string(kMaxLabel),
                          line_start);
      }
      labels.push_back(value);
      i = j;
    }
    if (!labels.empty()) {
      if (labels.size() != 3) {
        throw parse_error("expected three point labels per block", line_start);
      }
      std::array<int, 3> b = {labels[0], labels[1], labels[2]};
      std::sort(b.begin(), b.end());
      sts.blocks.push_back(b);
      sts.point_count = std::max(sts.point_count, b[2]);
    }

    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  std::sort(sts.blocks.begin(), sts.blocks.end());
  return sts;
}

STSValidation validate_sts(const STS& sts) {
  STSValidation v;
  auto reject = [&](std::string msg) {
    v.valid = false;
    v.message = std::move(msg);
    return v;
  };

  int m = sts.point_count;
  if (m <= 0) return reject("the system has no points");
  if (m % 6 != 1 && m % 6 != 3) {
    return reject("point count " + std::to_string(m) + " is neither 1 nor 3 mod 6");
  }
  for (const auto& b : sts.blocks) {
    if (b[0] < 1 || b[2] > m) {
      return reject("block " + block_text(b) + " has a point outside 1.." +
                    std::to_string(m));
    }
    if (b[0] == b[1] || b[1] == b[2]) {
      return reject("block " + block_text(b) + " repeats a point");
    }
  }

  if (m <= 2048) {
    // Count the coverage of every pair and name the first one that is off.
    std::vector<std::vector<int>> count(static_cast<std::size_t>(m) + 1,
                                        std::vector<int>(static_cast<std::size_t>(m) + 1, 0));
    for (const auto& b : sts.blocks) {
      ++count[b[0]][b[1]];
      ++count[b[0]][b[2]];
      ++count[b[1]][b[2]];
    }
    for (int x = 1; x <= m; ++x) {
      for (int y = x + 1; y <= m; ++y) {
        if (count[x][y] == 1) continue;
        v.pair = {x, y};
        if (count[x][y] == 0) {
          return reject("pair " + pair_text(x, y) + " is not covered by any block");
        }
        return reject("pair " + pair_text(x, y) + " is covered " +
                      std::to_string(count[x][y]) + " times");
      }
    }
    return v;
  }

  // Large systems: pairwise matrix is too big, so check duplicates plus the
  // exact block count (equivalent to full coverage once pairs are distinct).
  std::set<std::pair<int, int>> seen;
  for (const auto& b : sts.blocks) {
    for (auto [x, y] : {std::pair{b[0], b[1]}, std::pair{b[0], b[2]}, std::pair{b[1], b[2]}}) {
      if (!seen.insert({x, y}).second) {
        v.pair = {x, y};
        return reject("pair " + pair_text(x, y) + " is covered more than once");
      }
    }
  }
  unsigned long long need =
      static_cast<unsigned long long>(m) * (static_cast<unsigned long long>(m) - 1) / 6;
  if (sts.blocks.size() != need) {
    return reject(std::to_string(m) + " points need " + std::to_string(need) +
                  " blocks, found " + std::to_string(sts.blocks.size()));
  }
  return v;
}

std::string FiniteLoop::label(int x) const {
  if (kind == LoopKind::exterior) {
    return x == 0 ? "e" : std::to_string(x);
  }
  return std::to_string(x + 1);
}

FiniteLoop to_quasigroup(const STS& sts) {
  require_valid(sts);
  int m = sts.point_count;
  auto third = third_table(sts);
  FiniteLoop loop;
  loop.kind = LoopKind::quasigroup;
  loop.order = m;
  loop.table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      loop.table[x][y] = x == y ? x : third[x + 1][y + 1] - 1;
    }
  }
  return loop;
}

FiniteLoop to_exterior(const STS& sts) {
  require_valid(sts);
  int m = sts.point_count;
  auto third = third_table(sts);
  FiniteLoop loop;
  loop.kind = LoopKind::exterior;
  loop.order = m + 1;
  loop.identity = 0;
  loop.table.assign(static_cast<std::size_t>(m) + 1,
                    std::vector<int>(static_cast<std::size_t>(m) + 1));
  for (int x = 0; x <= m; ++x) {
    for (int y = 0; y <= m; ++y) {
      if (x == 0 || y == 0) {
        loop.table[x][y] = x + y;
      } else if (x == y) {
        loop.table[x][y] = 0;
      } else {
        loop.table[x][y] = third[x][y];
      }
    }
  }
  return loop;
}

FiniteLoop to_interior(const STS& sts, int base_point_label) {
  require_valid(sts);
  int m = sts.point_count;
  if (base_point_label < 1 || base_point_label > m) {
    throw precondition_error("base point " + std::to_string(base_point_label) +
                             " is not a point of the system");
  }
  auto third = third_table(sts);
  auto q = [&](int x, int y) { return x == y ? x : third[x][y]; };
  int a = base_point_label;
  FiniteLoop loop;
  loop.kind = LoopKind::interior;
  loop.order = m;
  loop.identity = a - 1;
  loop.base_point = a - 1;
  loop.table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int x = 1; x <= m; ++x) {
    for (int y = 1; y <= m; ++y) {
      loop.table[x - 1][y - 1] = q(q(a, x), q(a, y)) - 1;
    }
  }
  return loop;
}

STS sts_from_loop(const FiniteLoop& loop) {
  std::set<std::array<int, 3>> blocks;
  auto add = [&](int x, int y, int z) {
    std::array<int, 3> b = {x, y, z};
    std::sort(b.begin(), b.end());
    blocks.insert(b);
  };
  int n = loop.order;
  STS sts;
  switch (loop.kind) {
    case LoopKind::quasigroup:
      sts.point_count = n;
      for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
          add(x + 1, y + 1, loop.mul(x, y) + 1);
        }
      }
      break;
    case LoopKind::exterior:
      sts.point_count = n - 1;
      for (int x = 1; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
          add(x, y, loop.mul(x, y));
        }
      }
      break;
    case LoopKind::interior:
      // The block through x and y is {x, y, x^2 y^2}; pairs through the
      // identity give the blocks {a, x, x^2}.
      sts.point_count = n;
      for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
          add(x + 1, y + 1, loop.mul(loop.mul(x, x), loop.mul(y, y)) + 1);
        }
      }
      break;
  }
  sts.blocks.assign(blocks.begin(), blocks.end());
  return sts;
}

std::string render_loop_table(const FiniteLoop& loop) {
  std::string out;
  switch (loop.kind) {
    case LoopKind::quasigroup:
      out = "quasigroup";
      break;
    case LoopKind::exterior:
      out = "exterior";
      break;
    case LoopKind::interior:
      out = "interior";
      break;
  }
  out += " " + std::to_string(loop.order);
  if (loop.kind == LoopKind::interior) {
    out += " base=" + loop.label(loop.base_point);
  }
  out += '\n';
  for (int x = 0; x < loop.order; ++x) {
    for (int y = 0; y < loop.order; ++y) {
      if (y > 0) out += ' ';
      out += loop.label(loop.mul(x, y));
    }
    out += '\n';
  }
  return out;
}

std::vector<Perm> automorphisms(const STS& sts, int max_points) {
  require_valid(sts);
  int m = sts.point_count;
  if (m > max_points) {
    throw resource_limit_error("system has " + std::to_string(m) +
                               " points, cap is " + std::to_string(max_points));
  }
  auto third = third_table(sts);
  // 0-based copy of the third-point lookup.
  std::vector<std::vector<int>> t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      if (x != y) t[x][y] = third[x + 1][y + 1] - 1;
    }
  }

  std::vector<Perm> found;
  std::vector<int> img(static_cast<std::size_t>(m), -1);
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  // Assign images in point order. A block is checked as soon as its largest
  // point receives an image, so complete assignments preserve every block.
  auto dfs = [&](auto&& self, int p) -> void {
    if (p == m) {
      found.push_back(Perm{img});
      return;
    }
    for (int u = 0; u < m; ++u) {
      if (used[u]) continue;
      bool ok = true;
      for (int r = 0; r < p && ok; ++r) {
        int v = t[p][r];
        if (v < p && img[v] != t[u][img[r]]) ok = false;
      }
      if (!ok) continue;
      img[p] = u;
      used[u] = 1;
      self(self, p + 1);
      used[u] = 0;
      img[p] = -1;
    }
  };
  dfs(dfs, 0);
  return found;
}

std::vector<Perm> automorphisms(const FiniteLoop& loop, int max_order) {
  int n = loop.order;
  if (n > max_order) {
    throw resource_limit_error("table has " + std::to_string(n) +
                               " elements, cap is " + std::to_string(max_order));
  }
  if (n == 0) return {identity_perm(0)};

  // cells[v] lists the table cells holding value v; a cell (x, y) is checked
  // once max(x, y, table[x][y]) has an image, so each constraint fires
  // exactly once per search node.
  std::vector<std::vector<std::pair<int, int>>> cells(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      cells[loop.mul(x, y)].push_back({x, y});
    }
  }

  std::vector<Perm> found;
  std::vector<int> img(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto dfs = [&](auto&& self, int p) -> void {
    if (p == n) {
      found.push_back(Perm{img});
      return;
    }
    for (int u = 0; u < n; ++u) {
      if (used[u]) continue;
      img[p] = u;
      auto known = [&](int x) { return x <= p ? img[x] : -1; };
      bool ok = true;
      for (int r = 0; r <= p && ok; ++r) {
        int v = loop.mul(p, r);
        if (known(v) >= 0 && loop.mul(u, img[r]) != img[v]) ok = false;
        v = loop.mul(r, p);
        if (ok && known(v) >= 0 && loop.mul(img[r], u) != img[v]) ok = false;
      }
      for (std::size_t c = 0; c < cells[p].size() && ok; ++c) {
        auto [x, y] = cells[p][c];
        if (x < p && y < p && loop.mul(img[x], img[y]) != u) ok = false;
      }
      if (ok) {
        used[u] = 1;
        self(self, p + 1);
        used[u] = 0;
      }
      img[p] = -1;
    }
  };
  dfs(dfs, 0);
  return found;
}

StabilizerChain automorphism_group(const STS& sts, int max_points) {
  std::vector<Perm> all = automorphisms(sts, max_points);
  return StabilizerChain(all, sts.point_count);
}

StabilizerChain automorphism_group(const FiniteLoop& loop, int max_order) {
  std::vector<Perm> all = automorphisms(loop, max_order);
  return StabilizerChain(all, loop.order);
}

Perm restrict_to_points(const Perm& p) {
  if (p.degree() == 0 || p.apply(0) != 0) {
    throw precondition_error("permutation does not fix the identity slot");
  }
  std::vector<int> images(static_cast<std::size_t>(p.degree()) - 1);
  for (int i = 1; i < p.degree(); ++i) {
    images[i - 1] = p.apply(i) - 1;
  }
  return Perm{std::move(images)};
}

MultGroupResult mult_group(const FiniteLoop& loop, unsigned long long order_cap) {
  int n = loop.order;
  if (n == 0) throw precondition_error("multiplication group of an empty table");
  std::set<Perm> distinct;
  for (int x = 0; x < n; ++x) {
    std::vector<int> row(static_cast<std::size_t>(n)), col(static_cast<std::size_t>(n));
    for (int y = 0; y < n; ++y) {
      row[y] = loop.mul(x, y);
      col[y] = loop.mul(y, x);
    }
    distinct.insert(make_perm(std::move(row)));
    distinct.insert(make_perm(std::move(col)));
  }
  std::vector<Perm> gens(distinct.begin(), distinct.end());
  StabilizerChain chain(gens, n);
  if (chain.order() > order_cap) {
    throw resource_limit_error("multiplication group order " +
                               std::to_string(chain.order()) + " exceeds cap " +
                               std::to_string(order_cap));
  }
  MultGroupResult result{std::move(gens), std::move(chain), {}, std::nullopt};
  if (loop.identity >= 0) {
    result.inner_generators = result.group.point_stabilizer_generators(loop.identity);
    result.inner.emplace(result.inner_generators, n);
  }
  return result;
}

SDecompositionReport s_decomposition_check(const FiniteLoop& loop,
                                           unsigned long long order_cap) {
  if (loop.identity < 0) {
    throw precondition_error("s-decomposition needs a loop with an identity");
  }
  int n = loop.order;
  int e = loop.identity;
  MultGroupResult mg = mult_group(loop, order_cap);

  SDecompositionReport rep;
  rep.group_order = mg.group.order();
  rep.inner_order = mg.inner->order();
  auto note = [&](const std::string& msg) {
    if (rep.first_failure.empty()) rep.first_failure = msg;
  };

  std::vector<Perm> right;
  right.reserve(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    std::vector<int> col(static_cast<std::size_t>(n));
    for (int y = 0; y < n; ++y) col[y] = loop.mul(y, b);
    right.push_back(make_perm(std::move(col)));
  }

  rep.translations_involutive = true;
  for (int b = 0; b < n; ++b) {
    if (!compose(right[b], right[b]).is_identity()) {
      rep.translations_involutive = false;
      note("R[" + loop.label(b) + "] is not an involution");
      break;
    }
  }

  rep.intersection_trivial = true;
  for (int b = 0; b < n; ++b) {
    if (b != e && mg.inner->contains(right[b])) {
      rep.intersection_trivial = false;
      note("R[" + loop.label(b) + "] lies in the inner mapping group");
      break;
    }
  }

  rep.factorization_counts =
      rep.group_order == static_cast<unsigned long long>(n) * rep.inner_order;
  if (!rep.factorization_counts) {
    note("|Mult| = " + std::to_string(rep.group_order) + " but |B0| * |Inner| = " +
         std::to_string(static_cast<unsigned long long>(n) * rep.inner_order));
  }

  // right_inverse[u] is the b with u * b = e, so the coset representative of
  // g in B0 * Inner is R[right_inverse[u]] where u = g^-1(e).
  std::vector<int> right_inverse(static_cast<std::size_t>(n), -1);
  for (int u = 0; u < n; ++u) {
    for (int b = 0; b < n; ++b) {
      if (loop.mul(u, b) == e) {
        right_inverse[u] = b;
        break;
      }
    }
  }
  auto representative = [&](const Perm& g) {
    return right_inverse[static_cast<std::size_t>(inverse(g).apply(e))];
  };

  rep.closure_common_representative = true;
  for (int b1 = 0; b1 < n && rep.closure_common_representative; ++b1) {
    for (int b2 = 0; b2 < n; ++b2) {
      int r12 = representative(compose(right[b1], right[b2]));
      int r21 = representative(compose(right[b2], right[b1]));
      if (r12 != r21) {
        rep.closure_common_representative = false;
        note("R[" + loop.label(b1) + "] R[" + loop.label(b2) + "] and R[" +
             loop.label(b2) + "] R[" + loop.label(b1) +
             "] have different coset representatives " + loop.label(r12) +
             " and " + loop.label(r21));
        break;
      }
    }
  }

  rep.star_matches_table = true;
  for (int b1 = 0; b1 < n && rep.star_matches_table; ++b1) {
    for (int b2 = 0; b2 < n; ++b2) {
      int b3 = representative(compose(right[b1], right[b2]));
      if (b3 != loop.mul(b1, b2)) {
        rep.star_matches_table = false;
        note("the representative of R[" + loop.label(b1) + "] R[" +
             loop.label(b2) + "] is " + loop.label(b3) +
             " but the table gives " + loop.label(loop.mul(b1, b2)));
        break;
      }
      if (loop.mul(loop.mul(b1, b2), b2) != b1) {
        rep.star_matches_table = false;
        note("(" + loop.label(b1) + " * " + loop.label(b2) + ") * " +
             loop.label(b2) + " is not " + loop.label(b1));
        break;
      }
    }
  }

  std::vector<Perm> schreier;
  schreier.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      schreier.push_back(
          compose(compose(right[a], right[b]), inverse(right[loop.mul(a, b)])));
    }
  }
  rep.inner_from_schreier_generators = same_group(schreier, mg.inner_generators, n);
  if (!rep.inner_from_schreier_generators) {
    note("the elements R[a] R[b] R[ab]^-1 do not generate the inner mapping group");
  }
  return rep;
}

T4Report t4_finite_check(const STS& sts, int base_point_label, int max_points) {
  require_valid(sts);
  int m = sts.point_count;
  if (base_point_label < 1 || base_point_label > m) {
    throw precondition_error("base point " + std::to_string(base_point_label) +
                             " is not a point of the system");
  }
  FiniteLoop interior = to_interior(sts, base_point_label);
  FiniteLoop exterior = to_exterior(sts);
  std::vector<Perm> aut_interior = automorphisms(interior, max_points);
  std::vector<Perm> aut_exterior = automorphisms(exterior, max_points + 1);

  T4Report rep;
  rep.interior_aut_order = aut_interior.size();
  rep.exterior_aut_order = aut_exterior.size();

  StabilizerChain exterior_chain(aut_exterior, exterior.order);
  std::vector<Perm> stabilizer;
  for (const Perm& p : exterior_chain.point_stabilizer_generators(base_point_label)) {
    stabilizer.push_back(restrict_to_points(p));
  }
  StabilizerChain stabilizer_chain(stabilizer, m);
  rep.stabilizer_order = stabilizer_chain.order();
  rep.equal = same_group(stabilizer, aut_interior, m);
  return rep;
}

}  // namespace steiner
