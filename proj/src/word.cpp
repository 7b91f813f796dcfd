// Canonical word arithmetic for free Steiner loops.
//
// Elements are binary trees over the generators plus the empty word e. A pair
// (w v) is canonical when w > v in the length-then-lexicographic order and v is
// not an immediate factor of w. With the three multiplication rules
//   v*v = e,  (wv)*v = w,  v*w = (vw) otherwise (larger factor first)
// the canonical trees are exactly the normal forms, one per loop element.

#include "steiner/word.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "steiner/errors.hpp"

namespace steiner {
namespace detail {

namespace {

std::uint64_t hash_mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct PairKey {
  const Node* a;
  const Node* b;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const {
    return static_cast<std::size_t>(
        hash_mix(k.a->digest * 0x9ddfea08eb382d69ull ^ k.b->digest));
  }
};

// All interned nodes. deque keeps addresses stable; children are interned
// before parents, so pointer-pair keys identify pairs exactly (no collision
// trust anywhere).
struct Bank {
  std::mutex mu;
  std::deque<Node> nodes;
  std::vector<const Node*> leaves;
  std::unordered_map<PairKey, const Node*, PairKeyHash> pairs;
  const Node* empty = nullptr;
};

Bank& bank() {
  static Bank* b = [] {
    auto* fresh = new Bank;
    fresh->nodes.push_back(Node{nullptr, nullptr, 0, -2, hash_mix(0x5eedull)});
    fresh->empty = &fresh->nodes.back();
    return fresh;
  }();
  return *b;
}

}  // namespace

const Node* empty_node() { return bank().empty; }

const Node* leaf_node(int gen) {
  if (gen < 0) throw precondition_error("generator index must be nonnegative");
  Bank& b = bank();
  std::lock_guard<std::mutex> lock(b.mu);
  if (static_cast<std::size_t>(gen) >= b.leaves.size())
    b.leaves.resize(gen + 1, nullptr);
  if (!b.leaves[gen]) {
    b.nodes.push_back(Node{nullptr, nullptr, 1, gen,
                           hash_mix(0xabcd1234ull + static_cast<unsigned>(gen))});
    b.leaves[gen] = &b.nodes.back();
  }
  return b.leaves[gen];
}

const Node* pair_node(const Node* a, const Node* b) {
  Bank& bk = bank();
  std::lock_guard<std::mutex> lock(bk.mu);
  auto it = bk.pairs.find(PairKey{a, b});
  if (it != bk.pairs.end()) return it->second;
  bk.nodes.push_back(Node{a, b, a->length + b->length, -1,
                          hash_mix(a->digest * 0x100000001b3ull ^
                                   hash_mix(b->digest))});
  const Node* n = &bk.nodes.back();
  bk.pairs.emplace(PairKey{a, b}, n);
  return n;
}

}  // namespace detail

Word Word::leaf(int gen) { return WordFromRaw::make(detail::leaf_node(gen)); }

Word Word::raw_pair(Word a, Word b) {
  return WordFromRaw::make(detail::pair_node(a.raw(), b.raw()));
}

Order compare(Word v, Word w) {
  if (v == w) return Order::equal;
  if (v.length() != w.length())
    return v.length() < w.length() ? Order::less : Order::greater;
  // Distinct, equal length. On raw trees a leaf can tie a pair in length;
  // put leaves below pairs so the order stays total.
  if (v.is_leaf() && w.is_leaf())
    return v.gen() < w.gen() ? Order::less : Order::greater;
  if (v.is_leaf() != w.is_leaf()) return v.is_leaf() ? Order::less : Order::greater;
  if (v.is_identity() || w.is_identity())
    return v.is_identity() ? Order::less : Order::greater;
  Order o = compare(v.first(), w.first());
  if (o != Order::equal) return o;
  return compare(v.second(), w.second());
}

bool is_canonical(Word w) {
  if (w.is_identity() || w.is_leaf()) return true;
  Word a = w.first(), b = w.second();
  if (a.is_identity() || b.is_identity()) return false;
  if (compare(a, b) != Order::greater) return false;
  if (a.is_pair() && (b == a.first() || b == a.second())) return false;
  return is_canonical(a) && is_canonical(b);
}

Word mult(Word v, Word w) {
  if (v.is_identity()) return w;
  if (w.is_identity()) return v;
  if (v == w) return Word();
  if (v.is_pair()) {
    if (w == v.first()) return v.second();
    if (w == v.second()) return v.first();
  }
  if (w.is_pair()) {
    if (v == w.first()) return w.second();
    if (v == w.second()) return w.first();
  }
  // No top cancellation: pair up, larger factor first. The factor check above
  // is exactly the canonicity condition on the new pair.
  return compare(v, w) == Order::greater ? Word::raw_pair(v, w)
                                         : Word::raw_pair(w, v);
}

int max_gen(Word w) {
  if (w.is_identity()) return -1;
  if (w.is_leaf()) return w.gen();
  return std::max(max_gen(w.first()), max_gen(w.second()));
}

Alphabet::Alphabet(int n) {
  if (n < 0) throw precondition_error("alphabet size must be nonnegative");
  names_.reserve(n);
  for (int i = 0; i < n; ++i) names_.push_back("x" + std::to_string(i + 1));
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {}

std::optional<int> Alphabet::index_of(std::string_view s) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == s) return i;
  return std::nullopt;
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  const Alphabet& ab;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

  Word word() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      Word a = word();
      std::size_t mid = pos;
      skip_ws();
      if (pos == mid && pos < text.size() && text[pos] != '(')
        fail("expected whitespace between factors");
      Word b = word();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return mult(a, b);
    }
    if (c == '0') {
      ++pos;
      return Word();
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_'))
        ++pos;
      std::string_view ident = text.substr(start, pos - start);
      if (ident == "e") return Word();
      if (auto idx = ab.index_of(ident)) return Word::leaf(*idx);
      pos = start;
      fail("unknown generator '" + std::string(ident) + "'");
    }
    fail("unexpected character");
  }
};

}  // namespace

Word parse_word(std::string_view text, const Alphabet& ab) {
  Parser p{text, 0, ab};
  Word w = p.word();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after word");
  return w;
}

std::string render(Word w, const Alphabet& ab) {
  if (w.is_identity()) return "e";
  if (w.is_leaf()) {
    if (w.gen() >= ab.size())
      throw precondition_error("word mentions generator outside the alphabet");
    return ab.name(w.gen());
  }
  return "(" + render(w.first(), ab) + " " + render(w.second(), ab) + ")";
}

std::vector<Word> enumerate_words(int num_gens, int max_len, std::size_t cap) {
  if (num_gens < 0) throw precondition_error("negative alphabet size");
  std::vector<std::vector<Word>> by_len(std::max(max_len, 0) + 1);
  std::vector<Word> out;
  std::size_t total = 0;
  auto emit_guard = [&](std::size_t extra) {
    total += extra;
    if (total > cap)
      throw resource_limit_error("word enumeration exceeded cap of " +
                                 std::to_string(cap));
  };
  emit_guard(1);
  out.push_back(Word());
  if (max_len >= 1) {
    for (int g = 0; g < num_gens; ++g) by_len[1].push_back(Word::leaf(g));
  }
  for (int len = 2; len <= max_len; ++len) {
    auto& bucket = by_len[len];
    for (int flen = len - 1; 2 * flen >= len; --flen) {
      int slen = len - flen;
      for (Word a : by_len[flen]) {
        for (Word b : by_len[slen]) {
          if (compare(a, b) != Order::greater) continue;
          if (a.is_pair() && (b == a.first() || b == a.second())) continue;
          bucket.push_back(Word::raw_pair(a, b));
        }
      }
    }
    std::sort(bucket.begin(), bucket.end(), WordLess{});
  }
  for (int len = 1; len <= max_len; ++len) {
    emit_guard(by_len[len].size());
    out.insert(out.end(), by_len[len].begin(), by_len[len].end());
  }
  return out;
}

AssociatorWitness associator_witness(Word x, Word y, int num_gens) {
  if (num_gens <= 2)
    throw precondition_error("associator witnesses need more than 2 generators");
  if (x.is_identity() || y.is_identity())
    throw precondition_error("associator witness arguments must be nonempty");
  if (x == y) throw precondition_error("associator witness arguments must differ");
  auto check = [&](Word z) -> std::optional<AssociatorWitness> {
    Word left = mult(mult(x, y), z);
    Word right = mult(x, mult(y, z));
    if (left != right) return AssociatorWitness{z, left, right};
    return std::nullopt;
  };
  // First the direct recipe: z = y*xj with xj pairing onto y without
  // cancellation, so x*(y*z) collapses to x*xj.
  for (int g = 0; g < num_gens; ++g) {
    Word xj = Word::leaf(g);
    if (y == xj) continue;
    if (y.is_pair() && (y.first() == xj || y.second() == xj)) continue;
    if (auto w = check(mult(y, xj))) return *w;
  }
  // Fallback: scan all candidates in increasing order.
  for (Word z : enumerate_words(num_gens, x.length() + y.length() + 2)) {
    if (z.is_identity()) continue;
    if (auto w = check(z)) return *w;
  }
  throw error("no associator witness found");  // unreachable for valid inputs
}

}  // namespace steiner
