#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace steiner {

namespace detail {

// Perfectly shared term node. Nodes are interned: structurally equal trees are
// the same pointer, so Word equality is pointer equality. The table only grows;
// nodes live for the whole process.
struct Node {
  const Node* first;   // null for leaves and the empty word
  const Node* second;
  std::uint32_t length;  // number of leaves
  std::int32_t gen;      // generator index for leaves, -1 pair, -2 empty
  std::uint64_t digest;  // structural hash, for use in hash containers
};

const Node* empty_node();
const Node* leaf_node(int gen);
const Node* pair_node(const Node* a, const Node* b);

}  // namespace detail

// Immutable handle to a (possibly non-canonical) binary word over generators
// x1, x2, ... plus the empty word. Cheap to copy, safe to share across threads.
class Word {
 public:
  Word() : node_(detail::empty_node()) {}

  static Word leaf(int gen);
  // Builds the plain tree (a b) with no canonicity check. Canonical words come
  // out of mult(); raw_pair exists so malformed trees can be built and tested.
  static Word raw_pair(Word a, Word b);

  bool is_identity() const { return node_->gen == -2; }
  bool is_leaf() const { return node_->gen >= 0; }
  bool is_pair() const { return node_->gen == -1; }

  int gen() const { return node_->gen; }  // pre: is_leaf
  Word first() const { return Word(node_->first); }
  Word second() const { return Word(node_->second); }
  int length() const { return static_cast<int>(node_->length); }
  std::uint64_t digest() const { return node_->digest; }
  const detail::Node* raw() const { return node_; }

  friend bool operator==(Word a, Word b) { return a.node_ == b.node_; }
  friend bool operator!=(Word a, Word b) { return a.node_ != b.node_; }

 private:
  explicit Word(const detail::Node* n) : node_(n) {}
  const detail::Node* node_;
  friend class WordFromRaw;
};

// Rebuilds a handle from an interned node pointer (internal plumbing).
class WordFromRaw {
 public:
  static Word make(const detail::Node* n) { return Word(n); }
};

struct WordHash {
  std::size_t operator()(Word w) const {
    return static_cast<std::size_t>(w.digest());
  }
};

enum class Order { less, equal, greater };

// Total order: by length, then generator index on leaves, then left factor,
// then right factor. The empty word is least. Total on raw trees as well
// (leaf < pair at equal length) so it can drive validation and sorting.
Order compare(Word v, Word w);

struct WordLess {
  bool operator()(Word a, Word b) const { return compare(a, b) == Order::less; }
};

// True iff the tree is a canonical normal form: every pair (w v) has nonempty
// canonical factors, w > v, and v is not an immediate factor of w.
bool is_canonical(Word w);

// Steiner loop product of two canonical words; result is canonical.
// Cancellation happens only at the top: v*v = e, (wv)*v = w, otherwise pair up.
Word mult(Word v, Word w);

// Largest generator index occurring in w, or -1 for the empty word.
int max_gen(Word w);

// Generator names for parsing and printing; defaults to x1..xn.
class Alphabet {
 public:
  explicit Alphabet(int n);
  explicit Alphabet(std::vector<std::string> names);
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  std::optional<int> index_of(std::string_view s) const;

 private:
  std::vector<std::string> names_;
};

// Grammar: word := IDENT | "e" | "0" | "(" word WS word ")". The result is
// normalized bottom-up, so "(x1 x1)" parses to the empty word.
Word parse_word(std::string_view text, const Alphabet& ab);

// Canonical rendering: "e" for the empty word, "(bigger smaller)" for pairs.
std::string render(Word w, const Alphabet& ab);

// All canonical words over num_gens generators with length <= max_len, in
// increasing order (so the empty word first). Throws resource_limit_error if
// more than cap words would be produced.
std::vector<Word> enumerate_words(int num_gens, int max_len,
                                  std::size_t cap = 5'000'000);

struct AssociatorWitness {
  Word z;
  Word left;   // (x*y)*z
  Word right;  // x*(y*z)
};

// For distinct nonempty x, y over an alphabet of size num_gens > 2, finds z
// with (x*y)*z != x*(y*z). Tries z = y*xj for each generator first, then scans
// enumerate_words in increasing order.
AssociatorWitness associator_witness(Word x, Word y, int num_gens);

}  // namespace steiner
