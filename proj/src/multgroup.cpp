// Multiplication-group elements as reduced words over the translation
// letters R_v.  The group is the free product of the order-2 subgroups
// generated by the single translations, so free reduction (cancelling
// adjacent equal letters) is a complete normal form and the word problem
// is letterwise comparison.
//
// The stabilizer of the identity has transversal {R_v} plus the trivial
// coset, which is closed under prefixes, so the classic Schreier scan
// applies: walking a stabilizer element letter by letter while tracking
// the running image v of the identity factors it into generators
// s(v, w) = R_v R_w R_{v*w}.

#include "steiner/multgroup.hpp"

#include "steiner/errors.hpp"

#include <utility>

namespace steiner {

namespace {

void push_reduced(std::vector<Word>& out, Word letter) {
  if (letter.is_identity()) {
    throw precondition_error("the empty word is not a translation letter");
  }
  if (!out.empty() && out.back() == letter) {
    out.pop_back();
  } else {
    out.push_back(letter);
  }
}

}  // namespace

MultElement::MultElement(std::vector<Word> letters) {
  for (const Word& v : letters) {
    push_reduced(letters_, v);
  }
}

MultElement reduce_word(const std::vector<Word>& letters) {
  return MultElement(letters);
}

MultElement translation(Word v) {
  return MultElement({v});
}

MultElement compose(const MultElement& a, const MultElement& b) {
  std::vector<Word> out = a.letters();
  for (const Word& v : b.letters()) {
    push_reduced(out, v);
  }
  return MultElement(std::move(out));
}

MultElement inverse(const MultElement& g) {
  std::vector<Word> out(g.letters().rbegin(), g.letters().rend());
  return MultElement(std::move(out));
}

Word act(const MultElement& g, Word w) {
  for (const Word& v : g.letters()) {
    w = mult(w, v);
  }
  return w;
}

StabFactorization stab_factor(const MultElement& g) {
  Word u = act(g, Word());
  if (u.is_identity()) {
    return {g, std::nullopt};
  }
  return {compose(g, translation(u)), u};
}

bool StabGenerator::degenerate() const {
  return v.is_identity() || w == v;
}

MultElement StabGenerator::element() const {
  if (degenerate()) {
    return MultElement();
  }
  return MultElement({v, w, mult(v, w)});
}

std::vector<SchreierFactor> schreier_rewrite(const MultElement& h) {
  if (!act(h, Word()).is_identity()) {
    throw precondition_error("schreier_rewrite needs an element fixing the identity");
  }
  std::vector<SchreierFactor> out;
  Word v;
  for (const Word& w : h.letters()) {
    StabGenerator s{v, w};
    if (!s.degenerate()) {
      out.push_back({s, 1});
    }
    v = mult(v, w);
  }
  MultElement recomposed;
  for (const SchreierFactor& f : out) {
    recomposed = compose(recomposed, f.gen.element());
  }
  if (!(recomposed == h)) {
    throw error("schreier rewriting failed to recompose");
  }
  return out;
}

std::string render(const MultElement& g, const Alphabet& alphabet) {
  if (g.is_identity()) {
    return "1";
  }
  std::string out;
  for (const Word& v : g.letters()) {
    if (!out.empty()) {
      out += "*";
    }
    out += "R[";
    out += render(v, alphabet);
    out += "]";
  }
  return out;
}

MultElement parse_mult_element(std::string_view text, const Alphabet& alphabet) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_ws();
  if (pos < text.size() && text[pos] == '1') {
    ++pos;
    skip_ws();
    if (pos != text.size()) {
      throw parse_error("trailing input after identity", pos);
    }
    return MultElement();
  }
  std::vector<Word> letters;
  while (true) {
    skip_ws();
    if (pos >= text.size() || text[pos] != 'R') {
      throw parse_error("expected a letter of the form R[<word>]", pos);
    }
    ++pos;
    if (pos >= text.size() || text[pos] != '[') {
      throw parse_error("expected '[' after R", pos);
    }
    ++pos;
    std::size_t inner_start = pos;
    std::size_t close = text.find(']', pos);
    if (close == std::string_view::npos) {
      throw parse_error("unterminated letter, missing ']'", pos);
    }
    Word v;
    try {
      v = parse_word(text.substr(inner_start, close - inner_start), alphabet);
    } catch (const parse_error& e) {
      throw parse_error("invalid word inside translation letter",
                        inner_start + e.position);
    }
    if (v.is_identity()) {
      throw parse_error("the empty word is not a translation letter", inner_start);
    }
    letters.push_back(v);
    pos = close + 1;
    skip_ws();
    if (pos == text.size()) {
      break;
    }
    if (text[pos] != '*') {
      throw parse_error("expected '*' between letters", pos);
    }
    ++pos;
  }
  return MultElement(std::move(letters));
}

}  // namespace steiner
