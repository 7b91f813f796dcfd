// Command-line surface for the library: word arithmetic, subloop closures,
// Nielsen reduction, automorphism decomposition, multiplication-group
// rewriting, relation searches, and finite triple-system reports.
//
// Exit codes: 0 success, 1 negative mathematical answer (not an
// automorphism, diverging spheres, failed checks), 2 malformed input,
// 3 a resource cap was hit.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "steiner/automorphism.hpp"
#include "steiner/errors.hpp"
#include "steiner/multgroup.hpp"
#include "steiner/permgroup.hpp"
#include "steiner/relations.hpp"
#include "steiner/sts.hpp"
#include "steiner/subloop.hpp"
#include "steiner/word.hpp"

using nlohmann::ordered_json;

namespace {

struct Options {
  int n = 3;
  long long max_len = -1;       // -1: per-command default
  long long max_elements = -1;  // -1: per-command default
  int threads = 1;
  bool json = false;

  ordered_json doc;  // structured output, printed once at the end
};

void emit(Options& opt) {
  if (opt.json) std::cout << opt.doc.dump(2) << "\n";
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw steiner::parse_error("cannot read file " + path, 0);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<steiner::Word> parse_words(const std::vector<std::string>& texts,
                                       const steiner::Alphabet& ab) {
  std::vector<steiner::Word> words;
  words.reserve(texts.size());
  for (const std::string& t : texts) words.push_back(steiner::parse_word(t, ab));
  return words;
}

steiner::Endomorphism parse_endo(const std::vector<std::string>& texts,
                                 const Options& opt) {
  if (static_cast<int>(texts.size()) != opt.n) {
    throw steiner::parse_error("expected " + std::to_string(opt.n) +
                                   " image words, got " +
                                   std::to_string(texts.size()),
                               0);
  }
  steiner::Alphabet ab(opt.n);
  return steiner::Endomorphism{opt.n, parse_words(texts, ab)};
}

std::string render_letter(const steiner::ElementaryAut& e,
                          const steiner::Alphabet& ab) {
  return "e" + std::to_string(e.index + 1) + "(" + steiner::render(e.factor, ab) + ")";
}

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string profile_text(const steiner::SphereProfile& p) {
  std::vector<std::string> parts;
  for (long long s : p.sizes) parts.push_back(std::to_string(s));
  return join(parts);
}

// ---------------------------------------------------------------- commands

int cmd_eval(Options& opt, const std::string& text) {
  steiner::Alphabet ab(opt.n);
  steiner::Word w = steiner::parse_word(text, ab);
  std::string out = steiner::render(w, ab);
  opt.doc = {{"command", "eval"}, {"input", text}, {"result", out}};
  if (!opt.json) std::cout << out << "\n";
  return 0;
}

int cmd_normalize(Options& opt, const std::string& text) {
  steiner::Alphabet ab(opt.n);
  steiner::Word w = steiner::parse_word(text, ab);
  std::string out = steiner::render(w, ab);
  bool canonical = strip_spaces(text) == strip_spaces(out);
  opt.doc = {{"command", "normalize"},
             {"input", text},
             {"result", out},
             {"canonical_input", canonical}};
  if (!opt.json) {
    std::cout << out << "\n";
    std::cout << "canonical input: " << (canonical ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_closure(Options& opt, const std::vector<std::string>& texts) {
  int max_len = opt.max_len < 0 ? 6 : static_cast<int>(opt.max_len);
  std::size_t cap = opt.max_elements < 0 ? 1'000'000
                                         : static_cast<std::size_t>(opt.max_elements);
  steiner::Alphabet ab(opt.n);
  steiner::GenTuple t{parse_words(texts, ab)};
  std::vector<steiner::Word> ball = steiner::closure(t, max_len, cap);
  opt.doc = {{"command", "closure"},
             {"max_len", max_len},
             {"count", ball.size()},
             {"elements", ordered_json::array()}};
  if (!opt.json) {
    std::cout << "elements of length <= " << max_len << ": " << ball.size() << "\n";
  }
  for (steiner::Word w : ball) {
    std::string r = steiner::render(w, ab);
    opt.doc["elements"].push_back(r);
    if (!opt.json) std::cout << r << "\n";
  }
  return 0;
}

int cmd_reduce(Options& opt, const std::vector<std::string>& texts) {
  steiner::Alphabet ab(opt.n);
  steiner::GenTuple t{parse_words(texts, ab)};
  steiner::NielsenResult res = steiner::nielsen_reduce(t);
  opt.doc = {{"command", "reduce"},
             {"steps", ordered_json::array()},
             {"dropped", ordered_json::array()},
             {"reduced", ordered_json::array()}};
  if (!opt.json) std::cout << "steps: " << res.steps.size() << "\n";
  for (std::size_t i = 0; i < res.steps.size(); ++i) {
    const steiner::ReductionStep& s = res.steps[i];
    std::string before = steiner::render(s.before, ab);
    std::string reducer = steiner::render(s.reducer, ab);
    std::string after = steiner::render(s.after, ab);
    opt.doc["steps"].push_back({{"entry", s.entry + 1},
                                {"before", before},
                                {"reducer", reducer},
                                {"after", after}});
    if (!opt.json) {
      std::cout << "  step " << i + 1 << ": entry " << s.entry + 1 << ": "
                << before << " * " << reducer << " = " << after << "\n";
    }
  }
  for (int d : res.dropped) opt.doc["dropped"].push_back(d + 1);
  if (!opt.json && !res.dropped.empty()) {
    std::vector<std::string> parts;
    for (int d : res.dropped) parts.push_back(std::to_string(d + 1));
    std::cout << "dropped input entries: " << join(parts, ", ") << "\n";
  }
  std::vector<std::string> final_words;
  for (steiner::Word w : res.reduced.entries) {
    final_words.push_back(steiner::render(w, ab));
    opt.doc["reduced"].push_back(final_words.back());
  }
  if (!opt.json) {
    std::cout << "reduced tuple (" << final_words.size()
              << " entries): " << join(final_words) << "\n";
  }
  return 0;
}

int cmd_is_aut(Options& opt, const std::vector<std::string>& images) {
  steiner::Endomorphism f = parse_endo(images, opt);
  bool yes = steiner::is_automorphism(f);
  opt.doc = {{"command", "is-aut"}, {"automorphism", yes}};
  if (!opt.json) std::cout << "automorphism: " << (yes ? "yes" : "no") << "\n";
  return yes ? 0 : 1;
}

int cmd_decompose(Options& opt, const std::vector<std::string>& images) {
  steiner::Endomorphism f = parse_endo(images, opt);
  steiner::Alphabet ab(opt.n);
  if (!steiner::is_automorphism(f)) {
    opt.doc = {{"command", "decompose"},
               {"error", "not an automorphism: the image tuple does not reduce "
                         "to a generator permutation"}};
    if (!opt.json) {
      std::cerr << "not an automorphism: the image tuple does not reduce to a "
                   "generator permutation\n";
    }
    return 1;
  }
  steiner::TameWord tw = steiner::tame_decompose(f);
  std::vector<std::string> letters;
  for (const steiner::ElementaryAut& e : tw.letters) {
    letters.push_back(render_letter(e, ab));
  }
  bool ok = tw.evaluate(opt.n) == f;
  opt.doc = {{"command", "decompose"},
             {"letters", letters},
             {"recomposition", ok ? "OK" : "FAILED"}};
  if (!opt.json) {
    std::cout << (letters.empty() ? std::string("1") : join(letters)) << "\n";
    std::cout << "recomposition: " << (ok ? "OK" : "FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_invert(Options& opt, const std::vector<std::string>& images) {
  steiner::Endomorphism f = parse_endo(images, opt);
  steiner::Alphabet ab(opt.n);
  if (!steiner::is_automorphism(f)) {
    opt.doc = {{"command", "invert"}, {"error", "not an automorphism"}};
    if (!opt.json) std::cerr << "not an automorphism\n";
    return 1;
  }
  steiner::Endomorphism g = steiner::invert(f);
  opt.doc = {{"command", "invert"}, {"images", ordered_json::array()}};
  for (int i = 0; i < opt.n; ++i) {
    std::string r = steiner::render(g.images[i], ab);
    opt.doc["images"].push_back(r);
    if (!opt.json) std::cout << ab.name(i) << " -> " << r << "\n";
  }
  return 0;
}

std::string render_factor(const steiner::SchreierFactor& f,
                          const steiner::Alphabet& ab) {
  std::string out = "s(" + steiner::render(f.gen.v, ab) + ", " +
                    steiner::render(f.gen.w, ab) + ")";
  if (f.exponent == -1) out += "^-1";
  return out;
}

int cmd_mult_rewrite(Options& opt, const std::string& text) {
  steiner::Alphabet ab(opt.n);
  steiner::MultElement g = steiner::parse_mult_element(text, ab);
  steiner::StabFactorization sf = steiner::stab_factor(g);
  std::vector<steiner::SchreierFactor> factors =
      steiner::schreier_rewrite(sf.stabilizer);

  steiner::MultElement recomposed;
  for (const steiner::SchreierFactor& f : factors) {
    steiner::MultElement e = f.gen.element();
    if (f.exponent == -1) e = steiner::inverse(e);
    recomposed = steiner::compose(recomposed, e);
  }
  bool ok = recomposed == sf.stabilizer;

  std::string stab_text = steiner::render(sf.stabilizer, ab);
  std::string rep_text = sf.rep ? "R[" + steiner::render(*sf.rep, ab) + "]" : "1";
  std::vector<std::string> factor_texts;
  for (const steiner::SchreierFactor& f : factors) {
    factor_texts.push_back(render_factor(f, ab));
  }
  opt.doc = {{"command", "mult-rewrite"},
             {"input", text},
             {"stabilizer", stab_text},
             {"translation", rep_text},
             {"schreier_word", factor_texts},
             {"recomposition", ok ? "OK" : "FAILED"}};
  if (!opt.json) {
    std::cout << "stabilizer: " << stab_text << "\n";
    std::cout << "translation: " << rep_text << "\n";
    std::cout << "schreier word (" << factor_texts.size()
              << (factor_texts.size() == 1 ? " factor" : " factors")
              << "): " << (factor_texts.empty() ? std::string("1") : join(factor_texts))
              << "\n";
    std::cout << "recomposition: " << (ok ? "OK" : "FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

void require_rank3(const Options& opt, const std::string& what) {
  if (opt.n != 3) {
    throw steiner::precondition_error(what + " works in the 3-generated loop; run with -n 3");
  }
}

int cmd_relations_verify(Options& opt) {
  require_rank3(opt, "relations verify-known");
  steiner::KnownRelationsReport rep = steiner::verify_known_relations();
  opt.doc = {{"command", "relations verify-known"},
             {"checks", ordered_json::array()},
             {"all_hold", rep.all_hold}};
  for (const steiner::RelationCheck& c : rep.checks) {
    opt.doc["checks"].push_back({{"name", c.name}, {"holds", c.holds}});
    if (!opt.json) {
      std::cout << (c.holds ? "PASS " : "FAIL ") << c.name << "\n";
    }
  }
  if (!opt.json) {
    if (rep.all_hold) {
      std::cout << "all " << rep.checks.size() << " identities hold\n";
    } else {
      std::cout << "some identities FAILED\n";
    }
  }
  return rep.all_hold ? 0 : 1;
}

const std::map<std::string, steiner::GroupLetter>& letter_names() {
  static const std::map<std::string, steiner::GroupLetter> names = {
      {"phi", steiner::GroupLetter::phi},
      {"s12", steiner::GroupLetter::s12},
      {"s13", steiner::GroupLetter::s13},
      {"tau", steiner::GroupLetter::tau},
      {"xi", steiner::GroupLetter::xi},
  };
  return names;
}

std::string letter_name(int index, const std::vector<std::string>& names) {
  return names[static_cast<std::size_t>(index)];
}

std::string relator_text(const steiner::Relator& r,
                         const std::vector<std::string>& names) {
  std::vector<std::string> parts;
  for (auto [idx, exp] : r.letters) {
    std::string p = letter_name(idx, names);
    if (exp == -1) p += "^-1";
    parts.push_back(p);
  }
  return join(parts);
}

steiner::CayleyOptions cayley_options(const Options& opt, int depth) {
  steiner::CayleyOptions co;
  co.depth = depth;
  if (opt.max_elements > 0) co.max_elements = static_cast<std::size_t>(opt.max_elements);
  co.threads = opt.threads;
  return co;
}

int cmd_relations_bfs(Options& opt, int depth, const std::string& letters_csv,
                      const std::string& free_family) {
  require_rank3(opt, "relations bfs");
  std::vector<steiner::Endomorphism> gens;
  std::vector<std::string> names;
  if (!free_family.empty()) {
    if (free_family != "e1") {
      throw steiner::parse_error("unknown free family '" + free_family +
                                     "', only e1 is built in",
                                 0);
    }
    steiner::Alphabet ab(3);
    steiner::Word x2 = steiner::Word::leaf(1);
    steiner::Word x3 = steiner::Word::leaf(2);
    for (steiner::Word factor : {x2, x3, steiner::mult(x2, x3)}) {
      steiner::ElementaryAut e(3, 0, factor);
      gens.push_back(e.endo());
      names.push_back(render_letter(e, ab));
    }
  } else {
    std::stringstream ss(letters_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto it = letter_names().find(item);
      if (it == letter_names().end()) {
        throw steiner::parse_error("unknown generator letter '" + item + "'", 0);
      }
      gens.push_back(steiner::letter_endo(it->second));
      names.push_back(item);
    }
    if (gens.empty()) {
      throw steiner::parse_error("no generator letters given", 0);
    }
  }

  steiner::CayleyResult res = steiner::cayley_bfs(gens, cayley_options(opt, depth));
  opt.doc = {{"command", "relations bfs"},
             {"generators", names},
             {"spheres", res.profile.sizes},
             {"element_count", res.report.element_count},
             {"relators", ordered_json::array()}};
  if (!opt.json) {
    std::cout << "generators: " << join(names) << "\n";
    std::cout << "spheres: " << profile_text(res.profile) << "\n";
    std::cout << "elements within depth " << depth << ": "
              << res.report.element_count << "\n";
    std::cout << "relators found: " << res.report.relators.size() << "\n";
  }
  for (const steiner::Relator& r : res.report.relators) {
    std::string t = relator_text(r, names);
    opt.doc["relators"].push_back(t);
    if (!opt.json) std::cout << "  " << t << "\n";
  }
  return 0;
}

int cmd_relations_conjecture(Options& opt, int target, int depth) {
  require_rank3(opt, "relations conjecture");
  steiner::ConjectureTarget t = target == 1
                                    ? steiner::ConjectureTarget::full_group_coxeter
                                    : steiner::ConjectureTarget::stabilizer_free_product;
  steiner::ConjectureVerdict v =
      steiner::conjecture_scan(t, depth, cayley_options(opt, depth));
  opt.doc = {{"command", "relations conjecture"},
             {"target", target},
             {"cayley", v.cayley.sizes},
             {"oracle", v.oracle.sizes},
             {"first_divergence", v.first_divergence},
             {"match", v.match}};
  if (!opt.json) {
    std::cout << "cayley: " << profile_text(v.cayley) << "\n";
    std::cout << "oracle: " << profile_text(v.oracle) << "\n";
    if (v.match) {
      std::cout << "spheres match to depth " << depth << "\n";
    } else {
      std::cout << "spheres DIVERGE at depth " << v.first_divergence << "\n";
    }
  }
  if (!v.match) {
    std::cerr << "divergence: the conjectured presentation misses a relation "
                 "(first at depth "
              << v.first_divergence << ")\n";
  }
  return v.match ? 0 : 1;
}

int cmd_nucleus_scan(Options& opt) {
  if (opt.n < 3) {
    throw steiner::precondition_error(
        "the nucleus collapses only for more than 2 generators; run with -n >= 3");
  }
  int max_len = opt.max_len < 0 ? 3 : static_cast<int>(opt.max_len);
  steiner::Alphabet ab(opt.n);
  std::vector<steiner::Word> words = steiner::enumerate_words(opt.n, max_len);
  opt.doc = {{"command", "nucleus-scan"},
             {"n", opt.n},
             {"max_len", max_len},
             {"candidates", nullptr},
             {"witnesses", ordered_json::array()}};
  long long candidates = 0;
  for (steiner::Word u : words) {
    if (u.is_identity()) continue;
    ++candidates;
    steiner::Word x = steiner::Word::leaf(u == steiner::Word::leaf(0) ? 1 : 0);
    steiner::AssociatorWitness w = steiner::associator_witness(u, x, opt.n);
    std::string ut = steiner::render(u, ab);
    std::string xt = steiner::render(x, ab);
    std::string yt = steiner::render(w.z, ab);
    std::string lt = steiner::render(w.left, ab);
    std::string rt = steiner::render(w.right, ab);
    opt.doc["witnesses"].push_back(
        {{"u", ut}, {"x", xt}, {"y", yt}, {"left", lt}, {"right", rt}});
    if (!opt.json) {
      std::cout << "  " << ut << ": x = " << xt << ", y = " << yt
                << ", (ux)y = " << lt << ", u(xy) = " << rt << "\n";
    }
  }
  opt.doc["candidates"] = candidates;
  if (!opt.json) {
    std::cout << "all " << candidates << " candidates eliminated\n";
  }
  return 0;
}

steiner::STS load_sts(const std::string& path) {
  return steiner::parse_sts(read_file(path));
}

steiner::FiniteLoop build_loop(const steiner::STS& sts, const std::string& kind,
                               int base) {
  if (kind == "quasigroup") return steiner::to_quasigroup(sts);
  if (kind == "exterior") return steiner::to_exterior(sts);
  return steiner::to_interior(sts, base);
}

int cmd_sts_validate(Options& opt, const std::string& path) {
  steiner::STS sts = load_sts(path);
  steiner::STSValidation v = steiner::validate_sts(sts);
  opt.doc = {{"command", "sts validate"},
             {"file", path},
             {"valid", v.valid},
             {"points", sts.point_count},
             {"blocks", sts.blocks.size()}};
  if (!v.valid) opt.doc["message"] = v.message;
  if (!opt.json) {
    if (v.valid) {
      std::cout << "valid STS(" << sts.point_count << "): " << sts.blocks.size()
                << " blocks\n";
    } else {
      std::cout << "invalid: " << v.message << "\n";
    }
  }
  return v.valid ? 0 : 2;
}

int cmd_sts_tables(Options& opt, const std::string& path, const std::string& kind,
                   int base) {
  steiner::FiniteLoop loop = build_loop(load_sts(path), kind, base);
  std::string text = steiner::render_loop_table(loop);
  opt.doc = {{"command", "sts tables"},
             {"kind", kind},
             {"order", loop.order},
             {"rows", ordered_json::array()}};
  if (loop.kind == steiner::LoopKind::interior) {
    opt.doc["base"] = loop.label(loop.base_point);
  }
  for (int x = 0; x < loop.order; ++x) {
    ordered_json row = ordered_json::array();
    for (int y = 0; y < loop.order; ++y) row.push_back(loop.label(loop.mul(x, y)));
    opt.doc["rows"].push_back(row);
  }
  if (!opt.json) std::cout << text;
  return 0;
}

int cmd_sts_aut(Options& opt, const std::string& path, int cap) {
  steiner::STS sts = load_sts(path);
  std::vector<steiner::Perm> of_sts = steiner::automorphisms(sts, cap);
  std::vector<steiner::Perm> of_quasigroup =
      steiner::automorphisms(steiner::to_quasigroup(sts), cap);
  std::vector<steiner::Perm> restricted;
  for (const steiner::Perm& p :
       steiner::automorphisms(steiner::to_exterior(sts), cap + 1)) {
    restricted.push_back(steiner::restrict_to_points(p));
  }
  bool q_same = of_quasigroup == of_sts;
  bool e_same = restricted == of_sts;
  opt.doc = {{"command", "sts aut"},
             {"points", sts.point_count},
             {"order", of_sts.size()},
             {"quasigroup_coincides", q_same},
             {"exterior_coincides", e_same}};
  if (!opt.json) {
    std::cout << "|Aut(STS(" << sts.point_count << "))| = " << of_sts.size() << "\n";
    std::cout << "quasigroup automorphisms coincide: " << (q_same ? "yes" : "no")
              << "\n";
    std::cout << "exterior loop automorphisms (restricted to points) coincide: "
              << (e_same ? "yes" : "no") << "\n";
  }
  return q_same && e_same ? 0 : 1;
}

int cmd_sts_sdecomp(Options& opt, const std::string& path, const std::string& kind,
                    int base) {
  steiner::FiniteLoop loop = build_loop(load_sts(path), kind, base);
  unsigned long long cap = opt.max_elements < 0
                               ? 10'000'000ull
                               : static_cast<unsigned long long>(opt.max_elements);
  steiner::SDecompositionReport rep = steiner::s_decomposition_check(loop, cap);
  auto yes = [](bool b) { return b ? "yes" : "NO"; };
  opt.doc = {{"command", "sts sdecomp"},
             {"kind", kind},
             {"order", loop.order},
             {"mult_order", rep.group_order},
             {"inner_order", rep.inner_order},
             {"translations_involutive", rep.translations_involutive},
             {"intersection_trivial", rep.intersection_trivial},
             {"factorization_counts", rep.factorization_counts},
             {"closure_common_representative", rep.closure_common_representative},
             {"star_matches_table", rep.star_matches_table},
             {"inner_from_schreier_generators", rep.inner_from_schreier_generators},
             {"pass", rep.all_pass()}};
  if (!rep.first_failure.empty()) opt.doc["first_failure"] = rep.first_failure;
  if (!opt.json) {
    std::cout << "loop: " << kind << ", order " << loop.order << "\n";
    std::cout << "|Mult| = " << rep.group_order << ", |Inner| = " << rep.inner_order
              << "\n";
    std::cout << "translations involutive: " << yes(rep.translations_involutive)
              << "\n";
    std::cout << "B0 meets Inner trivially: " << yes(rep.intersection_trivial)
              << "\n";
    std::cout << "|Mult| = |B0| x |Inner|: " << yes(rep.factorization_counts)
              << "\n";
    std::cout << "common coset representative: "
              << yes(rep.closure_common_representative) << "\n";
    std::cout << "star product matches the table: " << yes(rep.star_matches_table)
              << "\n";
    std::cout << "Schreier elements generate Inner: "
              << yes(rep.inner_from_schreier_generators) << "\n";
    if (rep.all_pass()) {
      std::cout << "s-decomposition: PASS\n";
    } else {
      std::cout << "s-decomposition: FAIL (" << rep.first_failure << ")\n";
    }
  }
  return rep.all_pass() ? 0 : 1;
}

int cmd_sts_t4(Options& opt, const std::string& path, int base, int cap) {
  steiner::T4Report rep = steiner::t4_finite_check(load_sts(path), base, cap);
  opt.doc = {{"command", "sts t4"},
             {"base", base},
             {"interior_aut_order", rep.interior_aut_order},
             {"stabilizer_order", rep.stabilizer_order},
             {"exterior_aut_order", rep.exterior_aut_order},
             {"equal", rep.equal}};
  if (!opt.json) {
    if (rep.equal) {
      std::cout << "|Aut(IS)| = |Stab| = " << rep.interior_aut_order
                << ": EQUAL\n";
    } else {
      std::cout << "|Aut(IS)| = " << rep.interior_aut_order
                << ", |Stab| = " << rep.stabilizer_order << ": DIFFER\n";
    }
  }
  return rep.equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free Steiner loop calculator"};
  Options opt;
  app.add_option("-n,--generators", opt.n, "number of free generators (default 3)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-len", opt.max_len,
                 "word length cap (default: closure 6, nucleus-scan 3)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-elements", opt.max_elements,
                 "element cap for closures, searches and group orders")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", opt.threads, "worker threads for the Cayley search")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", opt.json, "emit one JSON document on stdout");

  std::string word_text;
  auto* eval = app.add_subcommand("eval", "evaluate a word expression");
  eval->fallthrough();
  eval->add_option("expr", word_text, "word expression, e.g. \"(x1 (x1 x2))\"")
      ->required();

  std::string norm_text;
  auto* normalize = app.add_subcommand("normalize", "canonical form of an expression");
  normalize->fallthrough();
  normalize->add_option("expr", norm_text, "word expression")->required();

  std::vector<std::string> closure_words;
  auto* closure = app.add_subcommand("closure", "ball of the generated subloop");
  closure->fallthrough();
  closure->add_option("words", closure_words, "generator words")->required();

  std::vector<std::string> reduce_words;
  auto* reduce = app.add_subcommand("reduce", "Nielsen-reduce a generator tuple");
  reduce->fallthrough();
  reduce->add_option("words", reduce_words, "generator words")->required();

  std::vector<std::string> isaut_images;
  auto* isaut = app.add_subcommand("is-aut", "test whether images define an automorphism");
  isaut->fallthrough();
  isaut->add_option("--images", isaut_images, "one image word per generator")
      ->required();

  std::vector<std::string> dec_images;
  auto* decompose =
      app.add_subcommand("decompose", "write an automorphism as elementary letters");
  decompose->fallthrough();
  decompose->add_option("--images", dec_images, "one image word per generator")
      ->required();

  std::vector<std::string> inv_images;
  auto* invert = app.add_subcommand("invert", "invert an automorphism");
  invert->fallthrough();
  invert->add_option("--images", inv_images, "one image word per generator")
      ->required();

  std::string mult_text;
  auto* mult = app.add_subcommand(
      "mult-rewrite", "factor a translation product over the identity stabilizer");
  mult->fallthrough();
  mult->add_option("product", mult_text, "e.g. \"R[x1]*R[x2]\"")->required();

  auto* relations = app.add_subcommand("relations", "relation searches in Aut");
  relations->require_subcommand(1);
  relations->fallthrough();
  auto* rel_verify =
      relations->add_subcommand("verify-known", "check the stock list of identities");
  rel_verify->fallthrough();
  int bfs_depth = 6;
  std::string bfs_letters = "phi,s12,s13";
  std::string bfs_family;
  auto* rel_bfs = relations->add_subcommand("bfs", "sphere sizes and relators");
  rel_bfs->fallthrough();
  rel_bfs->add_option("--depth", bfs_depth, "radius of the search (default 6)")
      ->check(CLI::PositiveNumber);
  rel_bfs->add_option("--letters", bfs_letters,
                      "comma list from phi,s12,s13,tau,xi (default phi,s12,s13)");
  rel_bfs->add_option("--free-family", bfs_family,
                      "use a family with no relations instead (e1)");
  int conj_target = 0;
  int conj_depth = 8;
  auto* rel_conj = relations->add_subcommand(
      "conjecture", "compare sphere growth against the conjectured presentation");
  rel_conj->fallthrough();
  rel_conj->add_option("--target", conj_target,
                       "1 = whole group vs Coxeter, 2 = stabilizer vs free product")
      ->required()
      ->check(CLI::Range(1, 2));
  rel_conj->add_option("--depth", conj_depth, "comparison depth (default 8)")
      ->check(CLI::PositiveNumber);

  auto* nucleus = app.add_subcommand(
      "nucleus-scan", "associativity-failure witnesses for every short word");
  nucleus->fallthrough();

  auto* sts = app.add_subcommand("sts", "finite Steiner triple system reports");
  sts->require_subcommand(1);
  sts->fallthrough();
  std::string sts_file;
  std::string sts_kind = "exterior";
  int sts_base = 1;
  int sts_cap = 15;
  auto* sts_validate = sts->add_subcommand("validate", "check the system axioms");
  sts_validate->fallthrough();
  sts_validate->add_option("file", sts_file, "block file")->required();
  auto* sts_tables = sts->add_subcommand("tables", "print a loop table");
  sts_tables->fallthrough();
  sts_tables->add_option("file", sts_file, "block file")->required();
  sts_tables->add_option("--kind", sts_kind, "quasigroup | exterior | interior")
      ->check(CLI::IsMember({"quasigroup", "exterior", "interior"}));
  sts_tables->add_option("--base", sts_base, "base point for the interior loop");
  auto* sts_aut = sts->add_subcommand("aut", "automorphism group report");
  sts_aut->fallthrough();
  sts_aut->add_option("file", sts_file, "block file")->required();
  sts_aut->add_option("--cap", sts_cap, "largest point count searched (default 15)")
      ->check(CLI::PositiveNumber);
  auto* sts_sdecomp =
      sts->add_subcommand("sdecomp", "multiplication-group factorization checks");
  sts_sdecomp->fallthrough();
  sts_sdecomp->add_option("file", sts_file, "block file")->required();
  sts_sdecomp->add_option("--kind", sts_kind, "exterior (default) | interior | quasigroup")
      ->check(CLI::IsMember({"quasigroup", "exterior", "interior"}));
  sts_sdecomp->add_option("--base", sts_base, "base point for the interior loop");
  auto* sts_t4 = sts->add_subcommand(
      "t4", "compare interior automorphisms with the exterior stabilizer");
  sts_t4->fallthrough();
  sts_t4->add_option("file", sts_file, "block file")->required();
  sts_t4->add_option("--base", sts_base, "base point (default 1)");
  sts_t4->add_option("--cap", sts_cap, "largest point count searched (default 15)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return 0;
  }

  int code = 0;
  try {
    if (eval->parsed()) code = cmd_eval(opt, word_text);
    else if (normalize->parsed()) code = cmd_normalize(opt, norm_text);
    else if (closure->parsed()) code = cmd_closure(opt, closure_words);
    else if (reduce->parsed()) code = cmd_reduce(opt, reduce_words);
    else if (isaut->parsed()) code = cmd_is_aut(opt, isaut_images);
    else if (decompose->parsed()) code = cmd_decompose(opt, dec_images);
    else if (invert->parsed()) code = cmd_invert(opt, inv_images);
    else if (mult->parsed()) code = cmd_mult_rewrite(opt, mult_text);
    else if (rel_verify->parsed()) code = cmd_relations_verify(opt);
    else if (rel_bfs->parsed())
      code = cmd_relations_bfs(opt, bfs_depth, bfs_letters, bfs_family);
    else if (rel_conj->parsed())
      code = cmd_relations_conjecture(opt, conj_target, conj_depth);
    else if (nucleus->parsed()) code = cmd_nucleus_scan(opt);
    else if (sts_validate->parsed()) code = cmd_sts_validate(opt, sts_file);
    else if (sts_tables->parsed())
      code = cmd_sts_tables(opt, sts_file, sts_kind, sts_base);
    else if (sts_aut->parsed()) code = cmd_sts_aut(opt, sts_file, sts_cap);
    else if (sts_sdecomp->parsed())
      code = cmd_sts_sdecomp(opt, sts_file, sts_kind, sts_base);
    else if (sts_t4->parsed()) code = cmd_sts_t4(opt, sts_file, sts_base, sts_cap);
  } catch (const steiner::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    if (opt.json) opt.doc = {{"error", e.what()}, {"kind", "input"}};
    emit(opt);
    return 2;
  } catch (const steiner::resource_limit_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    if (opt.json) opt.doc = {{"error", e.what()}, {"kind", "resource"}};
    emit(opt);
    return 3;
  } catch (const steiner::precondition_error& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    if (opt.json) opt.doc = {{"error", e.what()}, {"kind", "precondition"}};
    emit(opt);
    return 1;
  } catch (const steiner::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (opt.json) opt.doc = {{"error", e.what()}, {"kind", "internal"}};
    emit(opt);
    return 2;
  }
  emit(opt);
  return code;
}
