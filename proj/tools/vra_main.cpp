// Command-line surface over the VRA library: membership, classification,
// decision procedures, closure operations, translations, normalization,
// random instance generation, bounded equivalence, and DOT export.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vra/codet.hpp"
#include "vra/decisions.hpp"
#include "vra/errors.hpp"
#include "vra/io.hpp"
#include "vra/lang_ops.hpp"
#include "vra/model.hpp"
#include "vra/oracle.hpp"
#include "vra/semantics.hpp"
#include "vra/vpa.hpp"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;

using Acceptor = std::variant<vra::Vra, vra::Vpa>;

std::string slurp(const std::string& path) {
  if (path == "-" || path.empty()) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw vra::ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_like_vpa(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  return j.is_object() && j.contains("stack_alphabet");
}

Acceptor load_any(const std::string& path) {
  std::string text = slurp(path);
  if (looks_like_vpa(text)) return vra::parse_vpa(text);
  return vra::parse_vra(text);
}

vra::Vra load_vra_arg(const std::string& path) { return vra::parse_vra(slurp(path)); }
vra::Vpa load_vpa_arg(const std::string& path) { return vra::parse_vpa(slurp(path)); }

vra::Word join_word(const std::vector<std::string>& letters,
                    const vra::PushdownAlphabet& a) {
  std::string text;
  for (const auto& l : letters) {
    text += l;
    text += ' ';
  }
  return vra::parse_word(text, a);
}

nlohmann::json word_json(const vra::Word& w) {
  nlohmann::json out = nlohmann::json::array();
  for (vra::Symbol s : w.letters) out.push_back(s.name());
  return out;
}

nlohmann::json run_json(const vra::RecursiveRun& run, const vra::Vra& v) {
  auto config = [&](const vra::Configuration& c) {
    nlohmann::json j;
    j["state"] = v.automaton(v.module_of(c.state)).name_of(c.state);
    nlohmann::json stack = nlohmann::json::array();
    for (vra::StateId q : c.stack) {
      stack.push_back(v.automaton(v.module_of(q)).name_of(q));
    }
    j["stack"] = stack;
    return j;
  };
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : run.steps) {
    nlohmann::json j;
    j["from"] = config(s.from);
    j["letter"] = s.letter.name();
    j["to"] = config(s.to);
    steps.push_back(j);
  }
  return steps;
}

struct Options {
  std::string input;
  std::string other;
  int max_len = 8;
  bool trim = true;
  bool explain = false;
  bool preserve_codet = false;
  std::uint64_t seed = 0;
  std::vector<std::string> letters;
};

int run_member(const Options& opt) {
  Acceptor acc = load_any(opt.input);
  if (auto* v = std::get_if<vra::Vra>(&acc)) {
    vra::Word w = join_word(opt.letters, v->alphabet);
    auto report = vra::vra_member(*v, w, opt.explain);
    if (opt.explain) {
      nlohmann::json j;
      j["accepted"] = report.accepted;
      if (report.reason == vra::RejectReason::NotWellMatched) j["reason"] = "not-well-matched";
      if (report.witness) j["witness"] = run_json(*report.witness, *v);
      std::cerr << j.dump(2) << "\n";
    }
    return report.accepted ? kYes : kNo;
  }
  const auto& p = std::get<vra::Vpa>(acc);
  vra::Word w = join_word(opt.letters, p.alphabet);
  return vra::vpa_member(p, w) ? kYes : kNo;
}

int run_classify(const Options& opt) {
  Acceptor acc = load_any(opt.input);
  const vra::PushdownAlphabet& alphabet = std::holds_alternative<vra::Vra>(acc)
                                              ? std::get<vra::Vra>(acc).alphabet
                                              : std::get<vra::Vpa>(acc).alphabet;
  vra::Word w = join_word(opt.letters, alphabet);
  auto info = vra::classify(w, alphabet);
  nlohmann::json j;
  j["well_matched"] = info.is_well_matched;
  if (info.is_well_matched) {
    j["depth"] = info.depth;
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : info.decomposition->brackets) {
      nlohmann::json fj;
      fj["call"] = f.call.name();
      fj["inner"] = word_json(f.inner);
      fj["ret"] = f.ret.name();
      factors.push_back(fj);
    }
    j["brackets"] = factors;
  }
  std::cout << j.dump(2) << "\n";
  return info.is_well_matched ? kYes : kNo;
}

int run_decide(const std::string& what, const Options& opt) {
  vra::Vra v = load_vra_arg(opt.input);
  auto explain_word = [&](const char* key, const std::optional<vra::Word>& w) {
    if (!opt.explain) return;
    nlohmann::json j;
    if (w) j[key] = word_json(*w);
    std::cerr << j.dump(2) << "\n";
  };

  if (what == "empty") {
    auto r = vra::is_empty(v);
    if (opt.explain) {
      nlohmann::json j;
      nlohmann::json reach = nlohmann::json::array();
      for (vra::StateId q : r.certificate.reach) {
        reach.push_back(v.automaton(v.module_of(q)).name_of(q));
      }
      j["reach"] = reach;
      nlohmann::json enabled = nlohmann::json::array();
      for (vra::Symbol s : r.certificate.enabled) enabled.push_back(s.name());
      j["enabled"] = enabled;
      if (r.certificate.witness) j["witness"] = word_json(*r.certificate.witness);
      std::cerr << j.dump(2) << "\n";
    }
    return r.empty ? kYes : kNo;
  }
  if (what == "universal") {
    auto r = vra::is_universal(v);
    explain_word("counterexample", r.counterexample);
    return r.holds ? kYes : kNo;
  }
  if (what == "includes" || what == "equiv") {
    if (opt.other.empty()) throw vra::ParseError("--other is required for " + what);
    vra::Vra o = load_vra_arg(opt.other);
    auto r = what == "includes" ? vra::includes(v, o) : vra::equivalent(v, o);
    explain_word("counterexample", r.counterexample);
    return r.holds ? kYes : kNo;
  }
  if (what == "codet") {
    auto r = vra::is_codeterministic(v);
    if (opt.explain) {
      nlohmann::json j;
      if (r.conflict) {
        j["conflict"] = {r.conflict->first.name(), r.conflict->second.name()};
      }
      if (r.witness) j["witness"] = word_json(*r.witness);
      std::cerr << j.dump(2) << "\n";
    }
    return r.codeterministic ? kYes : kNo;
  }
  if (what == "complete") {
    auto r = vra::is_complete(v);
    if (opt.explain) {
      nlohmann::json j;
      nlohmann::json diags = nlohmann::json::array();
      for (const auto& d : r.diagnostics) diags.push_back(d.message);
      j["diagnostics"] = diags;
      if (r.failing_pair) {
        j["failing_pair"] = {r.failing_pair->first.name(), r.failing_pair->second.name()};
      }
      if (r.missing_word) j["missing_word"] = word_json(*r.missing_word);
      std::cerr << j.dump(2) << "\n";
    }
    return r.complete ? kYes : kNo;
  }
  if (what == "det") {
    auto r = vra::is_deterministic(v);
    if (opt.explain) {
      nlohmann::json diags = nlohmann::json::array();
      for (const auto& d : r.diagnostics) diags.push_back(d.message);
      std::cerr << diags.dump(2) << "\n";
    }
    return r.deterministic ? kYes : kNo;
  }
  if (what == "spa") return vra::is_spa(v) ? kYes : kNo;
  throw vra::ParseError("unknown decision " + what);
}

int run_op(const std::string& what, const Options& opt) {
  vra::Vra a = load_vra_arg(opt.input);
  vra::Vra out;
  if (what == "star") {
    out = opt.preserve_codet ? vra::vra_star_cc(a) : vra::vra_star(a);
  } else if (what == "complement") {
    out = vra::vra_complement(a);
  } else {
    if (opt.other.empty()) throw vra::ParseError("--other is required for " + what);
    vra::Vra b = load_vra_arg(opt.other);
    if (what == "concat") {
      out = opt.preserve_codet ? vra::vra_concat_cc(a, b) : vra::vra_concat(a, b);
    } else if (what == "union") {
      out = opt.preserve_codet ? vra::vra_union_cc(a, b) : vra::vra_union(a, b);
    } else if (what == "intersect") {
      out = opt.preserve_codet ? vra::vra_intersect_cc(a, b) : vra::vra_intersect(a, b);
    } else {
      throw vra::ParseError("unknown operation " + what);
    }
  }
  std::cout << vra::save_vra(out);
  return kYes;
}

int run_translate(const std::string& what, const Options& opt) {
  if (what == "to-vpa") {
    vra::Vra v = load_vra_arg(opt.input);
    std::cout << vra::save_vpa(vra::vra_to_vpa(v));
    return kYes;
  }
  if (what == "to-vra") {
    vra::Vpa p = load_vpa_arg(opt.input);
    std::cout << vra::save_vra(vra::vpa_to_vra(p, opt.trim));
    return kYes;
  }
  throw vra::ParseError("unknown translation " + what);
}

int run_normalize(const Options& opt) {
  vra::Vra v = load_vra_arg(opt.input);
  auto result = vra::codet_complete(v, opt.trim ? vra::CodetTrim::On : vra::CodetTrim::Off);
  std::cout << vra::save_vra(result.vra);
  return kYes;
}

int run_random(const Options& opt) {
  std::cout << vra::save_vra(vra::oracle::random_vra(opt.seed));
  return kYes;
}

int run_bounded_equiv(const Options& opt) {
  if (opt.other.empty()) throw vra::ParseError("--other is required for bounded-equiv");
  Acceptor a = load_any(opt.input);
  Acceptor b = load_any(opt.other);
  auto ref = [](const Acceptor& acc) {
    if (auto* v = std::get_if<vra::Vra>(&acc)) return vra::oracle::AcceptorRef{v};
    return vra::oracle::AcceptorRef{&std::get<vra::Vpa>(acc)};
  };
  const vra::PushdownAlphabet& alphabet = std::holds_alternative<vra::Vra>(a)
                                              ? std::get<vra::Vra>(a).alphabet
                                              : std::get<vra::Vpa>(a).alphabet;
  vra::oracle::EnumerationBudget budget{opt.max_len, std::nullopt, alphabet};
  auto verdict = vra::oracle::bounded_equiv(ref(a), ref(b), budget);
  if (verdict.equal) return kYes;
  std::cout << "differ_at: " << verdict.differ_at->display() << "\n";
  return kNo;
}

int run_dot(const Options& opt) {
  Acceptor acc = load_any(opt.input);
  if (auto* v = std::get_if<vra::Vra>(&acc)) {
    std::cout << vra::export_dot(*v);
  } else {
    std::cout << vra::export_dot(std::get<vra::Vpa>(acc));
  }
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"visibly recursive automata toolkit"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_other = false) {
    cmd->add_option("--input", opt.input, "input file (JSON), - for stdin");
    if (needs_other) cmd->add_option("--other", opt.other, "second operand file");
    cmd->add_flag("--explain", opt.explain, "attach witnesses/certificates as JSON on stderr");
  };

  auto* member = app.add_subcommand("member", "membership of a word");
  add_common(member);
  member->add_option("letters", opt.letters, "word as whitespace-separated symbols");

  auto* cls = app.add_subcommand("classify", "well-matchedness, depth, decomposition");
  add_common(cls);
  cls->add_option("letters", opt.letters, "word as whitespace-separated symbols");

  auto* decide = app.add_subcommand("decide", "decision procedures");
  std::string decide_what;
  decide->add_option("what", decide_what,
                     "one of: empty universal includes equiv codet complete det spa")
      ->required();
  add_common(decide, true);

  auto* op = app.add_subcommand("op", "closure operations");
  std::string op_what;
  op->add_option("what", op_what, "one of: concat star union intersect complement")
      ->required();
  add_common(op, true);
  op->add_flag("--preserve-codet", opt.preserve_codet,
               "use the codeterminism-preserving variant");

  auto* translate = app.add_subcommand("translate", "VRA/VPA interconversion");
  std::string translate_what;
  translate->add_option("what", translate_what, "to-vpa or to-vra")->required();
  add_common(translate);
  translate->add_flag("--trim,!--no-trim", opt.trim, "drop unreferenced modules");

  auto* normalize = app.add_subcommand("normalize", "normal forms");
  std::string normalize_what;
  normalize->add_option("what", normalize_what, "codet-complete")->required();
  add_common(normalize);
  normalize->add_flag("--trim,!--no-trim", opt.trim, "keep only reachable states");

  auto* random = app.add_subcommand("random", "emit a seeded random VRA");
  random->add_option("--seed", opt.seed, "generator seed");

  auto* bequiv = app.add_subcommand("bounded-equiv", "bounded language comparison");
  add_common(bequiv, true);
  bequiv->add_option("--max-len", opt.max_len, "word length bound (default 8)");

  auto* dot = app.add_subcommand("dot", "Graphviz export");
  add_common(dot);

  CLI11_PARSE(app, argc, argv);

  try {
    if (member->parsed()) return run_member(opt);
    if (cls->parsed()) return run_classify(opt);
    if (decide->parsed()) return run_decide(decide_what, opt);
    if (op->parsed()) return run_op(op_what, opt);
    if (translate->parsed()) return run_translate(translate_what, opt);
    if (normalize->parsed()) {
      if (normalize_what != "codet-complete") {
        throw vra::ParseError("unknown normal form " + normalize_what);
      }
      return run_normalize(opt);
    }
    if (random->parsed()) return run_random(opt);
    if (bequiv->parsed()) return run_bounded_equiv(opt);
    if (dot->parsed()) return run_dot(opt);
  } catch (const vra::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
