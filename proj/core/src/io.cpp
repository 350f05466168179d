#include "vra/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vra/errors.hpp"

namespace vra {

using nlohmann::json;

namespace {

json symbols_to_json(const std::vector<Symbol>& syms) {
  std::vector<std::string> names;
  names.reserve(syms.size());
  for (Symbol s : syms) names.push_back(s.name());
  std::sort(names.begin(), names.end());
  return json(names);
}

json fa_to_json(const FiniteAutomaton& fa) {
  json out;
  auto name_list = [&](const std::vector<StateId>& qs) {
    std::vector<std::string> names;
    names.reserve(qs.size());
    for (StateId q : qs) names.push_back(fa.name_of(q));
    std::sort(names.begin(), names.end());
    return json(names);
  };
  out["states"] = name_list(fa.states);
  out["initials"] = name_list(fa.initials);
  out["finals"] = name_list(fa.finals);
  std::vector<std::array<std::string, 3>> triples;
  triples.reserve(fa.transitions.size());
  for (const auto& t : fa.transitions) {
    triples.push_back({fa.name_of(t.src), t.label.name(), fa.name_of(t.dst)});
  }
  std::sort(triples.begin(), triples.end());
  out["transitions"] = json::array();
  for (const auto& t : triples) out["transitions"].push_back({t[0], t[1], t[2]});
  return out;
}

FiniteAutomaton fa_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": automaton must be an object");
  FiniteAutomaton fa;
  std::map<std::string, StateId> ids;
  if (!j.contains("states") || !j["states"].is_array()) {
    throw ParseError(where + ": missing \"states\" array");
  }
  for (const auto& s : j["states"]) {
    std::string name = s.get<std::string>();
    if (ids.count(name)) throw ParseError(where + ": duplicate state name " + name);
    ids[name] = fa.add_state(name);
  }
  auto lookup = [&](const json& s, const char* role) {
    std::string name = s.get<std::string>();
    auto it = ids.find(name);
    if (it == ids.end()) {
      throw ParseError(where + ": " + role + " references undeclared state " + name);
    }
    return it->second;
  };
  for (const auto& s : j.value("initials", json::array())) {
    fa.mark_initial(lookup(s, "initials"));
  }
  for (const auto& s : j.value("finals", json::array())) {
    fa.mark_final(lookup(s, "finals"));
  }
  for (const auto& t : j.value("transitions", json::array())) {
    if (!t.is_array() || t.size() != 3) {
      throw ParseError(where + ": transition entries must be [src, label, dst]");
    }
    fa.add_transition(lookup(t[0], "transition"), Symbol{t[1].get<std::string>()},
                      lookup(t[2], "transition"));
  }
  fa.normalize();
  return fa;
}

PushdownAlphabet alphabet_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("\"alphabet\" must be an object");
  PushdownAlphabet a;
  for (const auto& s : j.value("internal", json::array())) {
    a.internal.push_back(Symbol{s.get<std::string>()});
  }
  for (const auto& s : j.value("call", json::array())) {
    a.call.push_back(Symbol{s.get<std::string>()});
  }
  for (const auto& s : j.value("ret", json::array())) {
    a.ret.push_back(Symbol{s.get<std::string>()});
  }
  std::sort(a.internal.begin(), a.internal.end());
  std::sort(a.call.begin(), a.call.end());
  std::sort(a.ret.begin(), a.ret.end());
  return a;
}

json alphabet_to_json(const PushdownAlphabet& a) {
  json out;
  out["internal"] = symbols_to_json(a.internal);
  out["call"] = symbols_to_json(a.call);
  out["ret"] = symbols_to_json(a.ret);
  return out;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.what() carries the byte position of the failure.
    throw ParseError(std::string("input is not valid JSON: ") + e.what());
  }
}

std::string read_stream(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_stream(in);
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

void dot_cluster(std::ostream& os, const std::string& tag, const FiniteAutomaton& fa) {
  os << "  subgraph " << dot_quote("cluster_" + tag) << " {\n";
  os << "    label=" << dot_quote(tag) << ";\n";
  std::vector<std::string> node_lines;
  for (StateId q : fa.states) {
    std::string id = tag + "." + fa.name_of(q);
    std::string line = "    " + dot_quote(id) + " [label=" + dot_quote(fa.name_of(q));
    line += fa.is_final(q) ? ", shape=doublecircle]" : ", shape=circle]";
    node_lines.push_back(line + ";");
  }
  std::sort(node_lines.begin(), node_lines.end());
  for (const auto& line : node_lines) os << line << "\n";
  int k = 0;
  for (StateId q : fa.initials) {
    std::string marker = tag + ".__start" + std::to_string(k++);
    os << "    " << dot_quote(marker) << " [shape=point, width=0.06];\n";
    os << "    " << dot_quote(marker) << " -> " << dot_quote(tag + "." + fa.name_of(q))
       << ";\n";
  }
  std::map<std::pair<std::string, std::string>, std::set<std::string>> edges;
  for (const auto& t : fa.transitions) {
    edges[{fa.name_of(t.src), fa.name_of(t.dst)}].insert(t.label.name());
  }
  for (const auto& [pair, labels] : edges) {
    std::string joined;
    for (const auto& l : labels) {
      if (!joined.empty()) joined += ",";
      joined += l;
    }
    os << "    " << dot_quote(tag + "." + pair.first) << " -> "
       << dot_quote(tag + "." + pair.second) << " [label=" << dot_quote(joined)
       << "];\n";
  }
  os << "  }\n";
}

}  // namespace

std::string save_vra(const Vra& v) {
  json out;
  out["alphabet"] = alphabet_to_json(v.alphabet);
  json procs = json::array();
  for (const auto& [sym, lk] : v.procs.link) {
    json entry;
    entry["symbol"] = sym.name();
    if (lk.is_subset) {
      entry["pair"] = {lk.call.name(), lk.ret.name()};
      std::vector<std::string> members;
      for (Symbol m : lk.members) members.push_back(m.name());
      std::sort(members.begin(), members.end());
      entry["members"] = members;
    } else {
      entry["call"] = lk.call.name();
      entry["ret"] = lk.ret.name();
    }
    procs.push_back(entry);
  }
  out["procedural"] = procs;
  out["modules"] = json::object();
  for (const auto& [sym, fa] : v.modules) out["modules"][sym.name()] = fa_to_json(fa);
  out["start"] = fa_to_json(v.start);
  return out.dump(2) + "\n";
}

Vra parse_vra(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw ParseError("top level must be an object");
  if (!j.contains("alphabet")) throw ParseError("missing \"alphabet\"");
  if (!j.contains("start")) throw ParseError("missing \"start\"");

  PushdownAlphabet alphabet = alphabet_from_json(j["alphabet"]);
  ProceduralAlphabet procs;
  for (const auto& entry : j.value("procedural", json::array())) {
    if (!entry.is_object() || !entry.contains("symbol")) {
      throw ParseError("procedural entries must be objects with a \"symbol\"");
    }
    Symbol sym{entry["symbol"].get<std::string>()};
    ProcLink lk;
    if (entry.contains("pair")) {
      const auto& pair = entry["pair"];
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError("procedural \"pair\" must be [call, ret]");
      }
      lk.call = Symbol{pair[0].get<std::string>()};
      lk.ret = Symbol{pair[1].get<std::string>()};
      lk.is_subset = true;
      for (const auto& m : entry.value("members", json::array())) {
        lk.members.push_back(Symbol{m.get<std::string>()});
      }
      std::sort(lk.members.begin(), lk.members.end());
    } else {
      if (!entry.contains("call") || !entry.contains("ret")) {
        throw ParseError("procedural entry for " + sym.name() +
                         " needs \"call\" and \"ret\" (or \"pair\")");
      }
      lk.call = Symbol{entry["call"].get<std::string>()};
      lk.ret = Symbol{entry["ret"].get<std::string>()};
    }
    if (procs.link.count(sym)) throw ParseError("duplicate procedural symbol " + sym.name());
    procs.link[sym] = std::move(lk);
  }

  std::map<Symbol, FiniteAutomaton> modules;
  const json modules_json = j.value("modules", json::object());
  for (const auto& [name, fa_json] : modules_json.items()) {
    modules[Symbol{name}] = fa_from_json(fa_json, "module " + name);
  }
  FiniteAutomaton start = fa_from_json(j["start"], "start");

  Vra v = make_vra(std::move(alphabet), std::move(procs), std::move(modules),
                   std::move(start));
  auto diags = validate_vra(v);
  if (!diags.empty()) {
    std::string msg = "invalid VRA:";
    for (const auto& d : diags) msg += " [" + d.code + "] " + d.message + ";";
    throw ValidationError(msg);
  }
  return v;
}

Vra load_vra(std::istream& in) { return parse_vra(read_stream(in)); }
Vra load_vra_file(const std::string& path) { return parse_vra(read_file(path)); }

std::string save_vpa(const Vpa& p) {
  json out;
  out["alphabet"] = alphabet_to_json(p.alphabet);
  out["stack_alphabet"] = symbols_to_json(p.stack_alphabet);
  auto name_list = [&](const std::vector<StateId>& qs) {
    std::vector<std::string> names;
    for (StateId q : qs) names.push_back(p.name_of(q));
    std::sort(names.begin(), names.end());
    return json(names);
  };
  out["states"] = name_list(p.states);
  out["initials"] = name_list(p.initials);
  out["finals"] = name_list(p.finals);

  std::vector<std::array<std::string, 3>> ints;
  for (const auto& t : p.internal_transitions) {
    ints.push_back({p.name_of(t.src), t.label.name(), p.name_of(t.dst)});
  }
  std::sort(ints.begin(), ints.end());
  out["internal_transitions"] = json::array();
  for (const auto& t : ints) out["internal_transitions"].push_back({t[0], t[1], t[2]});

  std::vector<std::array<std::string, 4>> calls;
  for (const auto& t : p.call_transitions) {
    calls.push_back({p.name_of(t.src), t.letter.name(), p.name_of(t.dst),
                     t.stack_sym.name()});
  }
  std::sort(calls.begin(), calls.end());
  out["call_transitions"] = json::array();
  for (const auto& t : calls) out["call_transitions"].push_back({t[0], t[1], t[2], t[3]});

  std::vector<std::array<std::string, 4>> rets;
  for (const auto& t : p.return_transitions) {
    rets.push_back({p.name_of(t.src), t.letter.name(), t.stack_sym.name(),
                    p.name_of(t.dst)});
  }
  std::sort(rets.begin(), rets.end());
  out["return_transitions"] = json::array();
  for (const auto& t : rets) out["return_transitions"].push_back({t[0], t[1], t[2], t[3]});
  return out.dump(2) + "\n";
}

Vpa parse_vpa(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw ParseError("top level must be an object");
  if (!j.contains("alphabet")) throw ParseError("missing \"alphabet\"");

  Vpa p;
  p.alphabet = alphabet_from_json(j["alphabet"]);
  for (const auto& s : j.value("stack_alphabet", json::array())) {
    p.stack_alphabet.push_back(Symbol{s.get<std::string>()});
  }

  std::map<std::string, StateId> ids;
  StateId next = 0;
  for (const auto& s : j.value("states", json::array())) {
    std::string name = s.get<std::string>();
    if (ids.count(name)) throw ParseError("duplicate state name " + name);
    ids[name] = next;
    p.states.push_back(next);
    p.names[next] = name;
    ++next;
  }
  auto lookup = [&](const json& s) {
    std::string name = s.get<std::string>();
    auto it = ids.find(name);
    if (it == ids.end()) throw ParseError("undeclared state " + name);
    return it->second;
  };
  for (const auto& s : j.value("initials", json::array())) p.initials.push_back(lookup(s));
  for (const auto& s : j.value("finals", json::array())) p.finals.push_back(lookup(s));
  for (const auto& t : j.value("internal_transitions", json::array())) {
    if (!t.is_array() || t.size() != 3) {
      throw ParseError("internal transitions must be [src, letter, dst]");
    }
    p.internal_transitions.push_back(
        {lookup(t[0]), Symbol{t[1].get<std::string>()}, lookup(t[2])});
  }
  for (const auto& t : j.value("call_transitions", json::array())) {
    if (!t.is_array() || t.size() != 4) {
      throw ParseError("call transitions must be [src, letter, dst, stack_symbol]");
    }
    p.call_transitions.push_back({lookup(t[0]), Symbol{t[1].get<std::string>()},
                                  lookup(t[2]), Symbol{t[3].get<std::string>()}});
  }
  for (const auto& t : j.value("return_transitions", json::array())) {
    if (!t.is_array() || t.size() != 4) {
      throw ParseError("return transitions must be [src, letter, stack_symbol, dst]");
    }
    p.return_transitions.push_back({lookup(t[0]), Symbol{t[1].get<std::string>()},
                                    Symbol{t[2].get<std::string>()}, lookup(t[3])});
  }
  p.normalize();
  auto diags = validate_vpa(p);
  if (!diags.empty()) {
    std::string msg = "invalid VPA:";
    for (const auto& d : diags) msg += " [" + d.code + "] " + d.message + ";";
    throw ValidationError(msg);
  }
  return p;
}

Vpa load_vpa(std::istream& in) { return parse_vpa(read_stream(in)); }
Vpa load_vpa_file(const std::string& path) { return parse_vpa(read_file(path)); }

std::string export_dot(const Vra& v) {
  std::ostringstream os;
  os << "digraph vra {\n  rankdir=LR;\n";
  dot_cluster(os, "S", v.start);
  for (const auto& [sym, fa] : v.modules) dot_cluster(os, sym.name(), fa);
  os << "}\n";
  return os.str();
}

std::string export_dot(const Vpa& p) {
  std::ostringstream os;
  os << "digraph vpa {\n  rankdir=LR;\n";
  for (StateId q : p.states) {
    os << "  " << dot_quote(p.name_of(q)) << " [label=" << dot_quote(p.name_of(q));
    bool fin = std::binary_search(p.finals.begin(), p.finals.end(), q);
    os << (fin ? ", shape=doublecircle]" : ", shape=circle]") << ";\n";
  }
  int k = 0;
  for (StateId q : p.initials) {
    std::string marker = "__start" + std::to_string(k++);
    os << "  " << dot_quote(marker) << " [shape=point, width=0.06];\n";
    os << "  " << dot_quote(marker) << " -> " << dot_quote(p.name_of(q)) << ";\n";
  }
  std::map<std::pair<std::string, std::string>, std::set<std::string>> edges;
  for (const auto& t : p.internal_transitions) {
    edges[{p.name_of(t.src), p.name_of(t.dst)}].insert(t.label.name());
  }
  for (const auto& t : p.call_transitions) {
    edges[{p.name_of(t.src), p.name_of(t.dst)}].insert(t.letter.name() + "/" +
                                                       t.stack_sym.name());
  }
  for (const auto& t : p.return_transitions) {
    edges[{p.name_of(t.src), p.name_of(t.dst)}].insert(t.letter.name() + "[" +
                                                       t.stack_sym.name() + "]");
  }
  for (const auto& [pair, labels] : edges) {
    std::string joined;
    for (const auto& l : labels) {
      if (!joined.empty()) joined += ",";
      joined += l;
    }
    os << "  " << dot_quote(pair.first) << " -> " << dot_quote(pair.second)
       << " [label=" << dot_quote(joined) << "];\n";
  }
  os << "}\n";
  return os.str();
}

Word parse_word(const std::string& text, const PushdownAlphabet& a) {
  Word w;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    Symbol s{token};
    if (!a.contains(s)) throw UnknownSymbolError(token);
    w.letters.push_back(s);
  }
  return w;
}

}  // namespace vra
