#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mealy/machine.hpp"
#include "mealy/orbit.hpp"
#include "mealy/structure.hpp"

namespace mealy {

// Machine text format, line oriented, UTF-8. `#` opens a comment running to
// the end of the line. Layout:
//
//   mealy <name>
//   alphabet <l1> <l2> ...
//   state <q>
//   <input> -> <next-state> / <output>
//   ...
//   end
//
// One `state ... end` block per state, one transition line per letter.
// State identifiers ending in `^-1` denote inverse-tagged states.
// serialize_machine emits states and letters in declaration order, so
// serialize(parse(serialize(m))) is byte-identical to serialize(m).

inline MealyMachine parse_machine(std::string_view text) {
  MachineDescription desc;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  bool saw_alphabet = false;
  bool in_state = false;
  std::string current_state;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens{line};
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(std::move(t));
    if (tok.empty()) continue;

    if (!saw_header) {
      if (tok[0] != "mealy" || tok.size() != 2)
        throw ParseError(lineno, "expected 'mealy <name>'");
      desc.name = tok[1];
      saw_header = true;
    } else if (!saw_alphabet) {
      if (tok[0] != "alphabet" || tok.size() < 2)
        throw ParseError(lineno, "expected 'alphabet <letter>...'");
      desc.alphabet.assign(tok.begin() + 1, tok.end());
      saw_alphabet = true;
    } else if (!in_state) {
      if (tok[0] != "state" || tok.size() != 2) throw ParseError(lineno, "expected 'state <id>'");
      current_state = tok[1];
      desc.states.push_back(current_state);
      in_state = true;
    } else if (tok[0] == "end") {
      if (tok.size() != 1) throw ParseError(lineno, "'end' takes no arguments");
      in_state = false;
    } else {
      if (tok.size() != 5 || tok[1] != "->" || tok[3] != "/")
        throw ParseError(lineno, "expected '<input> -> <state> / <output>'");
      desc.transitions.push_back({current_state, tok[0], tok[2], tok[4]});
    }
  }
  if (!saw_header) throw ParseError(lineno, "missing 'mealy <name>' header");
  if (!saw_alphabet) throw ParseError(lineno, "missing 'alphabet' line");
  if (in_state) throw ParseError(lineno, "state block '" + current_state + "' is not closed");
  return build_machine(desc);
}

inline std::string serialize_machine(const MealyMachine& m) {
  std::string text = "mealy " + m.name() + "\nalphabet";
  for (const auto& l : m.letter_names()) text += " " + l;
  text += "\n";
  for (State x = 0; x < m.num_states(); ++x) {
    text += "state " + m.state_name(x) + "\n";
    for (Letter i = 0; i < m.num_letters(); ++i)
      text += m.letter_name(i) + " -> " + m.state_name(m.next(x, i)) + " / " +
              m.letter_name(m.out(x, i)) + "\n";
    text += "end\n";
  }
  return text;
}

namespace detail {
inline std::string dot_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}
}  // namespace detail

/// DOT digraph of the machine, one labeled edge per (state, letter).
inline std::string emit_dot_machine(const MealyMachine& m) {
  std::string dot = "digraph " + detail::dot_quote(m.name()) + " {\n";
  dot += "  rankdir=LR;\n  node [shape=circle];\n";
  for (State x = 0; x < m.num_states(); ++x)
    dot += "  " + detail::dot_quote(m.state_name(x)) + ";\n";
  for (State x = 0; x < m.num_states(); ++x)
    for (Letter i = 0; i < m.num_letters(); ++i)
      dot += "  " + detail::dot_quote(m.state_name(x)) + " -> " +
             detail::dot_quote(m.state_name(m.next(x, i))) + " [label=" +
             detail::dot_quote(m.letter_name(i) + "|" + m.letter_name(m.out(x, i))) + "];\n";
  return dot + "}\n";
}

/// DOT digraph of an orbit tree: nodes carry component sizes, edges carry
/// the integer ratio, and edges on 1-self-liftable paths are drawn bold.
inline std::string emit_dot_orbit_tree(const OrbitTree& tree) {
  std::string dot = "digraph \"orbit-tree\" {\n  node [shape=circle];\n";
  for (std::size_t id = 0; id < tree.nodes.size(); ++id)
    dot += "  n" + std::to_string(id) + " [label=\"" + std::to_string(tree.nodes[id].size) +
           "\"];\n";
  for (const auto& e : tree.edges) {
    dot += "  n" + std::to_string(e.parent) + " -> n" + std::to_string(e.child) + " [label=\"" +
           std::to_string(e.label) + "\"";
    if (e.liftable_mark) dot += ", style=bold";
    dot += "];\n";
  }
  return dot + "}\n";
}

struct CatalogEntry {
  std::string key;
  MealyMachine machine;
  std::string provenance;
  PropertyFlags claimed;
};

inline std::vector<std::string> catalog_keys() { return {"lamplighter", "lamplighter-inverse", "J"}; }

/// Small catalog of classical machines used throughout the test suites.
inline CatalogEntry catalog(const std::string& key) {
  if (key == "lamplighter") {
    MachineDescription d;
    d.name = "lamplighter";
    d.states = {"x", "y"};
    d.alphabet = {"0", "1"};
    d.transitions = {{"x", "0", "y", "1"},
                     {"x", "1", "x", "0"},
                     {"y", "0", "x", "0"},
                     {"y", "1", "y", "1"}};
    return CatalogEntry{key, build_machine(d),
                        "2-state generator of the lamplighter group Z2 wr Z; "
                        "invertible, reversible, not coreversible",
                        PropertyFlags{true, true, false, false}};
  }
  if (key == "lamplighter-inverse") {
    MealyMachine inv = inverse(catalog("lamplighter").machine);
    MealyMachine named("lamplighter-inverse", inv.state_names(), inv.letter_names(),
                       inv.next_table(), inv.out_table());
    return CatalogEntry{key, std::move(named),
                        "inverse of the lamplighter generator; invertible, "
                        "not reversible, coreversible",
                        PropertyFlags{true, false, true, false}};
  }
  if (key == "J") {
    MachineDescription d;
    d.name = "J";
    d.states = {"a", "b", "c", "d", "e", "f"};
    d.alphabet = {"1", "2", "3"};
    d.transitions = {
        {"a", "1", "b", "3"}, {"a", "2", "d", "2"}, {"a", "3", "f", "1"},
        {"b", "1", "f", "3"}, {"b", "2", "f", "2"}, {"b", "3", "d", "1"},
        {"c", "1", "a", "3"}, {"c", "2", "e", "2"}, {"c", "3", "b", "1"},
        {"d", "1", "e", "3"}, {"d", "2", "a", "2"}, {"d", "3", "c", "1"},
        {"e", "1", "c", "3"}, {"e", "2", "c", "2"}, {"e", "3", "a", "1"},
        {"f", "1", "d", "3"}, {"f", "2", "b", "1"}, {"f", "3", "e", "2"},
    };
    return CatalogEntry{key, build_machine(d),
                        "connected 6-state 3-letter machine; invertible, "
                        "reversible, not coreversible",
                        PropertyFlags{true, true, false, false}};
  }
  throw UnknownKey(key);
}

enum class MachineClass { Any, Invertible, Reversible, InvertibleReversible };

inline const char* to_string(MachineClass c) {
  switch (c) {
    case MachineClass::Any: return "any";
    case MachineClass::Invertible: return "invertible";
    case MachineClass::Reversible: return "reversible";
    case MachineClass::InvertibleReversible: return "inv-rev";
  }
  return "any";
}

namespace detail {

// Engine-stable bounded draw; std::uniform_int_distribution is not
// guaranteed to produce the same stream across standard libraries.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

inline std::vector<std::uint32_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint32_t> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = static_cast<std::uint32_t>(k);
  for (std::size_t k = n; k > 1; --k) std::swap(p[k - 1], p[bounded(rng, k)]);
  return p;
}

}  // namespace detail

/// Seed-deterministic random machine. For the restricted classes each
/// delta_i (and/or each rho_x) is an independent uniform permutation; the
/// two constraints act on disjoint table coordinates, so sampling them
/// independently is exact.
inline MealyMachine random_machine(std::size_t num_states, std::size_t num_letters,
                                   MachineClass cls, std::uint64_t seed) {
  if (num_states == 0 || num_letters == 0)
    throw MealyError("random_machine needs at least one state and one letter");
  std::mt19937_64 rng(seed);

  const bool perm_out = cls == MachineClass::Invertible || cls == MachineClass::InvertibleReversible;
  const bool perm_next = cls == MachineClass::Reversible || cls == MachineClass::InvertibleReversible;

  std::vector<State> next(num_states * num_letters);
  std::vector<Letter> out(num_states * num_letters);
  if (perm_next) {
    for (Letter i = 0; i < num_letters; ++i) {
      const auto p = detail::random_permutation(rng, num_states);
      for (State x = 0; x < num_states; ++x) next[x * num_letters + i] = p[x];
    }
  } else {
    for (auto& t : next) t = static_cast<State>(detail::bounded(rng, num_states));
  }
  if (perm_out) {
    for (State x = 0; x < num_states; ++x) {
      const auto p = detail::random_permutation(rng, num_letters);
      for (Letter i = 0; i < num_letters; ++i) out[x * num_letters + i] = p[i];
    }
  } else {
    for (auto& o : out) o = static_cast<Letter>(detail::bounded(rng, num_letters));
  }

  std::vector<std::string> states;
  states.reserve(num_states);
  for (std::size_t k = 0; k < num_states; ++k) states.push_back("q" + std::to_string(k));
  std::vector<std::string> letters;
  letters.reserve(num_letters);
  for (std::size_t k = 0; k < num_letters; ++k) letters.push_back(std::to_string(k));
  return MealyMachine("random-" + std::to_string(seed), std::move(states), std::move(letters),
                      std::move(next), std::move(out));
}

}  // namespace mealy
