#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mealy/errors.hpp"

namespace mealy {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// A word over the stateset. It is both a state of the |u|-th power of the
/// machine and the name of the action rho_u = rho_{u_n} o ... o rho_{u_1}
/// (first entry applied first). The empty word acts as the identity.
using StateWord = std::vector<State>;

/// A word over the alphabet.
using LetterWord = std::vector<Letter>;

inline constexpr std::size_t default_budget = 1'000'000;

/// A complete deterministic letter-to-letter transducer with one alphabet.
///
/// States and letters are stored as dense indices; their display names are
/// kept in declaration order, which fixes every canonical form downstream
/// (component representatives, serialization order, DOT output).
/// Instances are immutable: all operations on machines build new values.
class MealyMachine {
 public:
  MealyMachine(std::string name, std::vector<std::string> state_names,
               std::vector<std::string> letter_names, std::vector<State> next,
               std::vector<Letter> out)
      : name_(std::move(name)),
        state_names_(std::move(state_names)),
        letter_names_(std::move(letter_names)),
        next_(std::move(next)),
        out_(std::move(out)) {
    if (state_names_.empty()) throw MealyError("a machine needs at least one state");
    if (letter_names_.empty()) throw MealyError("a machine needs at least one letter");
    for (State x = 0; x < state_names_.size(); ++x) {
      if (!state_index_.emplace(state_names_[x], x).second)
        throw MealyError("duplicate state id '" + state_names_[x] + "'");
    }
    for (Letter i = 0; i < letter_names_.size(); ++i) {
      if (!letter_index_.emplace(letter_names_[i], i).second)
        throw MealyError("duplicate letter id '" + letter_names_[i] + "'");
    }
    const std::size_t table = state_names_.size() * letter_names_.size();
    if (next_.size() != table || out_.size() != table)
      throw MealyError("transition tables must hold exactly one entry per (state, letter)");
    for (State x : next_)
      if (x >= state_names_.size()) throw MealyError("transition target out of range");
    for (Letter i : out_)
      if (i >= letter_names_.size()) throw MealyError("transition output out of range");
  }

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_letters() const { return letter_names_.size(); }

  /// delta_i(x): the state reached from x reading i.
  State next(State x, Letter i) const { return next_[x * num_letters() + i]; }
  /// rho_x(i): the letter produced by x reading i.
  Letter out(State x, Letter i) const { return out_[x * num_letters() + i]; }

  const std::string& name() const { return name_; }
  const std::string& state_name(State x) const { return state_names_[x]; }
  const std::string& letter_name(Letter i) const { return letter_names_[i]; }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& letter_names() const { return letter_names_; }
  const std::vector<State>& next_table() const { return next_; }
  const std::vector<Letter>& out_table() const { return out_; }

  std::optional<State> state_index(std::string_view id) const {
    auto it = state_index_.find(std::string(id));
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<Letter> letter_index(std::string_view id) const {
    auto it = letter_index_.find(std::string(id));
    if (it == letter_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Structural equality; the display name is metadata and not compared.
  friend bool operator==(const MealyMachine& a, const MealyMachine& b) {
    return a.state_names_ == b.state_names_ && a.letter_names_ == b.letter_names_ &&
           a.next_ == b.next_ && a.out_ == b.out_;
  }
  friend bool operator!=(const MealyMachine& a, const MealyMachine& b) { return !(a == b); }

 private:
  std::string name_;
  std::vector<std::string> state_names_;
  std::vector<std::string> letter_names_;
  std::vector<State> next_;  // state * num_letters + letter
  std::vector<Letter> out_;  // state * num_letters + letter
  std::unordered_map<std::string, State> state_index_;
  std::unordered_map<std::string, Letter> letter_index_;
};

struct MachineDescription {
  struct Transition {
    std::string from;
    std::string input;
    std::string to;
    std::string output;
  };
  std::string name = "m";
  std::vector<std::string> states;    // declaration order
  std::vector<std::string> alphabet;  // declaration order
  std::vector<Transition> transitions;
};

/// Validates a description into a machine: every (state, letter) pair must
/// carry exactly one transition and every referenced id must be declared.
inline MealyMachine build_machine(const MachineDescription& desc) {
  std::unordered_map<std::string, State> states;
  std::unordered_map<std::string, Letter> letters;
  for (const auto& q : desc.states) {
    if (!states.emplace(q, static_cast<State>(states.size())).second)
      throw MealyError("duplicate state id '" + q + "'");
  }
  for (const auto& a : desc.alphabet) {
    if (!letters.emplace(a, static_cast<Letter>(letters.size())).second)
      throw MealyError("duplicate letter id '" + a + "'");
  }
  if (desc.states.empty()) throw MealyError("a machine needs at least one state");
  if (desc.alphabet.empty()) throw MealyError("a machine needs at least one letter");

  const std::size_t nl = desc.alphabet.size();
  constexpr State unset = static_cast<State>(-1);
  std::vector<State> next(desc.states.size() * nl, unset);
  std::vector<Letter> out(desc.states.size() * nl, 0);

  for (const auto& t : desc.transitions) {
    auto from = states.find(t.from);
    if (from == states.end()) throw UnknownSymbol(t.from);
    auto input = letters.find(t.input);
    if (input == letters.end()) throw UnknownSymbol(t.input);
    auto to = states.find(t.to);
    if (to == states.end()) throw UnknownSymbol(t.to);
    auto output = letters.find(t.output);
    if (output == letters.end()) throw UnknownSymbol(t.output);
    const std::size_t slot = from->second * nl + input->second;
    if (next[slot] != unset) throw DuplicateTransition(t.from, t.input);
    next[slot] = to->second;
    out[slot] = output->second;
  }
  for (std::size_t x = 0; x < desc.states.size(); ++x)
    for (std::size_t i = 0; i < nl; ++i)
      if (next[x * nl + i] == unset) throw MissingTransition(desc.states[x], desc.alphabet[i]);

  return MealyMachine(desc.name, desc.states, desc.alphabet, std::move(next), std::move(out));
}

/// Exchanges the roles of states and letters:
/// x --(i|j)--> y in m becomes i --(x|y)--> j in dual(m).
inline MealyMachine dual(const MealyMachine& m) {
  const std::size_t nq = m.num_states();
  const std::size_t nl = m.num_letters();
  std::vector<State> next(nl * nq);
  std::vector<Letter> out(nl * nq);
  for (Letter i = 0; i < nl; ++i) {
    for (State x = 0; x < nq; ++x) {
      next[i * nq + x] = m.out(x, i);
      out[i * nq + x] = m.next(x, i);
    }
  }
  std::string name = m.name();
  if (name.starts_with("dual(") && name.ends_with(")"))
    name = name.substr(5, name.size() - 6);
  else
    name = "dual(" + name + ")";
  return MealyMachine(std::move(name), m.letter_names(), m.state_names(), std::move(next),
                      std::move(out));
}

/// Swaps input and output on every transition; states are renamed with a
/// `^-1` suffix. Defined only when every state permutes the alphabet.
inline MealyMachine inverse(const MealyMachine& m) {
  const std::size_t nq = m.num_states();
  const std::size_t nl = m.num_letters();
  std::vector<State> next(nq * nl);
  std::vector<Letter> out(nq * nl);
  std::vector<bool> seen(nl);
  for (State x = 0; x < nq; ++x) {
    std::fill(seen.begin(), seen.end(), false);
    for (Letter i = 0; i < nl; ++i) {
      const Letter j = m.out(x, i);
      if (seen[j]) throw NotInvertible(m.state_name(x));
      seen[j] = true;
      next[x * nl + j] = m.next(x, i);
      out[x * nl + j] = i;
    }
  }
  std::vector<std::string> names;
  names.reserve(nq);
  for (State x = 0; x < nq; ++x) names.push_back(m.state_name(x) + "^-1");
  return MealyMachine("inverse(" + m.name() + ")", std::move(names), m.letter_names(),
                      std::move(next), std::move(out));
}

/// Side-by-side union of two machines over the same alphabet. Colliding
/// state ids from the second machine get a `'` suffix.
inline MealyMachine disjoint_union(const MealyMachine& a, const MealyMachine& b) {
  if (a.letter_names() != b.letter_names()) throw AlphabetMismatch();
  const std::size_t nl = a.num_letters();
  std::vector<std::string> names = a.state_names();
  std::unordered_map<std::string, State> taken;
  for (const auto& n : names) taken.emplace(n, 0);
  for (State y = 0; y < b.num_states(); ++y) {
    std::string n = b.state_name(y);
    while (taken.count(n)) n += "'";
    taken.emplace(n, 0);
    names.push_back(std::move(n));
  }
  std::vector<State> next((a.num_states() + b.num_states()) * nl);
  std::vector<Letter> out(next.size());
  for (State x = 0; x < a.num_states(); ++x) {
    for (Letter i = 0; i < nl; ++i) {
      next[x * nl + i] = a.next(x, i);
      out[x * nl + i] = a.out(x, i);
    }
  }
  const State shift = static_cast<State>(a.num_states());
  for (State y = 0; y < b.num_states(); ++y) {
    for (Letter i = 0; i < nl; ++i) {
      next[(shift + y) * nl + i] = shift + b.next(y, i);
      out[(shift + y) * nl + i] = b.out(y, i);
    }
  }
  return MealyMachine("union(" + a.name() + "," + b.name() + ")", std::move(names),
                      a.letter_names(), std::move(next), std::move(out));
}

/// Product machine on pairs: the first factor reads the input, the second
/// reads what the first produced:
/// (x,y) --(i | rho'_y(rho_x(i)))--> (delta_i(x), delta'_{rho_x(i)}(y)).
inline MealyMachine product(const MealyMachine& a, const MealyMachine& b) {
  if (a.letter_names() != b.letter_names()) throw AlphabetMismatch();
  const std::size_t nl = a.num_letters();
  const std::size_t nb = b.num_states();
  std::vector<std::string> names;
  names.reserve(a.num_states() * nb);
  for (State x = 0; x < a.num_states(); ++x)
    for (State y = 0; y < nb; ++y)
      names.push_back("(" + a.state_name(x) + "," + b.state_name(y) + ")");
  std::vector<State> next(names.size() * nl);
  std::vector<Letter> out(names.size() * nl);
  for (State x = 0; x < a.num_states(); ++x) {
    for (State y = 0; y < nb; ++y) {
      const std::size_t p = x * nb + y;
      for (Letter i = 0; i < nl; ++i) {
        const Letter mid = a.out(x, i);
        next[p * nl + i] = static_cast<State>(a.next(x, i) * nb + b.next(y, mid));
        out[p * nl + i] = b.out(y, mid);
      }
    }
  }
  return MealyMachine("product(" + a.name() + "," + b.name() + ")", std::move(names),
                      a.letter_names(), std::move(next), std::move(out));
}

namespace detail {
inline void check_state_word(const MealyMachine& m, const StateWord& u) {
  for (State x : u)
    if (x >= m.num_states()) throw MealyError("state index out of range");
}
inline void check_letter_word(const MealyMachine& m, const LetterWord& s) {
  for (Letter i : s)
    if (i >= m.num_letters()) throw MealyError("letter index out of range");
}
}  // namespace detail

/// One column of the cross-diagram: thread the letter i through every state
/// of u, advancing each. Returns delta_i(u) and the produced letter rho_u(i).
struct Advance {
  StateWord word;
  Letter output;
};
inline Advance advance(const MealyMachine& m, const StateWord& u, Letter i) {
  Advance r{u, i};
  for (State& x : r.word) {
    const Letter produced = m.out(x, r.output);
    x = m.next(x, r.output);
    r.output = produced;
  }
  return r;
}

/// Runs the action: returns rho_u(s) and the final state word delta_s(u).
/// Empty u copies the input through; empty s leaves u in place.
struct RunResult {
  LetterWord output;
  StateWord final_word;
};
inline RunResult run(const MealyMachine& m, const StateWord& u, const LetterWord& s) {
  detail::check_state_word(m, u);
  detail::check_letter_word(m, s);
  RunResult r;
  r.output.reserve(s.size());
  r.final_word = u;
  for (Letter i : s) {
    Letter c = i;
    for (State& x : r.final_word) {
      const Letter produced = m.out(x, c);
      x = m.next(x, c);
      c = produced;
    }
    r.output.push_back(c);
  }
  return r;
}

inline StateWord parse_state_word(const MealyMachine& m, std::string_view text) {
  StateWord u;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto x = m.state_index(tok);
    if (!x) throw UnknownSymbol(tok);
    u.push_back(*x);
  }
  return u;
}

inline LetterWord parse_letter_word(const MealyMachine& m, std::string_view text) {
  LetterWord s;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto i = m.letter_index(tok);
    if (!i) throw UnknownSymbol(tok);
    s.push_back(*i);
  }
  return s;
}

inline std::string format_state_word(const MealyMachine& m, const StateWord& u) {
  std::string text;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (k) text += ' ';
    text += m.state_name(u[k]);
  }
  return text;
}

inline std::string format_letter_word(const MealyMachine& m, const LetterWord& s) {
  std::string text;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) text += ' ';
    text += m.letter_name(s[k]);
  }
  return text;
}

/// Equality up to renaming of states: same alphabet, same shape of both
/// transition tables. Used where constructions only retag state ids.
inline bool same_tables(const MealyMachine& a, const MealyMachine& b) {
  return a.num_states() == b.num_states() && a.letter_names() == b.letter_names() &&
         a.next_table() == b.next_table() && a.out_table() == b.out_table();
}

struct WordHash {
  std::size_t operator()(const StateWord& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (State x : w) h = (h ^ (x + 0x9e3779b9u + (h << 6) + (h >> 2))) * 1099511628211ull;
    return h;
  }
};

}  // namespace mealy
