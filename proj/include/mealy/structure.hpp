#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "mealy/machine.hpp"

namespace mealy {

struct PropertyFlags {
  bool invertible = false;    // every rho_x permutes the alphabet
  bool reversible = false;    // every delta_i permutes the states
  bool coreversible = false;  // no two states produce the same letter into the same state
  bool bireversible = false;  // conjunction of the three
  friend bool operator==(const PropertyFlags&, const PropertyFlags&) = default;
};

inline PropertyFlags classify(const MealyMachine& m) {
  const std::size_t nq = m.num_states();
  const std::size_t nl = m.num_letters();
  PropertyFlags f;

  f.invertible = true;
  std::vector<bool> seen_letter(nl);
  for (State x = 0; x < nq && f.invertible; ++x) {
    std::fill(seen_letter.begin(), seen_letter.end(), false);
    for (Letter i = 0; i < nl; ++i) {
      const Letter j = m.out(x, i);
      if (seen_letter[j]) {
        f.invertible = false;
        break;
      }
      seen_letter[j] = true;
    }
  }

  f.reversible = true;
  std::vector<bool> seen_state(nq);
  for (Letter i = 0; i < nl && f.reversible; ++i) {
    std::fill(seen_state.begin(), seen_state.end(), false);
    for (State x = 0; x < nq; ++x) {
      const State y = m.next(x, i);
      if (seen_state[y]) {
        f.reversible = false;
        break;
      }
      seen_state[y] = true;
    }
  }

  // Forbidden configuration: distinct sources reaching one target while
  // producing one letter. Same-source parallel transitions are allowed.
  f.coreversible = true;
  std::vector<State> incoming(nq * nl, static_cast<State>(-1));
  for (State x = 0; x < nq && f.coreversible; ++x) {
    for (Letter i = 0; i < nl; ++i) {
      const std::size_t slot = m.next(x, i) * nl + m.out(x, i);
      if (incoming[slot] != static_cast<State>(-1) && incoming[slot] != x) {
        f.coreversible = false;
        break;
      }
      incoming[slot] = x;
    }
  }

  f.bireversible = f.invertible && f.reversible && f.coreversible;
  return f;
}

struct StateBlock {
  std::vector<State> states;  // in declaration order
  bool strongly_connected = false;
};

struct StatePartition {
  enum class Kind { ConnectedComponents, NerodeClasses };
  Kind kind = Kind::ConnectedComponents;
  std::vector<StateBlock> blocks;  // ordered by least member
};

/// Weakly connected components of the transition digraph. Strong
/// connectivity is reported per block, never assumed; for reversible
/// machines every block comes out strongly connected.
inline StatePartition components(const MealyMachine& m) {
  const std::size_t nq = m.num_states();
  const std::size_t nl = m.num_letters();

  std::vector<State> root(nq);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](State x) {
    while (root[x] != x) {
      root[x] = root[root[x]];
      x = root[x];
    }
    return x;
  };
  for (State x = 0; x < nq; ++x)
    for (Letter i = 0; i < nl; ++i) {
      const State a = find(x), b = find(m.next(x, i));
      if (a != b) root[std::max(a, b)] = std::min(a, b);
    }

  std::map<State, std::vector<State>> by_root;
  for (State x = 0; x < nq; ++x) by_root[find(x)].push_back(x);

  StatePartition part;
  part.kind = StatePartition::Kind::ConnectedComponents;
  for (auto& [r, states] : by_root) {
    StateBlock block;
    block.states = std::move(states);

    // A block is strongly connected iff one member reaches all others and
    // is reached by all others.
    std::vector<bool> fwd(nq), bwd(nq);
    std::deque<State> queue{block.states.front()};
    fwd[block.states.front()] = true;
    while (!queue.empty()) {
      const State x = queue.front();
      queue.pop_front();
      for (Letter i = 0; i < nl; ++i) {
        const State y = m.next(x, i);
        if (!fwd[y]) {
          fwd[y] = true;
          queue.push_back(y);
        }
      }
    }
    std::vector<std::vector<State>> preds(nq);
    for (State x : block.states)
      for (Letter i = 0; i < nl; ++i) preds[m.next(x, i)].push_back(x);
    queue.push_back(block.states.front());
    bwd[block.states.front()] = true;
    while (!queue.empty()) {
      const State x = queue.front();
      queue.pop_front();
      for (State p : preds[x])
        if (!bwd[p]) {
          bwd[p] = true;
          queue.push_back(p);
        }
    }
    block.strongly_connected =
        std::all_of(block.states.begin(), block.states.end(), [&](State x) { return fwd[x] && bwd[x]; });
    part.blocks.push_back(std::move(block));
  }
  return part;
}

/// Sub-machine on a transition-closed set of states; the alphabet stays.
inline MealyMachine restrict_to(const MealyMachine& m, const std::vector<State>& block) {
  const std::size_t nl = m.num_letters();
  std::vector<State> order = block;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  detail::check_state_word(m, order);

  std::vector<State> renumber(m.num_states(), static_cast<State>(-1));
  for (std::size_t k = 0; k < order.size(); ++k) renumber[order[k]] = static_cast<State>(k);

  std::vector<std::string> names;
  names.reserve(order.size());
  std::vector<State> next(order.size() * nl);
  std::vector<Letter> out(order.size() * nl);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const State x = order[k];
    names.push_back(m.state_name(x));
    for (Letter i = 0; i < nl; ++i) {
      const State y = m.next(x, i);
      if (renumber[y] == static_cast<State>(-1))
        throw NotClosed(m.state_name(x), m.letter_name(i), m.state_name(y));
      next[k * nl + i] = renumber[y];
      out[k * nl + i] = m.out(x, i);
    }
  }
  return MealyMachine(m.name() + "|restricted", std::move(names), m.letter_names(),
                      std::move(next), std::move(out));
}

namespace detail {

/// Moore-style partition refinement on raw tables. Seeds with the output
/// rows and splits on successor classes until stable. Returns the class of
/// every state plus the class count; class ids follow least-member order.
inline std::pair<std::vector<State>, std::size_t> minimize_tables(std::size_t nq, std::size_t nl,
                                                                  const std::vector<State>& next,
                                                                  const std::vector<Letter>& out) {
  std::vector<State> cls(nq);
  {
    std::map<std::vector<Letter>, State> rows;
    for (std::size_t x = 0; x < nq; ++x) {
      std::vector<Letter> row(out.begin() + x * nl, out.begin() + (x + 1) * nl);
      cls[x] = rows.emplace(std::move(row), static_cast<State>(rows.size())).first->second;
    }
  }
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<State>, State> sigs;
    std::vector<State> refined(nq);
    for (std::size_t x = 0; x < nq; ++x) {
      std::vector<State> sig;
      sig.reserve(nl + 1);
      sig.push_back(cls[x]);
      for (std::size_t i = 0; i < nl; ++i) sig.push_back(cls[next[x * nl + i]]);
      refined[x] = sigs.emplace(std::move(sig), static_cast<State>(sigs.size())).first->second;
    }
    if (sigs.size() == count) break;
    count = sigs.size();
    cls = std::move(refined);
  }
  // Renumber classes by their least member so the result is canonical.
  std::vector<State> order(count, static_cast<State>(-1));
  State fresh = 0;
  for (std::size_t x = 0; x < nq; ++x)
    if (order[cls[x]] == static_cast<State>(-1)) order[cls[x]] = fresh++;
  for (auto& c : cls) c = order[c];
  return {std::move(cls), count};
}

}  // namespace detail

struct Minimized {
  MealyMachine machine;
  std::vector<State> class_of;  // original state -> state of `machine`
  StatePartition classes;       // the same map as a partition
};

/// Nerode minimization: states are merged exactly when they induce the same
/// production function. Merged states take the name of their least member.
inline Minimized minimize(const MealyMachine& m) {
  const std::size_t nq = m.num_states();
  const std::size_t nl = m.num_letters();
  auto [cls, count] = detail::minimize_tables(nq, nl, m.next_table(), m.out_table());

  std::vector<State> rep(count, static_cast<State>(-1));
  for (State x = 0; x < nq; ++x)
    if (rep[cls[x]] == static_cast<State>(-1)) rep[cls[x]] = x;

  std::vector<std::string> names;
  names.reserve(count);
  std::vector<State> next(count * nl);
  std::vector<Letter> out(count * nl);
  for (std::size_t c = 0; c < count; ++c) {
    names.push_back(m.state_name(rep[c]));
    for (Letter i = 0; i < nl; ++i) {
      next[c * nl + i] = cls[m.next(rep[c], i)];
      out[c * nl + i] = m.out(rep[c], i);
    }
  }

  StatePartition part;
  part.kind = StatePartition::Kind::NerodeClasses;
  part.blocks.resize(count);
  for (State x = 0; x < nq; ++x) part.blocks[cls[x]].states.push_back(x);

  return Minimized{MealyMachine("min(" + m.name() + ")", std::move(names), m.letter_names(),
                                std::move(next), std::move(out)),
                   std::move(cls), std::move(part)};
}

namespace detail {

/// The machine induced on the forward closure of `seeds` under the dual
/// actions u -> delta_i(u). Its states are state words; its production
/// functions are exactly the rho_u of the seeds and their residuals.
struct WordClosure {
  std::vector<StateWord> words;
  std::unordered_map<StateWord, State, WordHash> index;
  std::vector<State> next;   // word * num_letters + letter
  std::vector<Letter> out;   // word * num_letters + letter
  std::size_t num_letters = 0;
};

inline WordClosure close_words(const MealyMachine& m, const std::vector<StateWord>& seeds,
                               std::size_t budget) {
  WordClosure c;
  c.num_letters = m.num_letters();
  for (const auto& u : seeds) {
    check_state_word(m, u);
    if (c.index.emplace(u, static_cast<State>(c.words.size())).second) c.words.push_back(u);
  }
  for (std::size_t head = 0; head < c.words.size(); ++head) {
    if (c.words.size() > budget) throw BudgetExceeded(budget);
    const StateWord u = c.words[head];  // copy: words may reallocate below
    for (Letter i = 0; i < c.num_letters; ++i) {
      Advance a = advance(m, u, i);
      auto [it, fresh] = c.index.emplace(std::move(a.word), static_cast<State>(c.words.size()));
      if (fresh) c.words.push_back(it->first);
      c.next.push_back(it->second);
      c.out.push_back(a.output);
    }
  }
  return c;
}

}  // namespace detail

/// Decides rho_u = rho_v as maps on all words, by closing {u, v} under the
/// dual actions and minimizing the induced machine. `budget` caps the
/// closure size.
inline bool functions_equal(const MealyMachine& m, const StateWord& u, const StateWord& v,
                            std::size_t budget = default_budget) {
  if (u.empty() || v.empty()) throw std::invalid_argument("functions_equal needs non-empty words");
  if (u == v) return true;
  auto c = detail::close_words(m, {u, v}, budget);
  auto [cls, count] = detail::minimize_tables(c.words.size(), c.num_letters, c.next, c.out);
  return cls[c.index.at(u)] == cls[c.index.at(v)];
}

/// Decides rho_u = identity: every word reachable from u must copy every
/// letter through unchanged.
inline bool is_identity(const MealyMachine& m, const StateWord& u,
                        std::size_t budget = default_budget) {
  if (u.empty()) throw std::invalid_argument("is_identity needs a non-empty word");
  auto c = detail::close_words(m, {u}, budget);
  for (std::size_t w = 0; w < c.words.size(); ++w)
    for (Letter i = 0; i < c.num_letters; ++i)
      if (c.out[w * c.num_letters + i] != i) return false;
  return true;
}

/// A canonical form of the function rho_u: the minimized machine reachable
/// from u, numbered breadth-first from u's class. Two words induce the same
/// function exactly when their fingerprints coincide.
inline std::string function_fingerprint(const MealyMachine& m, const StateWord& u,
                                        std::size_t budget = default_budget) {
  if (u.empty()) throw std::invalid_argument("function_fingerprint needs a non-empty word");
  auto c = detail::close_words(m, {u}, budget);
  auto [cls, count] = detail::minimize_tables(c.words.size(), c.num_letters, c.next, c.out);

  std::vector<State> rep(count, static_cast<State>(-1));
  for (std::size_t w = 0; w < c.words.size(); ++w)
    if (rep[cls[w]] == static_cast<State>(-1)) rep[cls[w]] = static_cast<State>(w);

  std::vector<State> bfs_id(count, static_cast<State>(-1));
  std::vector<State> order;
  order.reserve(count);
  bfs_id[cls[c.index.at(u)]] = 0;
  order.push_back(cls[c.index.at(u)]);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const State w = rep[order[head]];
    for (Letter i = 0; i < c.num_letters; ++i) {
      const State succ = cls[c.next[w * c.num_letters + i]];
      if (bfs_id[succ] == static_cast<State>(-1)) {
        bfs_id[succ] = static_cast<State>(order.size());
        order.push_back(succ);
      }
    }
  }

  // Only classes reachable from u matter for the function it induces.
  std::string fp;
  fp.reserve(order.size() * c.num_letters * 8);
  fp += std::to_string(order.size());
  for (State cl : order) {
    const State w = rep[cl];
    for (Letter i = 0; i < c.num_letters; ++i) {
      fp += ',';
      fp += std::to_string(bfs_id[cls[c.next[w * c.num_letters + i]]]);
      fp += ':';
      fp += std::to_string(c.out[w * c.num_letters + i]);
    }
  }
  return fp;
}

}  // namespace mealy
