#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mealy/machine.hpp"
#include "mealy/orbit.hpp"
#include "mealy/structure.hpp"

namespace mealy {

namespace detail {

inline std::string block_names(const MealyMachine& m, const std::vector<State>& block) {
  std::string s = "{";
  for (std::size_t k = 0; k < block.size(); ++k) {
    if (k) s += ", ";
    s += m.state_name(block[k]);
  }
  return s + "}";
}

inline std::string flag_summary(const PropertyFlags& f) {
  std::string s;
  s += f.invertible ? "invertible" : "not invertible";
  s += f.reversible ? ", reversible" : ", not reversible";
  s += f.coreversible ? ", coreversible" : ", not coreversible";
  return s;
}

}  // namespace detail

/// Outcome of the torsion-freeness certificate: an invertible reversible
/// machine whose connected components are all non-coreversible generates a
/// semigroup whose only possible torsion element is the identity.
struct TorsionFreeVerdict {
  enum class Outcome { Certified, NotApplicable };
  Outcome outcome = Outcome::NotApplicable;
  PropertyFlags flags;
  StatePartition machine_components;
  std::vector<PropertyFlags> component_flags;  // aligned with machine_components.blocks
  std::string failed_precondition;             // empty when certified
  std::vector<std::string> reasons;

  bool certified() const { return outcome == Outcome::Certified; }
};

inline TorsionFreeVerdict theorem1_certificate(const MealyMachine& m) {
  TorsionFreeVerdict v;
  v.flags = classify(m);
  v.machine_components = components(m);
  for (const auto& block : v.machine_components.blocks)
    v.component_flags.push_back(classify(restrict_to(m, block.states)));

  if (!v.flags.invertible) {
    v.failed_precondition = "machine is not invertible";
  } else if (!v.flags.reversible) {
    v.failed_precondition = "machine is not reversible";
  } else {
    for (std::size_t k = 0; k < v.component_flags.size(); ++k) {
      if (v.component_flags[k].coreversible) {
        v.failed_precondition =
            "component " + detail::block_names(m, v.machine_components.blocks[k].states) +
            " is coreversible, hence bireversible";
        break;
      }
    }
  }

  for (std::size_t k = 0; k < v.component_flags.size(); ++k)
    v.reasons.push_back("component " +
                        detail::block_names(m, v.machine_components.blocks[k].states) + ": " +
                        detail::flag_summary(v.component_flags[k]));
  if (v.failed_precondition.empty()) {
    v.outcome = TorsionFreeVerdict::Outcome::Certified;
    v.reasons.insert(v.reasons.begin(),
                     "invertible and reversible with no coreversible component: every non-empty "
                     "word induces an action of infinite order");
  } else {
    v.outcome = TorsionFreeVerdict::Outcome::NotApplicable;
    v.reasons.insert(v.reasons.begin(), v.failed_precondition);
  }
  return v;
}

struct PowerRepetition {
  std::uint64_t index = 0;   // least p with rho_{u^p} = rho_{u^q}, p < q
  std::uint64_t period = 0;  // q - p
  bool identity_power = false;
  std::uint64_t identity_at = 0;  // least k with rho_{u^k} = id, when any
};

/// Scans rho_u, rho_{u^2}, ... for the first repeated action, comparing
/// canonical function forms. Returns nothing when no repeat shows up within
/// max_power steps. Budget caps every underlying closure.
inline std::optional<PowerRepetition> power_repetition(const MealyMachine& m, const StateWord& u,
                                                       std::uint64_t max_power,
                                                       std::size_t budget = default_budget) {
  if (u.empty()) throw std::invalid_argument("power_repetition needs a non-empty word");
  std::string identity_fp = "1";
  for (Letter i = 0; i < m.num_letters(); ++i)
    identity_fp += ",0:" + std::to_string(i);

  std::unordered_map<std::string, std::uint64_t> first_seen;
  PowerRepetition rep;
  StateWord power;
  for (std::uint64_t k = 1; k <= max_power; ++k) {
    power.insert(power.end(), u.begin(), u.end());
    std::string fp = function_fingerprint(m, power, budget);
    if (!rep.identity_power && fp == identity_fp) {
      rep.identity_power = true;
      rep.identity_at = k;
    }
    auto [it, fresh] = first_seen.emplace(std::move(fp), k);
    if (!fresh) {
      rep.index = it->second;
      rep.period = k - it->second;
      return rep;
    }
  }
  return std::nullopt;
}

/// Result of probing the order of the action rho_u.
struct OrderResult {
  enum class Outcome { Finite, InfiniteCertified, Unknown };
  /// What carried the infinite-order certificate: the component of a single
  /// state in the machine itself, or the component of a longer word inside
  /// the corresponding power.
  enum class CertificateScope { BaseComponent, PowerComponent };

  Outcome outcome = Outcome::Unknown;
  std::uint64_t index = 0;  // Finite: rho_{u^index} = rho_{u^{index+period}}, minimal
  std::uint64_t period = 0;
  bool is_identity_power = false;
  CertificateScope scope = CertificateScope::BaseComponent;
  std::vector<std::size_t> component_size_trace;  // Unknown: |component(u^n)| evidence
  std::vector<std::string> reasons;
};

inline constexpr std::size_t order_trace_depth = 6;

/// Three strata, first applicable wins: a structural certificate of infinite
/// order (the component of u in its power is connected, invertible,
/// reversible and not coreversible), then repetition detection among the
/// powers of u, then an honest Unknown carrying the component-size trace.
inline OrderResult order_probe(const MealyMachine& m, const StateWord& u,
                               std::uint64_t max_power = 64,
                               std::size_t budget = default_budget) {
  if (u.empty()) throw std::invalid_argument("order_probe needs a non-empty word");
  OrderResult r;
  const PropertyFlags flags = classify(m);

  if (flags.invertible && flags.reversible) {
    try {
      Component c = component_of_word(m, u, budget);
      MealyMachine cm = component_machine(m, c);
      const PropertyFlags cf = classify(cm);
      const bool connected = components(cm).blocks.size() == 1;
      if (connected && cf.invertible && cf.reversible && !cf.coreversible) {
        r.outcome = OrderResult::Outcome::InfiniteCertified;
        r.scope = u.size() == 1 ? OrderResult::CertificateScope::BaseComponent
                                : OrderResult::CertificateScope::PowerComponent;
        r.reasons.push_back("the component of the word (size " + std::to_string(c.size) +
                            " at level " + std::to_string(c.level) +
                            ") is connected, invertible, reversible and not coreversible; every "
                            "state of such a component induces an action of infinite order");
        return r;
      }
      r.reasons.push_back("component of the word is " + detail::flag_summary(cf) +
                          ": no structural certificate");
    } catch (const BudgetExceeded&) {
      r.reasons.push_back("component materialization exceeded the budget");
    }
  } else {
    r.reasons.push_back("machine is not invertible and reversible: no structural certificate");
  }

  try {
    if (auto rep = power_repetition(m, u, max_power, budget)) {
      r.outcome = OrderResult::Outcome::Finite;
      r.index = rep->index;
      r.period = rep->period;
      r.is_identity_power = rep->identity_power;
      r.reasons.push_back("powers repeat: index " + std::to_string(rep->index) + ", period " +
                          std::to_string(rep->period));
      if (rep->identity_power)
        r.reasons.push_back("power " + std::to_string(rep->identity_at) +
                            " acts as the identity");
      return r;
    }
    r.reasons.push_back("no repetition among the first " + std::to_string(max_power) +
                        " powers");
  } catch (const BudgetExceeded& e) {
    r.reasons.push_back(std::string("repetition scan aborted: ") + e.what());
  }

  r.outcome = OrderResult::Outcome::Unknown;
  if (flags.reversible) {
    StateWord power;
    try {
      for (std::size_t n = 1; n <= order_trace_depth; ++n) {
        power.insert(power.end(), u.begin(), u.end());
        r.component_size_trace.push_back(component_of_word(m, power, budget).size);
      }
    } catch (const BudgetExceeded&) {
      r.reasons.push_back("component-size trace truncated by the budget");
    }
  } else {
    r.reasons.push_back("component-size trace needs a reversible machine");
  }
  return r;
}

/// Result of probing whether the generated semigroup is finite.
struct FinitenessVerdict {
  enum class Outcome { Finite, InfiniteCertified, Unknown };
  Outcome outcome = Outcome::Unknown;
  std::uint64_t cardinality = 0;                // Finite: distinct rho_u, u non-empty
  std::vector<std::size_t> level_size_trace;    // Unknown: max component size per level
  std::vector<std::string> reasons;
};

/// Strata: the structural infinite-group certificate (invertible reversible
/// with a non-coreversible component), then closure of the set of distinct
/// actions under appending generators, then Unknown with the per-level
/// maximal component sizes.
inline FinitenessVerdict finiteness_probe(const MealyMachine& m, std::size_t max_level = 6,
                                          std::size_t budget = default_budget) {
  FinitenessVerdict v;
  const PropertyFlags flags = classify(m);

  if (flags.invertible && flags.reversible) {
    const StatePartition part = components(m);
    for (const auto& block : part.blocks) {
      const PropertyFlags cf = classify(restrict_to(m, block.states));
      if (!cf.coreversible) {
        v.outcome = FinitenessVerdict::Outcome::InfiniteCertified;
        v.reasons.push_back("component " + detail::block_names(m, block.states) +
                            " is invertible, reversible and not coreversible: the generated "
                            "group is infinite");
        v.reasons.push_back("a finite generated semigroup would give every generator finite "
                            "order and make the group finite; hence the semigroup is infinite");
        return v;
      }
    }
  }

  try {
    std::unordered_map<std::string, std::uint64_t> classes;
    std::vector<StateWord> frontier;
    for (State x = 0; x < m.num_states(); ++x) {
      StateWord w{x};
      if (classes.emplace(function_fingerprint(m, w, budget), classes.size()).second)
        frontier.push_back(std::move(w));
    }
    while (!frontier.empty()) {
      if (classes.size() > budget) throw BudgetExceeded(budget);
      std::vector<StateWord> grown;
      for (const auto& w : frontier) {
        for (State x = 0; x < m.num_states(); ++x) {
          StateWord wx = w;
          wx.push_back(x);
          if (classes.emplace(function_fingerprint(m, wx, budget), classes.size()).second)
            grown.push_back(std::move(wx));
        }
      }
      frontier = std::move(grown);
    }
    v.outcome = FinitenessVerdict::Outcome::Finite;
    v.cardinality = classes.size();
    v.reasons.push_back("the set of distinct actions closed under appending generators");
    return v;
  } catch (const BudgetExceeded&) {
    v.reasons.push_back("action closure exceeded the budget");
  }

  // Per-level evidence: maximal component size of each power, by union-find
  // over all words of that length. Works whether or not m is reversible.
  v.outcome = FinitenessVerdict::Outcome::Unknown;
  const std::size_t nq = m.num_states();
  std::size_t words = 1;
  for (std::size_t n = 1; n <= max_level; ++n) {
    if (words > budget / nq) {
      v.reasons.push_back("level trace stops at level " + std::to_string(n - 1) +
                          ": the next level exceeds the budget");
      break;
    }
    words *= nq;
    std::vector<std::size_t> root(words);
    for (std::size_t w = 0; w < words; ++w) root[w] = w;
    auto find = [&](std::size_t w) {
      while (root[w] != w) {
        root[w] = root[root[w]];
        w = root[w];
      }
      return w;
    };
    StateWord word(n);
    for (std::size_t w = 0; w < words; ++w) {
      std::size_t rest = w;
      for (std::size_t k = 0; k < n; ++k) {
        word[k] = static_cast<State>(rest % nq);
        rest /= nq;
      }
      for (Letter i = 0; i < m.num_letters(); ++i) {
        const Advance a = advance(m, word, i);
        std::size_t succ = 0;
        for (std::size_t k = n; k-- > 0;) succ = succ * nq + a.word[k];
        const std::size_t ra = find(w), rb = find(succ);
        if (ra != rb) root[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
    std::vector<std::size_t> count(words, 0);
    std::size_t largest = 0;
    for (std::size_t w = 0; w < words; ++w) largest = std::max(largest, ++count[find(w)]);
    v.level_size_trace.push_back(largest);
  }
  v.reasons.push_back("no certificate applies and the action closure did not terminate");
  return v;
}

struct TransitivityReport {
  std::size_t checked_depth = 0;
  bool connected_at_every_level = false;
};

/// Checks that every power up to `depth` is connected, i.e. the orbit tree
/// has exactly one node per level. When the budget truncates the tree the
/// report covers the levels actually expanded.
inline TransitivityReport transitivity_probe(const MealyMachine& m, std::size_t depth,
                                             std::size_t budget = default_budget) {
  const OrbitTree tree = orbit_tree(m, depth, budget);
  TransitivityReport r;
  r.checked_depth = tree.depth;
  r.connected_at_every_level = true;
  for (const auto& level : tree.levels)
    if (level.size() != 1) r.connected_at_every_level = false;
  return r;
}

}  // namespace mealy
