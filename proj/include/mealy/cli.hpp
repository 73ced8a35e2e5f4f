#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mealy/mealy.hpp"

namespace mealy::cli {

using nlohmann::json;

// Exit-code contract: 0 a definite verdict, 3 completed with Unknown or a
// truncated result, 1 a failed precondition (e.g. a non-reversible machine
// where reversibility is required), 2 a parse or usage error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_precondition = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_unknown = 3;

namespace detail {

inline MealyMachine load_machine(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ParseError(0, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_machine(buffer.str());
}

inline json flags_json(const PropertyFlags& f) {
  return json{{"invertible", f.invertible},
              {"reversible", f.reversible},
              {"coreversible", f.coreversible},
              {"bireversible", f.bireversible}};
}

inline json block_json(const MealyMachine& m, const StateBlock& b) {
  json names = json::array();
  for (State x : b.states) names.push_back(m.state_name(x));
  return json{{"states", names}, {"strongly_connected", b.strongly_connected}};
}

inline json word_json(const MealyMachine& m, const StateWord& u) {
  json names = json::array();
  for (State x : u) names.push_back(m.state_name(x));
  return names;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline void print_flags(std::ostream& out, const PropertyFlags& f) {
  out << "invertible:   " << yes_no(f.invertible) << "\n"
      << "reversible:   " << yes_no(f.reversible) << "\n"
      << "coreversible: " << yes_no(f.coreversible) << "\n"
      << "bireversible: " << yes_no(f.bireversible) << "\n";
}

inline std::string block_text(const MealyMachine& m, const std::vector<State>& states) {
  std::string s = "{";
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (k) s += ", ";
    s += m.state_name(states[k]);
  }
  return s + "}";
}

}  // namespace detail

struct Options {
  std::string file;
  std::string file2;
  std::string key;
  std::string word;
  std::string dot_path;
  std::string machine_class = "any";
  bool with_inverse = false;
  bool as_json = false;
  std::size_t depth = 6;
  std::size_t max_level = 6;
  std::uint64_t max_power = 64;
  std::size_t budget = default_budget;
  std::size_t states = 2;
  std::size_t letters = 2;
  std::uint64_t seed = 0;
};

inline int cmd_check(const Options& opt, std::ostream& out) {
  const MealyMachine m = detail::load_machine(opt.file);
  const PropertyFlags f = classify(m);
  const StatePartition part = components(m);
  if (opt.as_json) {
    json blocks = json::array();
    for (const auto& b : part.blocks) blocks.push_back(detail::block_json(m, b));
    out << json{{"machine", m.name()},
                {"states", m.num_states()},
                {"letters", m.num_letters()},
                {"flags", detail::flags_json(f)},
                {"components", blocks}}
               .dump(2)
        << "\n";
    return exit_ok;
  }
  out << "machine: " << m.name() << " (" << m.num_states() << " states, " << m.num_letters()
      << " letters)\n";
  detail::print_flags(out, f);
  out << "components: " << part.blocks.size() << "\n";
  for (const auto& b : part.blocks)
    out << "  " << detail::block_text(m, b.states)
        << (b.strongly_connected ? " (strongly connected)" : " (not strongly connected)") << "\n";
  return exit_ok;
}

inline int cmd_certify(const Options& opt, std::ostream& out) {
  const MealyMachine m = detail::load_machine(opt.file);
  const TorsionFreeVerdict v = theorem1_certificate(m);
  if (opt.as_json) {
    json blocks = json::array();
    for (std::size_t k = 0; k < v.machine_components.blocks.size(); ++k) {
      json b = detail::block_json(m, v.machine_components.blocks[k]);
      b["flags"] = detail::flags_json(v.component_flags[k]);
      blocks.push_back(std::move(b));
    }
    out << json{{"machine", m.name()},
                {"outcome", v.certified() ? "certified" : "not-applicable"},
                {"failed_precondition", v.failed_precondition},
                {"flags", detail::flags_json(v.flags)},
                {"components", blocks},
                {"reasons", v.reasons}}
               .dump(2)
        << "\n";
  } else {
    out << "machine: " << m.name() << "\n";
    if (v.certified())
      out << "verdict: certified: the generated semigroup is torsion-free\n";
    else
      out << "verdict: not applicable: " << v.failed_precondition << "\n";
    for (const auto& r : v.reasons) out << "  - " << r << "\n";
  }
  return v.certified() ? exit_ok : exit_precondition;
}

inline int cmd_orbit_tree(const Options& opt, std::ostream& out) {
  const MealyMachine m = detail::load_machine(opt.file);
  const OrbitTree tree = orbit_tree(m, opt.depth, opt.budget);
  const SelfLiftable lift = self_liftable_paths(tree);
  if (!opt.dot_path.empty()) {
    std::ofstream dot(opt.dot_path);
    if (!dot) throw ParseError(0, "cannot write '" + opt.dot_path + "'");
    dot << emit_dot_orbit_tree(tree);
  }
  if (opt.as_json) {
    json nodes = json::array();
    for (std::size_t id = 0; id < tree.nodes.size(); ++id)
      nodes.push_back(json{{"id", id},
                           {"level", tree.nodes[id].level},
                           {"size", tree.nodes[id].size},
                           {"representative", detail::word_json(m, tree.nodes[id].representative)}});
    json edges = json::array();
    for (const auto& e : tree.edges)
      edges.push_back(json{{"parent", e.parent},
                           {"child", e.child},
                           {"label", e.label},
                           {"liftable", e.liftable_mark}});
    out << json{{"machine", m.name()},
                {"depth", tree.depth},
                {"truncated", tree.truncated},
                {"nodes", nodes},
                {"edges", edges},
                {"maximal_self_liftable_paths", lift.maximal_paths.size()}}
               .dump(2)
        << "\n";
  } else {
    out << "orbit tree of " << m.name() << ", depth " << tree.depth
        << (tree.truncated ? " (truncated by budget)" : "") << "\n";
    for (std::size_t level = 0; level < tree.levels.size(); ++level) {
      out << "level " << level << ": " << tree.levels[level].size() << " node(s), sizes";
      for (std::size_t id : tree.levels[level]) out << " " << tree.nodes[id].size;
      out << "\n";
    }
    out << "1-self-liftable maximal paths: " << lift.maximal_paths.size() << "\n";
  }
  return tree.truncated ? exit_unknown : exit_ok;
}

inline int cmd_order(const Options& opt, std::ostream& out) {
  MealyMachine m = detail::load_machine(opt.file);
  if (opt.with_inverse) m = disjoint_union(m, inverse(m));
  const StateWord u = parse_state_word(m, opt.word);
  if (u.empty()) throw ParseError(0, "empty word");
  const OrderResult r = order_probe(m, u, opt.max_power, opt.budget);
  if (opt.as_json) {
    json j{{"machine", m.name()},
           {"word", detail::word_json(m, u)},
           {"reasons", r.reasons}};
    switch (r.outcome) {
      case OrderResult::Outcome::Finite:
        j["outcome"] = "finite";
        j["index"] = r.index;
        j["period"] = r.period;
        j["is_identity_power"] = r.is_identity_power;
        break;
      case OrderResult::Outcome::InfiniteCertified:
        j["outcome"] = "infinite-certified";
        j["certificate_scope"] = r.scope == OrderResult::CertificateScope::BaseComponent
                                     ? "base-component"
                                     : "power-component";
        break;
      case OrderResult::Outcome::Unknown:
        j["outcome"] = "unknown";
        j["component_size_trace"] = r.component_size_trace;
        break;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "word: " << format_state_word(m, u) << "\n";
    switch (r.outcome) {
      case OrderResult::Outcome::Finite:
        out << "verdict: finite order: index " << r.index << ", period " << r.period
            << (r.is_identity_power ? " (some power acts as the identity)\n" : "\n");
        break;
      case OrderResult::Outcome::InfiniteCertified:
        out << "verdict: infinite order (certified)\n";
        break;
      case OrderResult::Outcome::Unknown: {
        out << "verdict: unknown; component sizes of the powers:";
        for (std::size_t s : r.component_size_trace) out << " " << s;
        out << "\n";
        break;
      }
    }
    for (const auto& reason : r.reasons) out << "  - " << reason << "\n";
  }
  return r.outcome == OrderResult::Outcome::Unknown ? exit_unknown : exit_ok;
}

inline int cmd_finite(const Options& opt, std::ostream& out) {
  const MealyMachine m = detail::load_machine(opt.file);
  const FinitenessVerdict v = finiteness_probe(m, opt.max_level, opt.budget);
  if (opt.as_json) {
    json j{{"machine", m.name()}, {"reasons", v.reasons}};
    switch (v.outcome) {
      case FinitenessVerdict::Outcome::Finite:
        j["outcome"] = "finite";
        j["cardinality"] = v.cardinality;
        break;
      case FinitenessVerdict::Outcome::InfiniteCertified:
        j["outcome"] = "infinite-certified";
        break;
      case FinitenessVerdict::Outcome::Unknown:
        j["outcome"] = "unknown";
        j["level_size_trace"] = v.level_size_trace;
        break;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "machine: " << m.name() << "\n";
    switch (v.outcome) {
      case FinitenessVerdict::Outcome::Finite:
        out << "verdict: finite semigroup with " << v.cardinality << " distinct action(s)\n";
        break;
      case FinitenessVerdict::Outcome::InfiniteCertified:
        out << "verdict: infinite semigroup (certified)\n";
        break;
      case FinitenessVerdict::Outcome::Unknown: {
        out << "verdict: unknown; maximal component size per level:";
        for (std::size_t s : v.level_size_trace) out << " " << s;
        out << "\n";
        break;
      }
    }
    for (const auto& reason : v.reasons) out << "  - " << reason << "\n";
  }
  return v.outcome == FinitenessVerdict::Outcome::Unknown ? exit_unknown : exit_ok;
}

inline int cmd_transitive(const Options& opt, std::ostream& out) {
  const MealyMachine m = detail::load_machine(opt.file);
  const TransitivityReport r = transitivity_probe(m, opt.depth, opt.budget);
  if (opt.as_json) {
    out << json{{"machine", m.name()},
                {"requested_depth", opt.depth},
                {"checked_depth", r.checked_depth},
                {"connected_at_every_level", r.connected_at_every_level}}
               .dump(2)
        << "\n";
  } else {
    out << "machine: " << m.name() << "\n"
        << "connected at every level through depth " << r.checked_depth << ": "
        << detail::yes_no(r.connected_at_every_level) << "\n";
  }
  // A split level is a definite "no" even when the budget stopped us early.
  if (!r.connected_at_every_level) return exit_ok;
  return r.checked_depth == opt.depth ? exit_ok : exit_unknown;
}

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mealy automaton toolkit: products, duals, orbit trees and "
               "certificates for automaton semigroups",
               "mealy"};
  app.require_subcommand(1);
  Options opt;

  auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", opt.as_json, "machine-readable output"); };
  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget", opt.budget, "cap on visited state words per closure");
  };

  CLI::App* check = app.add_subcommand("check", "print classification flags and components");
  check->add_option("FILE", opt.file)->required();
  add_json(check);

  CLI::App* certify = app.add_subcommand("certify", "torsion-freeness certificate");
  certify->add_option("FILE", opt.file)->required();
  add_json(certify);

  CLI::App* orbit = app.add_subcommand("orbit-tree", "labeled orbit tree of the powers");
  orbit->add_option("FILE", opt.file)->required();
  orbit->add_option("--depth", opt.depth, "levels to expand");
  orbit->add_option("--dot", opt.dot_path, "write DOT to this path");
  add_budget(orbit);
  add_json(orbit);

  CLI::App* order = app.add_subcommand("order", "probe the order of a word's action");
  order->add_option("FILE", opt.file)->required();
  order->add_option("--word", opt.word, "whitespace-separated state ids")->required();
  order->add_flag("--with-inverse", opt.with_inverse,
                  "act on the disjoint union with the inverse machine");
  order->add_option("--max-power", opt.max_power, "powers to scan for repetition");
  add_budget(order);
  add_json(order);

  CLI::App* finite = app.add_subcommand("finite", "probe finiteness of the generated semigroup");
  finite->add_option("FILE", opt.file)->required();
  finite->add_option("--max-level", opt.max_level, "levels of evidence when unknown");
  add_budget(finite);
  add_json(finite);

  CLI::App* transitive = app.add_subcommand("transitive", "check connectivity of all powers");
  transitive->add_option("FILE", opt.file)->required();
  transitive->add_option("--depth", opt.depth, "levels to check")->required();
  add_budget(transitive);
  add_json(transitive);

  CLI::App* dual_cmd = app.add_subcommand("dual", "print the dual machine");
  dual_cmd->add_option("FILE", opt.file)->required();

  CLI::App* product_cmd = app.add_subcommand("product", "print the product of two machines");
  product_cmd->add_option("FILE1", opt.file)->required();
  product_cmd->add_option("FILE2", opt.file2)->required();

  CLI::App* catalog_cmd = app.add_subcommand("catalog", "print a catalog machine");
  catalog_cmd->add_option("KEY", opt.key)->required();

  CLI::App* random_cmd = app.add_subcommand("random", "print a seed-deterministic random machine");
  random_cmd->add_option("--states", opt.states)->required();
  random_cmd->add_option("--letters", opt.letters)->required();
  random_cmd->add_option("--class", opt.machine_class)
      ->check(CLI::IsMember({"any", "invertible", "reversible", "inv-rev"}));
  random_cmd->add_option("--seed", opt.seed)->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return exit_usage;
  }

  try {
    if (check->parsed()) return cmd_check(opt, out);
    if (certify->parsed()) return cmd_certify(opt, out);
    if (orbit->parsed()) return cmd_orbit_tree(opt, out);
    if (order->parsed()) return cmd_order(opt, out);
    if (finite->parsed()) return cmd_finite(opt, out);
    if (transitive->parsed()) return cmd_transitive(opt, out);
    if (dual_cmd->parsed()) {
      out << serialize_machine(dual(detail::load_machine(opt.file)));
      return exit_ok;
    }
    if (product_cmd->parsed()) {
      out << serialize_machine(
          product(detail::load_machine(opt.file), detail::load_machine(opt.file2)));
      return exit_ok;
    }
    if (catalog_cmd->parsed()) {
      const CatalogEntry entry = catalog(opt.key);
      out << "# " << entry.provenance << "\n" << serialize_machine(entry.machine);
      return exit_ok;
    }
    if (random_cmd->parsed()) {
      MachineClass cls = MachineClass::Any;
      if (opt.machine_class == "invertible") cls = MachineClass::Invertible;
      if (opt.machine_class == "reversible") cls = MachineClass::Reversible;
      if (opt.machine_class == "inv-rev") cls = MachineClass::InvertibleReversible;
      out << serialize_machine(random_machine(opt.states, opt.letters, cls, opt.seed));
      return exit_ok;
    }
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const UnknownKey& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const UnknownSymbol& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const MissingTransition& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const DuplicateTransition& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const BudgetExceeded& e) {
    err << e.what() << "\n";
    return exit_unknown;
  } catch (const MealyError& e) {
    err << e.what() << "\n";
    return exit_precondition;
  }
  return exit_usage;
}

}  // namespace mealy::cli
