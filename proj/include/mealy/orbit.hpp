#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "mealy/machine.hpp"
#include "mealy/structure.hpp"

namespace mealy {

/// One connected component of a power of the machine: the orbit of a state
/// word under the dual actions u -> delta_i(u). Members are kept sorted, so
/// the representative is the lexicographically least word under the
/// machine's state order.
struct Component {
  std::size_t level = 0;
  std::size_t size = 0;
  StateWord representative;
  std::vector<StateWord> members;

  bool contains(const StateWord& w) const {
    return std::binary_search(members.begin(), members.end(), w);
  }
};

namespace detail {
inline void require_reversible(const MealyMachine& m) {
  const std::size_t nq = m.num_states();
  std::vector<bool> seen(nq);
  for (Letter i = 0; i < m.num_letters(); ++i) {
    std::fill(seen.begin(), seen.end(), false);
    for (State x = 0; x < nq; ++x) {
      const State y = m.next(x, i);
      if (seen[y]) throw NotReversible(m.letter_name(i));
      seen[y] = true;
    }
  }
}
}  // namespace detail

/// Orbit of u under all single-letter dual actions, by breadth-first
/// closure. For a reversible machine this is exactly the strongly connected
/// component of u in the |u|-th power.
inline Component component_of_word(const MealyMachine& m, const StateWord& u,
                                   std::size_t budget = default_budget) {
  detail::require_reversible(m);
  detail::check_state_word(m, u);
  Component c;
  c.level = u.size();
  std::unordered_set<StateWord, WordHash> seen{u};
  std::vector<StateWord> queue{u};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    if (queue.size() > budget) throw BudgetExceeded(budget);
    const StateWord w = queue[head];
    for (Letter i = 0; i < m.num_letters(); ++i) {
      Advance a = advance(m, w, i);
      if (seen.insert(a.word).second) queue.push_back(std::move(a.word));
    }
  }
  c.members = std::move(queue);
  std::sort(c.members.begin(), c.members.end());
  c.size = c.members.size();
  c.representative = c.members.front();
  return c;
}

/// Realizes a component as a machine of its own: states are the member
/// words, transitions are the dual actions, outputs are the threaded
/// letters. The production function of the state u is exactly rho_u.
inline MealyMachine component_machine(const MealyMachine& m, const Component& c) {
  const std::size_t nl = m.num_letters();
  std::vector<std::string> names;
  names.reserve(c.size);
  for (const auto& w : c.members) {
    std::string n;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k) n += '.';
      n += m.state_name(w[k]);
    }
    names.push_back(n.empty() ? "1" : std::move(n));
  }
  std::vector<State> next(c.size * nl);
  std::vector<Letter> out(c.size * nl);
  for (std::size_t k = 0; k < c.members.size(); ++k) {
    for (Letter i = 0; i < nl; ++i) {
      Advance a = advance(m, c.members[k], i);
      const auto it = std::lower_bound(c.members.begin(), c.members.end(), a.word);
      if (it == c.members.end() || *it != a.word)
        throw MealyError("component is not closed under the dual actions");
      next[k * nl + i] = static_cast<State>(it - c.members.begin());
      out[k * nl + i] = a.output;
    }
  }
  return MealyMachine("component(" + m.name() + ")", std::move(names), m.letter_names(),
                      std::move(next), std::move(out));
}

struct OrbitEdge {
  std::size_t parent = 0;  // node id
  std::size_t child = 0;   // node id
  std::size_t label = 0;   // size(child) / size(parent), an exact integer
  bool liftable_mark = false;
};

/// An initial path: adjacent edges starting at the root, no backtracking.
struct TreePath {
  std::vector<std::size_t> edges;  // edge ids, root edge first

  std::size_t length() const { return edges.size(); }
};

/// The labeled orbit tree: level-n nodes are the components of the n-th
/// power, an edge joins C to D when some u in C has a one-state extension
/// in D, and the label is the exact ratio of sizes.
struct OrbitTree {
  std::vector<Component> nodes;  // node id order: level by level
  std::vector<OrbitEdge> edges;
  std::vector<std::vector<std::size_t>> levels;  // node ids per level
  std::vector<std::size_t> parent_edge;          // per node; npos for the root
  std::size_t depth = 0;                         // deepest fully expanded level
  bool truncated = false;                        // budget ran out before `depth`

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  const Component& bottom_of(std::size_t edge_id) const { return nodes[edges[edge_id].child]; }
  const Component& top_of(std::size_t edge_id) const { return nodes[edges[edge_id].parent]; }
};

/// Is edge e liftable to edge f: must every member of bottom(e) end in a
/// member of bottom(f)? One member decides for all of them, so testing the
/// representative's suffix is exact.
inline bool is_liftable(const OrbitTree& tree, std::size_t e, std::size_t f) {
  const Component& below = tree.bottom_of(e);
  const Component& target = tree.bottom_of(f);
  if (target.level > below.level) throw LevelMismatch(below.level, target.level);
  StateWord suffix(below.representative.end() - target.level, below.representative.end());
  return target.contains(suffix);
}

struct SelfLiftable {
  std::vector<std::size_t> marked_edges;  // edges on some maximal path, ascending
  std::vector<TreePath> maximal_paths;
};

/// All maximal initial paths whose edges are each liftable to their
/// predecessor (the first edge carries no constraint), found by depth-first
/// extension. Every marked edge lies on at least one maximal path.
inline SelfLiftable self_liftable_paths(const OrbitTree& tree) {
  SelfLiftable result;
  std::vector<bool> marked(tree.edges.size());

  std::vector<std::vector<std::size_t>> children_edges(tree.nodes.size());
  for (std::size_t e = 0; e < tree.edges.size(); ++e)
    children_edges[tree.edges[e].parent].push_back(e);

  std::vector<std::size_t> path;
  auto extend = [&](auto&& self, std::size_t last_edge) -> void {
    path.push_back(last_edge);
    marked[last_edge] = true;
    bool extended = false;
    for (std::size_t g : children_edges[tree.edges[last_edge].child]) {
      if (is_liftable(tree, g, last_edge)) {
        extended = true;
        self(self, g);
      }
    }
    if (!extended) result.maximal_paths.push_back(TreePath{path});
    path.pop_back();
  };
  if (!tree.levels.empty())
    for (std::size_t e : children_edges[tree.levels[0].front()]) extend(extend, e);

  for (std::size_t e = 0; e < marked.size(); ++e)
    if (marked[e]) result.marked_edges.push_back(e);
  return result;
}

/// Expands the tree level by level to `depth`. Each level-n node is grown by
/// appending every state to its representative and closing the orbit; the
/// children partition all level-(n+1) extensions, so sizes at a full level
/// sum to |Q|^(n+1). If the budget runs out, the partial level is dropped
/// and the tree is returned truncated.
inline OrbitTree orbit_tree(const MealyMachine& m, std::size_t depth,
                            std::size_t budget = default_budget) {
  detail::require_reversible(m);
  OrbitTree tree;
  Component root;
  root.level = 0;
  root.size = 1;
  root.members = {StateWord{}};
  root.representative = StateWord{};
  tree.nodes.push_back(std::move(root));
  tree.levels.push_back({0});
  tree.parent_edge.push_back(OrbitTree::npos);

  for (std::size_t level = 0; level < depth; ++level) {
    std::vector<std::size_t> next_level;
    try {
      for (std::size_t parent_id : tree.levels[level]) {
        const Component& parent = tree.nodes[parent_id];
        std::unordered_set<StateWord, WordHash> covered;
        for (State x = 0; x < m.num_states(); ++x) {
          StateWord w = parent.representative;
          w.push_back(x);
          if (covered.count(w)) continue;
          Component child = component_of_word(m, w, budget);
          if (child.size % parent.size != 0) throw NonIntegerLabel(child.size, parent.size);
          for (const auto& member : child.members) covered.insert(member);
          const std::size_t child_id = tree.nodes.size();
          const std::size_t edge_id = tree.edges.size();
          tree.edges.push_back(OrbitEdge{parent_id, child_id, child.size / parent.size, false});
          tree.nodes.push_back(std::move(child));
          tree.parent_edge.push_back(edge_id);
          next_level.push_back(child_id);
        }
      }
    } catch (const BudgetExceeded&) {
      // Drop the partial level so every level present is complete.
      tree.parent_edge.resize(tree.parent_edge.size() - next_level.size());
      tree.nodes.resize(tree.nodes.size() - next_level.size());
      tree.edges.resize(tree.edges.size() - next_level.size());
      tree.truncated = true;
      break;
    }
    tree.levels.push_back(std::move(next_level));
  }
  tree.depth = tree.levels.size() - 1;

  for (std::size_t e : self_liftable_paths(tree).marked_edges) tree.edges[e].liftable_mark = true;
  return tree;
}

/// The unique initial path through the components of the prefixes of u.
inline TreePath path_of_word(const OrbitTree& tree, const StateWord& u) {
  if (u.size() > tree.depth) throw DepthExceeded(u.size(), tree.depth);
  TreePath path;
  for (std::size_t k = 1; k <= u.size(); ++k) {
    const StateWord prefix(u.begin(), u.begin() + k);
    std::size_t found = OrbitTree::npos;
    for (std::size_t id : tree.levels[k]) {
      if (tree.nodes[id].contains(prefix)) {
        found = id;
        break;
      }
    }
    if (found == OrbitTree::npos) throw MealyError("word is not covered by the tree");
    path.edges.push_back(tree.parent_edge[found]);
  }
  return path;
}

/// The path of x^omega, truncated at `depth` (defaults to the tree depth).
inline TreePath path_of_power(const OrbitTree& tree, State x,
                              std::size_t depth = std::numeric_limits<std::size_t>::max()) {
  if (depth == std::numeric_limits<std::size_t>::max()) depth = tree.depth;
  if (depth > tree.depth) throw DepthExceeded(depth, tree.depth);
  return path_of_word(tree, StateWord(depth, x));
}

}  // namespace mealy
