#pragma once

// s-t max-flow / min-cut on a residual graph with implicit terminals, using
// the dual search-tree augmenting-path strategy that performs well on grid
// graphs. This is the exact inner solver for submodular quadratic
// pseudo-boolean energies; the reduction lives in minimize_submodular below.

#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvecut/energy.hpp"
#include "curvecut/util.hpp"

namespace curvecut {

// Convention: parent_arc is the arc from a node to its tree parent, for both
// trees. On the source side flow runs parent -> node (residual on
// sister(parent_arc)); on the sink side it runs node -> parent (residual on
// parent_arc itself).
class FlowNetwork {
 public:
  explicit FlowNetwork(int num_nodes) : nodes_(static_cast<size_t>(num_nodes)) {
    if (num_nodes < 1) throw std::invalid_argument("flow network needs at least one node");
  }

  // Terminal capacities collapse into one signed residual per node:
  // terminal > 0 is residual from the source, < 0 residual to the sink.
  void add_terminal(int node, double source_cap, double sink_cap) {
    check_node(node);
    if (source_cap < 0.0 || sink_cap < 0.0)
      throw std::invalid_argument("terminal capacities must be non-negative");
    flow_ += source_cap < sink_cap ? source_cap : sink_cap;
    nodes_[static_cast<size_t>(node)].terminal += source_cap - sink_cap;
  }

  void add_edge(int from, int to, double cap, double rev_cap = 0.0) {
    check_node(from);
    check_node(to);
    if (from == to) throw std::invalid_argument("self loops are not allowed");
    if (cap < 0.0 || rev_cap < 0.0) throw std::invalid_argument("capacities must be non-negative");
    Node& u = nodes_[static_cast<size_t>(from)];
    Node& v = nodes_[static_cast<size_t>(to)];
    arcs_.push_back(Arc{to, u.first_arc, cap});
    u.first_arc = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back(Arc{from, v.first_arc, rev_cap});
    v.first_arc = static_cast<int>(arcs_.size()) - 1;
  }

  // Runs max-flow; returns the flow value. Afterwards source_side() reports
  // the minimum cut (free nodes fall on the sink side).
  double run() {
    init_trees();
    while (true) {
      int connector = grow();
      if (connector < 0) break;
      augment(connector);
      adopt();
    }
    return flow_;
  }

  bool source_side(int node) const {
    check_node(node);
    return nodes_[static_cast<size_t>(node)].tree == Tree::source;
  }

  // residual-state introspection (arc i is the i-th half of the add_edge pairs)
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  double arc_residual(int i) const { return arcs_.at(static_cast<size_t>(i)).r_cap; }
  double terminal_residual(int node) const {
    check_node(node);
    return nodes_[static_cast<size_t>(node)].terminal;
  }

 private:
  enum class Tree : std::uint8_t { free, source, sink };
  static constexpr int kNoArc = -1;
  static constexpr int kTerminalParent = -2;

  struct Arc {
    int head;
    int next;
    double r_cap;
  };
  struct Node {
    int first_arc = kNoArc;
    int parent_arc = kNoArc;
    double terminal = 0.0;
    Tree tree = Tree::free;
    std::uint32_t timestamp = 0;
    std::uint32_t dist = 0;
    bool active = false;
  };

  void check_node(int n) const {
    if (n < 0 || static_cast<size_t>(n) >= nodes_.size())
      throw std::out_of_range("flow network node index out of range");
  }

  static int sister(int arc) { return arc ^ 1; }
  Arc& arc(int i) { return arcs_[static_cast<size_t>(i)]; }
  Node& node(int i) { return nodes_[static_cast<size_t>(i)]; }
  int parent_of(int ni) { return arc(node(ni).parent_arc).head; }

  void activate(int ni) {
    Node& n = node(ni);
    if (!n.active) {
      n.active = true;
      active_.push_back(ni);
    }
  }

  void init_trees() {
    active_.clear();
    orphans_.clear();
    time_ = 0;
    for (size_t i = 0; i < nodes_.size(); ++i) {
      Node& n = nodes_[i];
      n.parent_arc = kNoArc;
      n.timestamp = 0;
      n.dist = 1;
      n.active = false;
      n.tree = Tree::free;
      if (n.terminal > 0.0) {
        n.tree = Tree::source;
        n.parent_arc = kTerminalParent;
        activate(static_cast<int>(i));
      } else if (n.terminal < 0.0) {
        n.tree = Tree::sink;
        n.parent_arc = kTerminalParent;
        activate(static_cast<int>(i));
      }
    }
  }

  // Grows both trees from active nodes; returns an arc oriented from the
  // source tree into the sink tree once they touch, or -1 if no path remains.
  int grow() {
    while (!active_.empty()) {
      int ni = active_.front();
      Node& n = node(ni);
      if (!n.active || n.tree == Tree::free) {
        n.active = false;
        active_.pop_front();
        continue;
      }
      for (int a = n.first_arc; a != kNoArc; a = arc(a).next) {
        int res_arc = n.tree == Tree::source ? a : sister(a);
        if (arc(res_arc).r_cap <= 0.0) continue;
        int hi = arc(a).head;
        Node& head = node(hi);
        if (head.tree == Tree::free) {
          head.tree = n.tree;
          head.parent_arc = sister(a);
          head.timestamp = n.timestamp;
          head.dist = n.dist + 1;
          activate(hi);
        } else if (head.tree != n.tree) {
          return n.tree == Tree::source ? a : sister(a);
        }
      }
      n.active = false;
      active_.pop_front();
    }
    return -1;
  }

  // Pushes the bottleneck along source-root .. connector .. sink-root and
  // queues nodes whose parent arc saturates as orphans.
  void augment(int connector) {
    double bottleneck = arc(connector).r_cap;
    for (int ni = arc(sister(connector)).head;;) {  // walk up the source tree
      Node& n = node(ni);
      if (n.parent_arc == kTerminalParent) {
        if (n.terminal < bottleneck) bottleneck = n.terminal;
        break;
      }
      double res = arc(sister(n.parent_arc)).r_cap;
      if (res < bottleneck) bottleneck = res;
      ni = parent_of(ni);
    }
    for (int ni = arc(connector).head;;) {  // walk down the sink tree
      Node& n = node(ni);
      if (n.parent_arc == kTerminalParent) {
        if (-n.terminal < bottleneck) bottleneck = -n.terminal;
        break;
      }
      double res = arc(n.parent_arc).r_cap;
      if (res < bottleneck) bottleneck = res;
      ni = parent_of(ni);
    }

    arc(connector).r_cap -= bottleneck;
    arc(sister(connector)).r_cap += bottleneck;
    for (int ni = arc(sister(connector)).head;;) {
      Node& n = node(ni);
      if (n.parent_arc == kTerminalParent) {
        n.terminal -= bottleneck;
        if (n.terminal <= 0.0) make_orphan(ni);
        break;
      }
      int pa = n.parent_arc;
      arc(sister(pa)).r_cap -= bottleneck;
      arc(pa).r_cap += bottleneck;
      int next = arc(pa).head;
      if (arc(sister(pa)).r_cap <= 0.0) make_orphan(ni);
      ni = next;
    }
    for (int ni = arc(connector).head;;) {
      Node& n = node(ni);
      if (n.parent_arc == kTerminalParent) {
        n.terminal += bottleneck;
        if (n.terminal >= 0.0) make_orphan(ni);
        break;
      }
      int pa = n.parent_arc;
      arc(pa).r_cap -= bottleneck;
      arc(sister(pa)).r_cap += bottleneck;
      int next = arc(pa).head;
      if (arc(pa).r_cap <= 0.0) make_orphan(ni);
      ni = next;
    }
    flow_ += bottleneck;
  }

  void make_orphan(int ni) {
    node(ni).parent_arc = kNoArc;
    orphans_.push_back(ni);
  }

  // True if `from` reaches a terminal through valid parents. Marks the path
  // with the current timestamp and exact distances on success.
  bool rooted(int from, std::uint32_t& dist_out) {
    std::uint32_t climbed = 0;
    int ni = from;
    while (true) {
      Node& n = node(ni);
      if (n.timestamp == time_) {
        dist_out = climbed + n.dist;
        break;
      }
      if (n.parent_arc == kTerminalParent) {
        n.timestamp = time_;
        n.dist = 1;
        dist_out = climbed + 1;
        break;
      }
      if (n.parent_arc == kNoArc) return false;
      ++climbed;
      ni = parent_of(ni);
    }
    std::uint32_t d = dist_out;
    ni = from;
    while (true) {
      Node& n = node(ni);
      if (n.timestamp == time_) break;
      n.timestamp = time_;
      n.dist = d--;
      ni = parent_of(ni);
    }
    return true;
  }

  void adopt() {
    while (!orphans_.empty()) {
      int ni = orphans_.front();
      orphans_.pop_front();
      Node& n = node(ni);
      if (n.tree == Tree::free) continue;
      ++time_;
      // candidate parent: same tree, residual toward this node, rooted
      int best_arc = kNoArc;
      std::uint32_t best_dist = std::numeric_limits<std::uint32_t>::max();
      for (int a = n.first_arc; a != kNoArc; a = arc(a).next) {
        int res_arc = n.tree == Tree::source ? sister(a) : a;
        if (arc(res_arc).r_cap <= 0.0) continue;
        int hi = arc(a).head;
        if (node(hi).tree != n.tree) continue;
        std::uint32_t dist = 0;
        if (!rooted(hi, dist)) continue;
        if (dist < best_dist) {
          best_dist = dist;
          best_arc = a;
        }
      }
      if (best_arc != kNoArc) {
        n.parent_arc = best_arc;
        n.timestamp = time_;
        n.dist = best_dist + 1;
        continue;
      }
      // no parent found: leave the tree, wake neighbors, orphan children
      for (int a = n.first_arc; a != kNoArc; a = arc(a).next) {
        int hi = arc(a).head;
        Node& head = node(hi);
        if (head.tree != n.tree) continue;
        int res_arc = n.tree == Tree::source ? sister(a) : a;
        if (arc(res_arc).r_cap > 0.0) activate(hi);
        if (head.parent_arc != kNoArc && head.parent_arc != kTerminalParent &&
            arc(head.parent_arc).head == ni) {
          make_orphan(hi);
        }
      }
      n.tree = Tree::free;
      n.active = false;
    }
  }

  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::deque<int> active_;
  std::deque<int> orphans_;
  double flow_ = 0.0;
  std::uint32_t time_ = 0;
};

struct SubmodularSolution {
  std::vector<std::uint8_t> labels;
  double energy = 0.0;
};

// Global minimization of a purely submodular energy via min-cut. Each
// pairwise term b*x_p*x_q with b <= 0 is reparameterized as a unary term on
// x_p plus a cut edge p -> q of capacity -b; unary terms become terminal
// capacities. Label 1 corresponds to the source side.
inline SubmodularSolution minimize_submodular(const QpbEnergy& qpb) {
  const int n = qpb.num_vars();
  std::vector<double> a = qpb.linear();
  FlowNetwork net(n);
  for (const PairTerm& t : qpb.pairwise()) {
    if (t.coeff > 0.0)
      throw SolverError("supermodular term present: pair (" + std::to_string(t.p) + "," +
                        std::to_string(t.q) + ") has coefficient " + std::to_string(t.coeff));
    if (t.coeff == 0.0) continue;
    a[static_cast<size_t>(t.p)] += t.coeff;
    net.add_edge(t.p, t.q, -t.coeff);
  }
  for (int p = 0; p < n; ++p) {
    double ap = a[static_cast<size_t>(p)];
    if (ap > 0.0)
      net.add_terminal(p, 0.0, ap);
    else if (ap < 0.0)
      net.add_terminal(p, -ap, 0.0);
  }
  net.run();
  SubmodularSolution sol;
  sol.labels.resize(static_cast<size_t>(n));
  for (int p = 0; p < n; ++p) sol.labels[static_cast<size_t>(p)] = net.source_side(p) ? 1 : 0;
  sol.energy = qpb.evaluate(sol.labels);
  return sol;
}

}  // namespace curvecut
