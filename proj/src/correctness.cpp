#include "smll/correctness.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>

namespace smll {

namespace {

// Undirected view of a 0-graph at drawing granularity: each sync port is
// its own node, adjacent ports joined by connector arcs.
struct SwitchGraph {
  struct NodeRef {
    LinkId link;
    int square;  // -1 for non-sync links
    bool operator==(const NodeRef&) const = default;
    bool operator<(const NodeRef& o) const {
      return std::tie(link, square) < std::tie(o.link, o.square);
    }
  };
  struct Arc {
    NodeRef a, b;
    EdgeId edge;       // -1 for connectors
    bool premissOfPar; // endpoint b is a premiss port of a par link
    LinkId outEdgeOf;  // sync link this typed edge is an out-edge of, or -1
  };
  std::vector<Arc> arcs;
  std::map<NodeRef, std::vector<int>> incident;

  void add_arc(Arc a) {
    int id = (int)arcs.size();
    arcs.push_back(a);
    incident[a.a].push_back(id);
    incident[a.b].push_back(id);
  }
};

SwitchGraph build_switch_graph(const Net& z) {
  SwitchGraph g;
  auto node_at = [&](PortRef p, bool conclusionSide) -> SwitchGraph::NodeRef {
    const Link& lk = z.link(p.link);
    if (lk.sort == LinkSort::Sync) return {p.link, p.port};
    (void)conclusionSide;
    return {p.link, -1};
  };
  for (EdgeId e : z.live_edges()) {
    const Edge& ed = z.edge(e);
    if (!ed.src || !ed.dst) continue;  // pending edges have degree 1
    SwitchGraph::Arc a;
    a.a = node_at(*ed.src, true);
    a.b = node_at(*ed.dst, false);
    a.edge = e;
    a.premissOfPar = z.link(ed.dst->link).sort == LinkSort::Par;
    a.outEdgeOf = -1;
    Polarity pol = polarity_of(ed.type);
    if (z.link(ed.src->link).sort == LinkSort::Sync && pol == Polarity::Positive)
      a.outEdgeOf = ed.src->link;  // positive conclusion
    if (z.link(ed.dst->link).sort == LinkSort::Sync && pol == Polarity::Negative)
      a.outEdgeOf = ed.dst->link;  // negative premiss
    g.add_arc(a);
  }
  for (LinkId l : z.live_links()) {
    const Link& lk = z.link(l);
    if (lk.sort != LinkSort::Sync) continue;
    for (int i = 0; i + 1 < (int)lk.premisses.size(); i++)
      g.add_arc({{l, i}, {l, i + 1}, -1, false, -1});
  }
  return g;
}

struct CycleSearch {
  const SwitchGraph& g;
  std::set<SwitchGraph::NodeRef> usedNodes;
  std::set<int> usedArcs;
  std::map<LinkId, int> parPremissAt;  // par link -> premiss arcs used there
  std::map<LinkId, int> syncOutUsed;
  std::vector<std::pair<int, bool>> path;  // (arc id, traversed a->b)
  int rootArc = -1;

  bool take_arc(int id) const {
    const auto& a = g.arcs[id];
    auto out = syncOutUsed.find(a.outEdgeOf);
    if (a.outEdgeOf >= 0 && out != syncOutUsed.end() && out->second >= 1) return false;
    if (a.premissOfPar) {
      auto par = parPremissAt.find(a.b.link);
      if (par != parPremissAt.end() && par->second >= 1) return false;
    }
    return true;
  }

  void commit(int id) {
    const auto& a = g.arcs[id];
    usedArcs.insert(id);
    if (a.outEdgeOf >= 0) syncOutUsed[a.outEdgeOf]++;
    if (a.premissOfPar) parPremissAt[a.b.link]++;
  }
  void uncommit(int id) {
    const auto& a = g.arcs[id];
    usedArcs.erase(id);
    if (a.outEdgeOf >= 0) syncOutUsed[a.outEdgeOf]--;
    if (a.premissOfPar) parPremissAt[a.b.link]--;
  }

  // find a simple path from cur to target avoiding used nodes
  bool dfs(SwitchGraph::NodeRef cur, SwitchGraph::NodeRef target) {
    auto it = g.incident.find(cur);
    if (it == g.incident.end()) return false;
    for (int id : it->second) {
      if (usedArcs.count(id) || id < rootArc) continue;
      const auto& a = g.arcs[id];
      SwitchGraph::NodeRef next = (a.a == cur) ? a.b : a.a;
      if (!take_arc(id)) continue;
      if (next == target) {
        commit(id);
        path.push_back({id, a.a == cur});
        return true;  // closed; par/sync checks were arc-local and done
      }
      if (usedNodes.count(next)) continue;
      commit(id);
      usedNodes.insert(next);
      path.push_back({id, a.a == cur});
      if (dfs(next, target)) return true;
      path.pop_back();
      usedNodes.erase(next);
      uncommit(id);
    }
    return false;
  }
};

}  // namespace

SwitchingWitness find_switching_cycle(const Net& n) {
  Net z = zero_graph(n);
  SwitchGraph g = build_switch_graph(z);
  for (int root = 0; root < (int)g.arcs.size(); root++) {
    CycleSearch s{g, {}, {}, {}, {}, {}, root};
    const auto& a = g.arcs[root];
    if (a.a == a.b) {
      // degenerate self-loop (cannot arise from the link alphabet)
      continue;
    }
    s.commit(root);
    s.usedNodes.insert(a.a);
    s.usedNodes.insert(a.b);
    s.path.push_back({root, true});
    if (s.dfs(a.b, a.a)) {
      SwitchingWitness w;
      for (auto& [id, fwd] : s.path) {
        if (g.arcs[id].edge < 0) continue;
        w.cycle.push_back({g.arcs[id].edge, fwd});
      }
      return w;
    }
  }
  return {};
}

bool replay_witness(const Net& n, const SwitchingWitness& w) {
  if (w.empty()) return false;
  Net z = zero_graph(n);
  std::set<EdgeId> seen;
  std::map<LinkId, int> parUse, syncOut;
  for (auto& st : w.cycle) {
    if (!z.live_edge(st.edge)) return false;
    if (!seen.insert(st.edge).second) return false;
    const Edge& ed = z.edge(st.edge);
    if (!ed.src || !ed.dst) return false;
    if (z.link(ed.dst->link).sort == LinkSort::Par) parUse[ed.dst->link]++;
    Polarity pol = polarity_of(ed.type);
    if (z.link(ed.src->link).sort == LinkSort::Sync && pol == Polarity::Positive)
      syncOut[ed.src->link]++;
    if (z.link(ed.dst->link).sort == LinkSort::Sync && pol == Polarity::Negative)
      syncOut[ed.dst->link]++;
  }
  for (auto& pc : parUse)
    if (pc.second > 1) return false;
  for (auto& pc : syncOut)
    if (pc.second > 1) return false;
  // consecutive steps must share a link
  auto links_of = [&](const SwitchingWitness::Step& st) {
    const Edge& ed = z.edge(st.edge);
    return std::pair<LinkId, LinkId>{ed.src->link, ed.dst->link};
  };
  for (size_t i = 0; i < w.cycle.size(); i++) {
    auto [a1, a2] = links_of(w.cycle[i]);
    auto [b1, b2] = links_of(w.cycle[(i + 1) % w.cycle.size()]);
    if (a1 != b1 && a1 != b2 && a2 != b1 && a2 != b2) return false;
  }
  return true;
}

bool is_correct(const Net& n) {
  if (n.correct_memo >= 0) return n.correct_memo == 1;
  bool ok = find_switching_cycle(n).empty();
  if (ok) {
    for (auto& [bot, contents] : n.boxes) {
      if (n.depth_of(bot) != 0) continue;  // handled by the recursion
      for (int i = 0; i < (int)contents.size() && ok; i++)
        ok = is_correct(extract_content(n, bot, i));
      if (!ok) break;
    }
  }
  n.correct_memo = ok ? 1 : 0;
  return ok;
}

std::vector<std::pair<LinkId, LinkId>> PolarizedOrder::pairs() const {
  std::vector<std::pair<LinkId, LinkId>> out;
  for (auto& [l, bs] : before)
    for (LinkId b : bs) out.push_back({b, l});
  return out;
}

PolarizedOrder polarized_order(const Net& n) {
  // arcs over depth-0 links: positive edges point source->target, negative
  // ones target->source
  std::map<LinkId, std::vector<LinkId>> succ;
  std::set<LinkId> verts;
  for (LinkId l : n.live_links())
    if (n.depth_of(l) == 0) verts.insert(l);
  for (EdgeId e : n.live_edges()) {
    const Edge& ed = n.edge(e);
    if (!ed.src || !ed.dst) continue;
    if (!verts.count(ed.src->link) || !verts.count(ed.dst->link)) continue;
    Polarity pol = polarity_of(ed.type);
    if (pol == Polarity::Positive)
      succ[ed.src->link].push_back(ed.dst->link);
    else if (pol == Polarity::Negative)
      succ[ed.dst->link].push_back(ed.src->link);
  }

  PolarizedOrder out;
  // reachability via DFS from each vertex
  for (LinkId v : verts) {
    std::set<LinkId> reach;
    std::deque<LinkId> todo(succ[v].begin(), succ[v].end());
    while (!todo.empty()) {
      LinkId u = todo.front();
      todo.pop_front();
      if (!reach.insert(u).second) continue;
      for (LinkId w : succ[u]) todo.push_back(w);
    }
    if (reach.count(v)) throw CycleDetected("polarized cycle through link " + std::to_string(v));
    for (LinkId u : reach) out.before[u].insert(v);
  }

  // layering: level = longest incoming polarized chain
  std::map<LinkId, int> level;
  int maxLevel = 0;
  for (LinkId v : verts) level[v] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [u, vs] : succ)
      for (LinkId v : vs)
        if (level[v] < level[u] + 1) {
          level[v] = level[u] + 1;
          maxLevel = std::max(maxLevel, level[v]);
          changed = true;
        }
  }
  out.layers.assign(maxLevel + 1, {});
  for (LinkId v : verts) out.layers[level[v]].push_back(v);
  return out;
}

std::pair<EdgeId, std::vector<EdgeId>> attach_closing_net(Net& n, const Formula& a) {
  using K = Formula::Kind;
  std::vector<EdgeId> gamma;
  std::function<EdgeId(const Formula&)> build = [&](const Formula& f) -> EdgeId {
    switch (f.kind()) {
      case K::One: {
        LinkId l = add_link(n, LinkSort::One);
        return add_conclusion_edge(n, l, Formula::one());
      }
      case K::Bot:
      case K::Var:
      case K::NegVar: {
        LinkId l = add_link(n, LinkSort::Ax);
        EdgeId dual = add_conclusion_edge(n, l, negate_formula(f));
        EdgeId main = add_conclusion_edge(n, l, f);
        gamma.push_back(dual);
        return main;
      }
      case K::Tensor: {
        EdgeId lm = build(f.left());
        EdgeId rm = build(f.right());
        LinkId t = add_link(n, LinkSort::Tensor);
        attach_premiss(n, t, lm);
        attach_premiss(n, t, rm);
        return add_conclusion_edge(n, t, f);
      }
      case K::Par: {
        EdgeId lm = build(f.left());
        EdgeId rm = build(f.right());
        LinkId p = add_link(n, LinkSort::Par);
        attach_premiss(n, p, lm);
        attach_premiss(n, p, rm);
        return add_conclusion_edge(n, p, f);
      }
    }
    throw std::logic_error("attach_closing_net: bad kind");
  };
  EdgeId main = build(a);
  return {main, gamma};
}

Net closure(const Net& n) {
  Net out = n;
  out.correct_memo = -1;
  std::vector<EdgeId> newConclusions;
  std::vector<EdgeId> appended;
  for (EdgeId e : n.conclusions) {
    if (!contains_bot(out.edge(e).type)) {
      newConclusions.push_back(e);
      continue;
    }
    auto [main, gamma] = attach_closing_net(out, negate_formula(out.edge(e).type));
    LinkId c = add_link(out, LinkSort::Cut);
    attach_premiss(out, c, e);
    attach_premiss(out, c, main);
    for (EdgeId g : gamma) appended.push_back(g);
  }
  for (EdgeId g : appended) newConclusions.push_back(g);
  out.conclusions = newConclusions;
  return out;
}

}  // namespace smll
