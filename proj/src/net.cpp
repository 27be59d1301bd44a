#include "smll/net.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace smll {

std::string to_string(LinkSort s) {
  switch (s) {
    case LinkSort::Ax: return "ax";
    case LinkSort::Cut: return "cut";
    case LinkSort::Tensor: return "tensor";
    case LinkSort::Par: return "par";
    case LinkSort::One: return "one";
    case LinkSort::Bot: return "bot";
    case LinkSort::Sync: return "sync";
  }
  return "?";
}

std::vector<LinkId> Net::live_links() const {
  std::vector<LinkId> out;
  for (int i = 0; i < (int)links.size(); i++)
    if (links[i]) out.push_back(i);
  return out;
}

std::vector<EdgeId> Net::live_edges() const {
  std::vector<EdgeId> out;
  for (int i = 0; i < (int)edges.size(); i++)
    if (edges[i]) out.push_back(i);
  return out;
}

int Net::depth_of(LinkId l) const {
  int d = 0;
  for (auto& [bot, contents] : boxes)
    for (auto& c : contents)
      if (std::find(c.begin(), c.end(), l) != c.end()) d++;
  return d;
}

int Net::depth() const {
  int d = 0;
  for (LinkId l : live_links()) d = std::max(d, depth_of(l));
  return d;
}

std::optional<std::pair<LinkId, int>> Net::enclosing_box(LinkId l) const {
  // the innermost enclosing box is the one with the deepest bot link
  std::optional<std::pair<LinkId, int>> best;
  int bestDepth = -1;
  for (auto& [bot, contents] : boxes)
    for (int i = 0; i < (int)contents.size(); i++)
      if (std::find(contents[i].begin(), contents[i].end(), l) != contents[i].end()) {
        int d = depth_of(bot);
        if (d > bestDepth) {
          bestDepth = d;
          best = {bot, i};
        }
      }
  return best;
}

// ---------------------------------------------------------------------------
// validation

static void expect_ports(const Net& n, LinkId l, size_t prem, size_t conc,
                         std::vector<StructuralError>& errs) {
  auto& lk = n.link(l);
  if (lk.premisses.size() != prem || lk.conclusions.size() != conc)
    errs.push_back({"Arity",
                    to_string(lk.sort) + " link has " +
                        std::to_string(lk.premisses.size()) + " premisses and " +
                        std::to_string(lk.conclusions.size()) + " conclusions",
                    l});
}

std::vector<StructuralError> validate(const Net& n) {
  std::vector<StructuralError> errs;
  auto type_of = [&](EdgeId e) -> const Formula& { return n.edge(e).type; };

  // edge/port cross references
  for (EdgeId e : n.live_edges()) {
    auto& ed = n.edge(e);
    if (!ed.src) {
      errs.push_back({"MissingSource", "edge has no source link", -1, e});
    } else {
      if (!n.live_link(ed.src->link) ||
          ed.src->port >= (int)n.link(ed.src->link).conclusions.size() ||
          n.link(ed.src->link).conclusions[ed.src->port] != e)
        errs.push_back({"BadSource", "edge source port mismatch", -1, e});
    }
    if (ed.dst) {
      if (!n.live_link(ed.dst->link) ||
          ed.dst->port >= (int)n.link(ed.dst->link).premisses.size() ||
          n.link(ed.dst->link).premisses[ed.dst->port] != e)
        errs.push_back({"BadTarget", "edge target port mismatch", -1, e});
    }
  }

  // pending edges are exactly the conclusions
  {
    std::set<EdgeId> pend;
    for (EdgeId e : n.live_edges())
      if (!n.edge(e).dst) pend.insert(e);
    std::set<EdgeId> listed(n.conclusions.begin(), n.conclusions.end());
    if (pend != listed || listed.size() != n.conclusions.size())
      errs.push_back({"Conclusions",
                      "conclusion list does not match the pending edges"});
  }

  for (LinkId l : n.live_links()) {
    auto& lk = n.link(l);
    for (EdgeId e : lk.premisses)
      if (!n.live_edge(e)) errs.push_back({"DeadEdge", "premiss edge missing", l});
    for (EdgeId e : lk.conclusions)
      if (!n.live_edge(e)) errs.push_back({"DeadEdge", "conclusion edge missing", l});
    bool dead = false;
    for (EdgeId e : lk.premisses) dead |= !n.live_edge(e);
    for (EdgeId e : lk.conclusions) dead |= !n.live_edge(e);
    if (dead) continue;

    switch (lk.sort) {
      case LinkSort::Ax:
        expect_ports(n, l, 0, 2, errs);
        if (lk.conclusions.size() == 2 &&
            type_of(lk.conclusions[1]) != negate_formula(type_of(lk.conclusions[0])))
          errs.push_back({"TypeMismatch", "axiom conclusions are not dual", l});
        break;
      case LinkSort::Cut:
        expect_ports(n, l, 2, 0, errs);
        if (lk.premisses.size() == 2 &&
            type_of(lk.premisses[1]) != negate_formula(type_of(lk.premisses[0])))
          errs.push_back({"TypeMismatch", "cut premisses are not dual", l});
        break;
      case LinkSort::Tensor:
      case LinkSort::Par: {
        expect_ports(n, l, 2, 1, errs);
        if (lk.premisses.size() == 2 && lk.conclusions.size() == 1) {
          const Formula& c = type_of(lk.conclusions[0]);
          bool ok = lk.sort == LinkSort::Tensor
                        ? c.kind() == Formula::Kind::Tensor
                        : c.kind() == Formula::Kind::Par;
          ok = ok && c.left() == type_of(lk.premisses[0]) &&
               c.right() == type_of(lk.premisses[1]);
          if (!ok)
            errs.push_back({"TypeMismatch",
                            to_string(lk.sort) + " conclusion does not combine its premisses",
                            l});
        }
        break;
      }
      case LinkSort::One:
        expect_ports(n, l, 0, 1, errs);
        if (!lk.conclusions.empty() &&
            type_of(lk.conclusions[0]).kind() != Formula::Kind::One)
          errs.push_back({"TypeMismatch", "one link conclusion is not 1", l});
        break;
      case LinkSort::Bot: {
        if (lk.conclusions.empty() ||
            type_of(lk.conclusions[0]).kind() != Formula::Kind::Bot) {
          errs.push_back({"TypeMismatch", "bot link lock is not bot", l});
          break;
        }
        auto it = n.boxes.find(l);
        if (it == n.boxes.end()) {
          errs.push_back({"MissingBox", "bot link owns no box", l});
          break;
        }
        int g = (int)lk.conclusions.size() - 1;
        int k = (int)it->second.size();
        if (k < 1) errs.push_back({"EmptyBox", "box has no contents", l});
        if ((int)lk.premisses.size() != g * k) {
          errs.push_back({"Arity", "box border ports do not match contents", l});
          break;
        }
        for (int i = 0; i < k; i++)
          for (int j = 0; j < g; j++)
            if (type_of(lk.premisses[i * g + j]) != type_of(lk.conclusions[1 + j]))
              errs.push_back({"TypeMismatch",
                              "content " + std::to_string(i) +
                                  " conclusion types disagree with the box interface",
                              l});
        break;
      }
      case LinkSort::Sync: {
        if (lk.premisses.size() != lk.conclusions.size() || lk.premisses.empty())
          errs.push_back({"Arity", "sync link needs matching premiss/conclusion lists", l});
        size_t m = std::min(lk.premisses.size(), lk.conclusions.size());
        for (size_t i = 0; i < m; i++) {
          if (type_of(lk.premisses[i]) != type_of(lk.conclusions[i]))
            errs.push_back({"TypeMismatch",
                            "sync port " + std::to_string(i) +
                                " premiss and conclusion types differ",
                            l});
          else if (polarity_of(type_of(lk.premisses[i])) == Polarity::Unpolarized)
            errs.push_back({"UnpolarizedSync",
                            "sync port " + std::to_string(i) +
                                " carries an unpolarized formula",
                            l});
        }
        break;
      }
    }
  }

  // every premiss port of a non-bot link is fed by exactly one edge: implied
  // by the cross-reference checks above. Boxes: membership sets must nest.
  {
    std::vector<std::pair<LinkId, const std::vector<LinkId>*>> sets;
    for (auto& [bot, contents] : n.boxes) {
      if (!n.live_link(bot) || n.link(bot).sort != LinkSort::Bot) {
        errs.push_back({"BoxOwner", "box owner is not a live bot link", bot});
        continue;
      }
      for (auto& c : contents) sets.push_back({bot, &c});
    }
    for (size_t i = 0; i < sets.size(); i++) {
      std::set<LinkId> a(sets[i].second->begin(), sets[i].second->end());
      for (LinkId l : a)
        if (!n.live_link(l))
          errs.push_back({"BoxMember", "box content lists a dead link", sets[i].first});
      if (a.count(sets[i].first))
        errs.push_back({"BoxMember", "bot link sits inside its own box", sets[i].first});
      for (size_t j = i + 1; j < sets.size(); j++) {
        std::set<LinkId> b(sets[j].second->begin(), sets[j].second->end());
        std::vector<LinkId> inter;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(inter));
        if (!inter.empty() &&
            !std::includes(a.begin(), a.end(), b.begin(), b.end()) &&
            !std::includes(b.begin(), b.end(), a.begin(), a.end()))
          errs.push_back({"BoxNesting", "box contents overlap without nesting",
                          sets[i].first});
      }
    }
    // edges may not cross a content border except through the bot link
    for (auto& [bot, contents] : n.boxes) {
      if (!n.live_link(bot)) continue;
      for (auto& c : contents) {
        std::set<LinkId> inside(c.begin(), c.end());
        for (EdgeId e : n.live_edges()) {
          auto& ed = n.edge(e);
          bool srcIn = ed.src && inside.count(ed.src->link);
          bool dstIn = ed.dst && inside.count(ed.dst->link);
          bool dstIsBorder = ed.dst && ed.dst->link == bot;
          if (srcIn && !dstIn && !dstIsBorder)
            errs.push_back({"BoxBorder", "edge leaves a box content", -1, e});
          if (!srcIn && dstIn)
            errs.push_back({"BoxBorder", "edge enters a box content", -1, e});
        }
      }
    }
  }

  return errs;
}

void debug_check(const Net& n) {
  auto errs = validate(n);
  if (!errs.empty()) {
    std::ostringstream os;
    os << "net consistency check failed:";
    for (auto& e : errs)
      os << "\n  [" << e.code << "] " << e.message << " (link " << e.link
         << ", edge " << e.edge << ")";
    throw std::logic_error(os.str());
  }
}

std::vector<StructuralError> validate(const QuantumNet& qn) {
  auto errs = validate(qn.net);
  for (auto& [name, l] : qn.wiring) {
    if (!qn.reg.has(name))
      errs.push_back({"Wiring", "wire " + name + " missing from the register"});
    if (!qn.net.live_link(l) || qn.net.link(l).sort != LinkSort::One)
      errs.push_back({"Wiring", "wire " + name + " is not attached to a one link", l});
    else if (qn.net.depth_of(l) != 0)
      errs.push_back({"Wiring", "wire " + name + " attached below depth 0", l});
  }
  for (auto& w : qn.reg.wires())
    if (!qn.wiring.count(w))
      errs.push_back({"Wiring", "register wire " + w + " is not attached to the net"});
  std::set<LinkId> seen;
  for (auto& [name, l] : qn.wiring)
    if (!seen.insert(l).second)
      errs.push_back({"Wiring", "one link wired twice", l});
  if (std::abs(qn.reg.norm() - 1.0) > kQTol)
    errs.push_back({"Register", "register is not normalized"});
  return errs;
}

// ---------------------------------------------------------------------------
// zero graph / content extraction

Net zero_graph(const Net& n) {
  Net out = n;
  out.correct_memo = -1;
  std::set<LinkId> drop;
  for (auto& [bot, contents] : n.boxes)
    if (n.depth_of(bot) == 0)
      for (auto& c : contents)
        for (LinkId l : c) drop.insert(l);
  for (LinkId l : drop) {
    for (EdgeId e : out.link(l).conclusions)
      if (out.live_edge(e)) out.edges[e].reset();
    out.links[l].reset();
  }
  for (auto& [bot, contents] : n.boxes) {
    if (n.depth_of(bot) != 0) continue;
    out.link(bot).premisses.clear();
  }
  // boxes at depth > 0 vanished with their surroundings; depth-0 boxes stay
  // as bare bot nodes
  std::map<LinkId, std::vector<std::vector<LinkId>>> keep;
  out.boxes = std::move(keep);
  return out;
}

Net extract_content(const Net& n, LinkId bot, int content) {
  const auto& members = n.boxes.at(bot).at(content);
  std::set<LinkId> inside(members.begin(), members.end());
  Net out;
  std::map<LinkId, LinkId> lmap;
  std::map<EdgeId, EdgeId> emap;
  for (LinkId l : n.live_links()) {
    if (!inside.count(l)) continue;
    lmap[l] = (LinkId)out.links.size();
    out.links.push_back(n.link(l));
  }
  for (EdgeId e : n.live_edges()) {
    auto& ed = n.edge(e);
    bool srcIn = ed.src && inside.count(ed.src->link);
    if (!srcIn) continue;
    emap[e] = (EdgeId)out.edges.size();
    Edge ne = ed;
    out.edges.push_back(ne);
  }
  for (auto& [oldL, newL] : lmap) {
    auto& lk = out.link(newL);
    for (auto& e : lk.premisses) e = emap.at(e);
    for (auto& e : lk.conclusions) e = emap.at(e);
  }
  int g = n.box_arity(bot);
  for (auto& [oldE, newE] : emap) {
    auto& ed = out.edge(newE);
    ed.src = PortRef{lmap.at(ed.src->link), ed.src->port};
    if (ed.dst && ed.dst->link == bot)
      ed.dst.reset();  // border edge becomes a pending conclusion
    else if (ed.dst)
      ed.dst = PortRef{lmap.at(ed.dst->link), ed.dst->port};
  }
  for (int j = 0; j < g; j++)
    out.conclusions.push_back(emap.at(n.content_conclusion(bot, content, j)));
  // nested boxes fully inside this content carry over
  for (auto& [b2, contents2] : n.boxes) {
    if (b2 == bot || !inside.count(b2)) continue;
    std::vector<std::vector<LinkId>> mapped;
    for (auto& c2 : contents2) {
      std::vector<LinkId> mc;
      for (LinkId l : c2) mc.push_back(lmap.at(l));
      mapped.push_back(std::move(mc));
    }
    out.boxes[lmap.at(b2)] = std::move(mapped);
  }
  return out;
}

// ---------------------------------------------------------------------------
// sync paths

std::set<EdgeId> sync_paths_from(const Net& n, EdgeId e, SyncDir dir) {
  std::set<EdgeId> out;
  std::deque<EdgeId> todo{e};
  while (!todo.empty()) {
    EdgeId cur = todo.front();
    todo.pop_front();
    if (!out.insert(cur).second) continue;
    auto& ed = n.edge(cur);
    if (dir == SyncDir::Down) {
      if (!ed.dst) continue;
      auto& lk = n.link(ed.dst->link);
      if (lk.sort == LinkSort::Sync) todo.push_back(lk.conclusions[ed.dst->port]);
    } else {
      if (!ed.src) continue;
      auto& lk = n.link(ed.src->link);
      if (lk.sort == LinkSort::Sync) todo.push_back(lk.premisses[ed.src->port]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// isomorphism

namespace {

struct IsoState {
  const Net& a;
  const Net& b;
  std::map<LinkId, LinkId> lmap;
  std::map<LinkId, LinkId> rmap;
  std::map<EdgeId, EdgeId> emapL;

  bool pair_edges(EdgeId ea, EdgeId eb, std::deque<std::pair<EdgeId, EdgeId>>& todo) {
    auto it = emapL.find(ea);
    if (it != emapL.end()) return it->second == eb;
    if (a.edge(ea).type != b.edge(eb).type) return false;
    emapL[ea] = eb;
    todo.push_back({ea, eb});
    return true;
  }

  bool pair_links(LinkId la, LinkId lb, std::deque<std::pair<EdgeId, EdgeId>>& todo) {
    auto it = lmap.find(la);
    if (it != lmap.end()) return it->second == lb;
    if (rmap.count(lb)) return false;
    auto& ka = a.link(la);
    auto& kb = b.link(lb);
    if (ka.sort != kb.sort || ka.label != kb.label ||
        ka.premisses.size() != kb.premisses.size() ||
        ka.conclusions.size() != kb.conclusions.size())
      return false;
    lmap[la] = lb;
    rmap[lb] = la;
    for (size_t i = 0; i < ka.premisses.size(); i++)
      if (!pair_edges(ka.premisses[i], kb.premisses[i], todo)) return false;
    for (size_t i = 0; i < ka.conclusions.size(); i++)
      if (!pair_edges(ka.conclusions[i], kb.conclusions[i], todo)) return false;
    return true;
  }

  // propagate all forced consequences; false on clash
  bool close(std::deque<std::pair<EdgeId, EdgeId>>& todo) {
    while (!todo.empty()) {
      auto [ea, eb] = todo.front();
      todo.pop_front();
      auto& da = a.edge(ea);
      auto& db = b.edge(eb);
      if (bool(da.dst) != bool(db.dst)) return false;
      if (da.src->port != db.src->port) return false;
      if (!pair_links(da.src->link, db.src->link, todo)) return false;
      if (da.dst) {
        if (da.dst->port != db.dst->port) return false;
        if (!pair_links(da.dst->link, db.dst->link, todo)) return false;
      }
    }
    return true;
  }
};

}  // namespace

std::optional<std::map<LinkId, LinkId>> iso_map(const Net& a, const Net& b) {
  if (a.conclusions.size() != b.conclusions.size()) return std::nullopt;
  if (a.live_links().size() != b.live_links().size()) return std::nullopt;
  if (a.live_edges().size() != b.live_edges().size()) return std::nullopt;

  IsoState st{a, b, {}, {}, {}};
  std::deque<std::pair<EdgeId, EdgeId>> todo;
  for (size_t i = 0; i < a.conclusions.size(); i++)
    if (!st.pair_edges(a.conclusions[i], b.conclusions[i], todo)) return std::nullopt;
  if (!st.close(todo)) return std::nullopt;

  // components unreachable from the conclusions: seed by trial and error
  auto unmatchedA = [&]() {
    std::vector<LinkId> out;
    for (LinkId l : a.live_links())
      if (!st.lmap.count(l)) out.push_back(l);
    return out;
  };
  while (true) {
    auto rest = unmatchedA();
    if (rest.empty()) break;
    LinkId la = rest.front();
    bool placed = false;
    for (LinkId lb : b.live_links()) {
      if (st.rmap.count(lb)) continue;
      IsoState trial = st;
      std::deque<std::pair<EdgeId, EdgeId>> t2;
      if (trial.pair_links(la, lb, t2) && trial.close(t2)) {
        st = std::move(trial);
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  if (st.lmap.size() != a.live_links().size()) return std::nullopt;

  // box structure must carry over content-wise
  if (a.boxes.size() != b.boxes.size()) return std::nullopt;
  for (auto& [botA, contentsA] : a.boxes) {
    auto it = st.lmap.find(botA);
    if (it == st.lmap.end()) return std::nullopt;
    auto bIt = b.boxes.find(it->second);
    if (bIt == b.boxes.end() || bIt->second.size() != contentsA.size())
      return std::nullopt;
    for (size_t i = 0; i < contentsA.size(); i++) {
      std::set<LinkId> mapped;
      for (LinkId l : contentsA[i]) {
        auto lit = st.lmap.find(l);
        if (lit == st.lmap.end()) return std::nullopt;
        mapped.insert(lit->second);
      }
      std::set<LinkId> want(bIt->second[i].begin(), bIt->second[i].end());
      if (mapped != want) return std::nullopt;
    }
  }
  return st.lmap;
}

bool iso_equal(const Net& a, const Net& b) { return iso_map(a, b).has_value(); }

bool quantum_net_equal(const QuantumNet& a, const QuantumNet& b, double tol) {
  auto m = iso_map(a.net, b.net);
  if (!m) return false;
  if (a.wiring.size() != b.wiring.size()) return false;
  std::map<LinkId, std::string> wireOfB;
  for (auto& [name, l] : b.wiring) wireOfB[l] = name;
  std::map<std::string, std::string> nameMap;
  for (auto& [name, l] : a.wiring) {
    auto it = wireOfB.find(m->at(l));
    if (it == wireOfB.end()) return false;
    nameMap[name] = it->second;
  }
  return registers_equal(a.reg, b.reg, nameMap, tol);
}

// ---------------------------------------------------------------------------
// low-level surgery

LinkId add_link(Net& n, LinkSort sort, std::optional<std::string> label) {
  n.correct_memo = -1;
  LinkId l = (LinkId)n.links.size();
  n.links.push_back(Link{sort, {}, {}, std::move(label)});
  return l;
}

EdgeId add_conclusion_edge(Net& n, LinkId src, Formula type) {
  n.correct_memo = -1;
  EdgeId e = (EdgeId)n.edges.size();
  int port = (int)n.link(src).conclusions.size();
  n.edges.push_back(Edge{std::move(type), PortRef{src, port}, std::nullopt});
  n.link(src).conclusions.push_back(e);
  return e;
}

void attach_premiss(Net& n, LinkId l, EdgeId e) {
  n.correct_memo = -1;
  int port = (int)n.link(l).premisses.size();
  n.link(l).premisses.push_back(e);
  n.edge(e).dst = PortRef{l, port};
}

// ---------------------------------------------------------------------------
// builder

EdgeId NetBuilder::new_edge(Formula t, PortRef src) {
  EdgeId e = (EdgeId)net_.edges.size();
  net_.edges.push_back(Edge{std::move(t), src, std::nullopt});
  return e;
}

void NetBuilder::take_premiss(LinkId l, EdgeId e) {
  auto& ed = net_.edge(e);
  if (ed.dst) throw std::logic_error("builder: edge already connected");
  int port = (int)net_.link(l).premisses.size();
  net_.link(l).premisses.push_back(e);
  ed.dst = PortRef{l, port};
}

LinkId NetBuilder::ax(const Formula& a) {
  LinkId l = (LinkId)net_.links.size();
  net_.links.push_back(Link{LinkSort::Ax, {}, {}, std::nullopt});
  net_.link(l).conclusions.push_back(new_edge(a, {l, 0}));
  net_.link(l).conclusions.push_back(new_edge(negate_formula(a), {l, 1}));
  return l;
}

LinkId NetBuilder::one() {
  LinkId l = (LinkId)net_.links.size();
  net_.links.push_back(Link{LinkSort::One, {}, {}, std::nullopt});
  net_.link(l).conclusions.push_back(new_edge(Formula::one(), {l, 0}));
  return l;
}

LinkId NetBuilder::tensor(EdgeId a, EdgeId b) {
  LinkId l = (LinkId)net_.links.size();
  net_.links.push_back(Link{LinkSort::Tensor, {}, {}, std::nullopt});
  Formula t = Formula::tensor(net_.edge(a).type, net_.edge(b).type);
  take_premiss(l, a);
  take_premiss(l, b);
  net_.link(l).conclusions.push_back(new_edge(std::move(t), {l, 0}));
  return l;
}

LinkId NetBuilder::par(EdgeId a, EdgeId b) {
  LinkId l = (LinkId)net_.links.size();
  net_.links.push_back(Link{LinkSort::Par, {}, {}, std::nullopt});
  Formula t = Formula::par(net_.edge(a).type, net_.edge(b).type);
  take_premiss(l, a);
  take_premiss(l, b);
  net_.link(l).conclusions.push_back(new_edge(std::move(t), {l, 0}));
  return l;
}

LinkId NetBuilder::cut(EdgeId a, EdgeId b) {
  if (net_.edge(b).type != negate_formula(net_.edge(a).type))
    throw std::logic_error("builder: cut premisses are not dual (" +
                           to_string(net_.edge(a).type) + " vs " +
                           to_string(net_.edge(b).type) + ")");
  LinkId l = (LinkId)net_.links.size();
  net_.links.push_back(Link{LinkSort::Cut, {}, {}, std::nullopt});
  take_premiss(l, a);
  take_premiss(l, b);
  return l;
}

LinkId NetBuilder::sync(const std::vector<EdgeId>& premisses,
                        std::optional<std::string> label) {
  if (premisses.empty()) throw std::logic_error("builder: sync needs a port");
  LinkId l = (LinkId)net_.links.size();
  net_.links.push_back(Link{LinkSort::Sync, {}, {}, std::move(label)});
  std::vector<Formula> types;
  for (EdgeId e : premisses) types.push_back(net_.edge(e).type);
  for (EdgeId e : premisses) take_premiss(l, e);
  for (size_t i = 0; i < premisses.size(); i++)
    net_.link(l).conclusions.push_back(new_edge(types[i], {l, (int)i}));
  return l;
}

LinkId NetBuilder::box(const std::vector<std::vector<EdgeId>>& contents) {
  if (contents.empty()) throw std::logic_error("builder: box needs contents");
  // the types every content must expose
  std::vector<Formula> gamma;
  for (EdgeId e : contents[0]) gamma.push_back(net_.edge(e).type);
  for (auto& c : contents) {
    if (c.size() != gamma.size())
      throw std::logic_error("builder: contents disagree on conclusion count");
    for (size_t j = 0; j < c.size(); j++)
      if (net_.edge(c[j]).type != gamma[j])
        throw std::logic_error("builder: contents disagree on conclusion types");
  }

  LinkId bot = (LinkId)net_.links.size();
  net_.links.push_back(Link{LinkSort::Bot, {}, {}, std::nullopt});
  net_.link(bot).conclusions.push_back(new_edge(Formula::bot(), {bot, 0}));
  for (size_t j = 0; j < gamma.size(); j++)
    net_.link(bot).conclusions.push_back(new_edge(gamma[j], {bot, (int)j + 1}));

  std::vector<std::vector<LinkId>> memberSets;
  for (auto& c : contents) {
    // gather the connected component(s) upstream of the content conclusions
    std::set<LinkId> members;
    std::deque<LinkId> todo;
    for (EdgeId e : c) {
      if (net_.edge(e).dst) throw std::logic_error("builder: content conclusion not pending");
      todo.push_back(net_.edge(e).src->link);
    }
    std::set<EdgeId> conclSet(c.begin(), c.end());
    while (!todo.empty()) {
      LinkId l = todo.front();
      todo.pop_front();
      if (!members.insert(l).second) continue;
      auto& lk = net_.link(l);
      for (EdgeId e : lk.premisses) todo.push_back(net_.edge(e).src->link);
      for (EdgeId e : lk.conclusions) {
        auto& ed = net_.edge(e);
        if (ed.dst)
          todo.push_back(ed.dst->link);
        else if (!conclSet.count(e))
          throw std::logic_error("builder: box content has a stray pending edge");
      }
      // nested boxes: pull their members along
      if (lk.sort == LinkSort::Bot) {
        auto it = net_.boxes.find(l);
        if (it != net_.boxes.end())
          for (auto& inner : it->second)
            for (LinkId m : inner) todo.push_back(m);
      }
    }
    for (EdgeId e : c) take_premiss(bot, e);
    memberSets.push_back(std::vector<LinkId>(members.begin(), members.end()));
  }
  net_.boxes[bot] = std::move(memberSets);
  return bot;
}

std::vector<EdgeId> NetBuilder::pending() const {
  std::vector<EdgeId> out;
  for (EdgeId e : net_.live_edges())
    if (!net_.edge(e).dst) out.push_back(e);
  return out;
}

void NetBuilder::set_conclusions(const std::vector<EdgeId>& order) {
  net_.conclusions = order;
}

Net NetBuilder::finish() {
  if (net_.conclusions.empty()) net_.conclusions = pending();
  auto errs = validate(net_);
  if (!errs.empty()) {
    std::ostringstream os;
    os << "builder produced an invalid net:";
    for (auto& e : errs) os << "\n  [" << e.code << "] " << e.message;
    throw std::logic_error(os.str());
  }
  return std::move(net_);
}

}  // namespace smll
