#ifndef SMLL_NET_HPP
#define SMLL_NET_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "smll/formula.hpp"
#include "smll/qregister.hpp"

namespace smll {

using LinkId = int;
using EdgeId = int;

enum class LinkSort { Ax, Cut, Tensor, Par, One, Bot, Sync };

std::string to_string(LinkSort s);

// src ports index into the source link's conclusion list, dst ports into
// the target link's premiss list.
struct PortRef {
  LinkId link;
  int port;
  bool operator==(const PortRef&) const = default;
};

struct Edge {
  Formula type;
  std::optional<PortRef> src;  // empty only for externally sourced edges
  std::optional<PortRef> dst;  // empty = pending (a conclusion of the net)
};

struct Link {
  LinkSort sort;
  std::vector<EdgeId> premisses;
  std::vector<EdgeId> conclusions;
  std::optional<std::string> label;  // sync links may carry a unitary name
};

struct StructuralError {
  std::string code;
  std::string message;
  LinkId link = -1;
  EdgeId edge = -1;
};

// A proof structure: links, typed edges, and boxes.
//
// Boxes are owned by bot links. The bot link's conclusion 0 is the lock
// edge (typed bot); conclusions 1..g are the box's auxiliary conclusions.
// Content i's j-th conclusion edge targets the bot link's premiss port
// i*g + j. boxes[bot] lists, per content, every link inside it (links of
// nested boxes included); a link's depth is the number of content sets
// containing it. The bot link itself sits outside its own box.
struct Net {
  std::vector<std::optional<Link>> links;
  std::vector<std::optional<Edge>> edges;
  std::map<LinkId, std::vector<std::vector<LinkId>>> boxes;
  std::vector<EdgeId> conclusions;

  mutable int correct_memo = -1;  // -1 unknown, else 0/1; reset on mutation

  Link& link(LinkId l) { return *links.at(l); }
  const Link& link(LinkId l) const { return *links.at(l); }
  Edge& edge(EdgeId e) { return *edges.at(e); }
  const Edge& edge(EdgeId e) const { return *edges.at(e); }
  bool live_link(LinkId l) const { return l >= 0 && l < (int)links.size() && links[l]; }
  bool live_edge(EdgeId e) const { return e >= 0 && e < (int)edges.size() && edges[e]; }

  std::vector<LinkId> live_links() const;
  std::vector<EdgeId> live_edges() const;

  int link_count() const { return (int)live_links().size(); }

  // number of boxes whose contents contain l
  int depth_of(LinkId l) const;
  int depth() const;

  // for a link inside some box content, the (bot, contentIndex) of the
  // innermost box containing it
  std::optional<std::pair<LinkId, int>> enclosing_box(LinkId l) const;

  // aux conclusion count of a box
  int box_arity(LinkId bot) const { return (int)link(bot).conclusions.size() - 1; }

  EdgeId lock_edge(LinkId bot) const { return link(bot).conclusions[0]; }

  // content i's j-th conclusion edge (the one entering the border)
  EdgeId content_conclusion(LinkId bot, int content, int j) const {
    return link(bot).premisses[content * box_arity(bot) + j];
  }
};

// Structural checks for the link alphabet, edge bookkeeping, typing and
// box nesting. Empty result means the net is a well-formed structure.
std::vector<StructuralError> validate(const Net& n);

// Internal consistency of the src/dst <-> port cross references; used by
// tests after every rewrite step.
void debug_check(const Net& n);

// Depth-0 view: boxes collapse to their bot link with lock + auxiliary
// conclusions, contents dropped.
Net zero_graph(const Net& n);

// Extract box content as a standalone net (conclusions in border order).
Net extract_content(const Net& n, LinkId bot, int content);

enum class SyncDir { Down, Up };

// Hereditary closure through sync links on corresponding ports: from e,
// repeatedly step premiss i -> conclusion i (Down) or conclusion i ->
// premiss i (Up). Includes e itself.
std::set<EdgeId> sync_paths_from(const Net& n, EdgeId e, SyncDir dir = SyncDir::Down);

// Sort-, type-, port-order- and box-preserving bijection fixing the
// conclusion order. Returns the link mapping when one exists.
std::optional<std::map<LinkId, LinkId>> iso_map(const Net& a, const Net& b);
bool iso_equal(const Net& a, const Net& b);

// A net paired with a register over named qubits, each wired to a depth-0
// one link.
struct QuantumNet {
  Net net;
  QuantumRegister reg;
  std::map<std::string, LinkId> wiring;  // qubit name -> one link
};

std::vector<StructuralError> validate(const QuantumNet& qn);

// Nets equal as above and registers equal under the wire correspondence
// the isomorphism induces.
bool quantum_net_equal(const QuantumNet& a, const QuantumNet& b, double tol = 1e-9);

// Low-level surgery shared by the rewriting engine and the closure
// construction. These do not keep the net valid on their own; callers
// re-establish the invariants before handing the net out.
LinkId add_link(Net& n, LinkSort sort, std::optional<std::string> label = std::nullopt);
EdgeId add_conclusion_edge(Net& n, LinkId src, Formula type);
void attach_premiss(Net& n, LinkId l, EdgeId e);

// Bottom-up construction with dense ids. Every method returns ids into
// the net being built; finish() runs validate and hands the net over.
class NetBuilder {
public:
  // conclusions: [A, ~A]
  LinkId ax(const Formula& a);
  LinkId one();
  // premisses are currently pending edges; conclusion edge is fresh
  LinkId tensor(EdgeId l, EdgeId r);
  LinkId par(EdgeId l, EdgeId r);
  LinkId cut(EdgeId a, EdgeId b);
  // premisses pending, same-typed fresh conclusions, optional unitary label
  LinkId sync(const std::vector<EdgeId>& premisses,
              std::optional<std::string> label = std::nullopt);
  // Wrap components into a box: every listed edge must be pending, and the
  // listed edges of each content must be the only pendings of their
  // connected component(s). Creates the bot link; content conclusion types
  // must agree across contents. Returns the bot link id.
  LinkId box(const std::vector<std::vector<EdgeId>>& contents);

  EdgeId conclusion_of(LinkId l, int port = 0) const { return net_.link(l).conclusions[port]; }
  const Formula& type_of(EdgeId e) const { return net_.edge(e).type; }
  std::vector<EdgeId> pending() const;

  // By default conclusions are the pending edges in creation order.
  void set_conclusions(const std::vector<EdgeId>& order);

  Net finish();

  Net& net() { return net_; }

private:
  EdgeId new_edge(Formula t, PortRef src);
  void take_premiss(LinkId l, EdgeId e);
  Net net_;
};

}  // namespace smll

#endif
