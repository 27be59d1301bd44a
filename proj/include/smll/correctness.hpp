#ifndef SMLL_CORRECTNESS_HPP
#define SMLL_CORRECTNESS_HPP

#include <map>
#include <stdexcept>
#include <vector>

#include "smll/net.hpp"

namespace smll {

struct CycleDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A switching cycle found in the depth-0 view of a structure: the typed
// edges in traversal order (true = traversed source-to-target). Empty when
// the structure is switching-acyclic.
struct SwitchingWitness {
  struct Step {
    EdgeId edge;
    bool forward;
  };
  std::vector<Step> cycle;
  bool empty() const { return cycle.empty(); }
};

// Searches the 0-graph for a simple cycle that uses at most one premiss of
// each par link and at most one out-edge of each sync link. Sync links are
// explored at the granularity they are drawn: one node per port, joined by
// untyped connector edges.
SwitchingWitness find_switching_cycle(const Net& n);

// Independent re-check of a witness: distinct edges, consecutive steps
// share a link, and the two usage restrictions hold.
bool replay_witness(const Net& n, const SwitchingWitness& w);

// Switching acyclicity of the 0-graph plus, recursively, of every box
// content (each alternative content of a multi-box separately).
bool is_correct(const Net& n);

// The strict order on depth-0 links generated by polarized paths: a step
// follows a positive edge downwards or a negative edge upwards, never
// entering a box.
struct PolarizedOrder {
  // before[l] = links strictly before l
  std::map<LinkId, std::set<LinkId>> before;
  std::vector<std::vector<LinkId>> layers;  // topological layering

  bool precedes(LinkId a, LinkId b) const {
    auto it = before.find(b);
    return it != before.end() && it->second.count(a) > 0;
  }
  std::vector<std::pair<LinkId, LinkId>> pairs() const;
};

// Throws CycleDetected on a polarized cycle (impossible on correct nets).
PolarizedOrder polarized_order(const Net& n);

// The unit-backed net of conclusions Gamma, A used to close conclusions:
// one links for 1, axioms for the other atoms, tensor/par joins. Appended
// into `n`; returns the main conclusion edge and the extra Gamma edges.
std::pair<EdgeId, std::vector<EdgeId>> attach_closing_net(Net& n, const Formula& a);

// Cuts every conclusion whose type contains bot against the main
// conclusion of the closing net of its dual. The result is correct and
// free of bot in its conclusions.
Net closure(const Net& n);

}  // namespace smll

#endif
