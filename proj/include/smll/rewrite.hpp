#ifndef SMLL_REWRITE_HPP
#define SMLL_REWRITE_HPP

#include <random>
#include <vector>

#include "smll/correctness.hpp"
#include "smll/net.hpp"
#include "smll/qregister.hpp"

namespace smll {

struct NotARedex : std::runtime_error { using std::runtime_error::runtime_error; };
struct UnwiredQubit : std::runtime_error { using std::runtime_error::runtime_error; };

enum class RedexKind {
  AxCut,
  TensorPar,
  SyncAx,
  SyncCut,
  SyncTensor,
  SyncPar,
  SyncOnes,
  BoxOpen,
  QFreshOne,
  QSyncUnitary,
  QBoxMeasure,
};

std::string to_string(RedexKind k);

struct Redex {
  RedexKind kind;
  std::vector<LinkId> site;  // involved links; site[0] keyed for ordering
  int port = -1;             // sync port for the commutation rules

  bool operator==(const Redex&) const = default;
};

// Every applicable depth-0 rule instance, ordered by (kind rank, site ids).
// The classical overload never lists the quantum kinds and keeps labeled
// syncs and two-content boxes untouched (their elimination is the quantum
// rules' job).
std::vector<Redex> find_redexes(const Net& n);
std::vector<Redex> find_redexes(const QuantumNet& qn);

// One classical step. Multi-box opening takes the content choice.
Net apply_step(const Net& n, const Redex& r, int boxChoice = 0);

struct QBranch {
  QuantumNet net;
  double prob;
};

// One step on a quantum net; a two-point distribution for measurements,
// Dirac otherwise.
std::vector<QBranch> apply_step(const QuantumNet& qn, const Redex& r,
                                const GateTable& gates);

// Termination measure: major = link count plus total sync weight (weight of
// a sync = connectives summed over its port formulas), minor = total sync
// rank (cut/axiom links polarized-before the sync). Lexicographic, strictly
// decreasing along every classical step.
struct Measure {
  long major = 0;
  long minor = 0;
  bool operator<(const Measure& o) const {
    return major != o.major ? major < o.major : minor < o.minor;
  }
  bool operator==(const Measure&) const = default;
};

Measure measure(const Net& n);

struct Strategy {
  enum Mode { Deterministic, Seeded } mode = Deterministic;
  unsigned seed = 0;
  static Strategy det() { return {Deterministic, 0}; }
  static Strategy seeded(unsigned s) { return {Seeded, s}; }
};

struct TraceEntry {
  int step;
  RedexKind kind;
  std::vector<LinkId> site;
  long measureMajor;
  long measureMinor;
  double prob;
};

// Reduce to normal form. The strategy picks among redexes (and the branch
// of multi-box openings); on single-content nets the result is independent
// of it.
std::pair<Net, std::vector<TraceEntry>> normalize(const Net& n,
                                                  Strategy s = Strategy::det());

// All normal forms reachable under multi-box branching (exhaustive when the
// net has at most four multi-boxes, else sampled over seeds). Duplicate
// results under isomorphism are merged.
std::vector<Net> normal_forms(const Net& n);

struct QDist {
  std::vector<QBranch> items;
  double total() const;
};

// Fully reduces, branching on measurements, then wires any remaining
// depth-0 unwired one links into fresh |0> qubits (final readout).
// Isomorphic nets with matching registers are aggregated.
QDist multi_step(const QuantumNet& qn, const GateTable& gates);

// Fresh qubit names q0, q1, ... skipping names already in use.
class NameGen {
public:
  explicit NameGen(const std::vector<std::string>& used = {})
      : used_(used.begin(), used.end()) {}
  std::string next() {
    while (true) {
      std::string c = "q" + std::to_string(counter_++);
      if (used_.insert(c).second) return c;
    }
  }
  void reserve(const std::string& s) { used_.insert(s); }

private:
  std::set<std::string> used_;
  int counter_ = 0;
};

}  // namespace smll

#endif
