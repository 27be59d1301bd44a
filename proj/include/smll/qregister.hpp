#ifndef SMLL_QREGISTER_HPP
#define SMLL_QREGISTER_HPP

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smll {

using cplx = std::complex<double>;

constexpr double kQTol = 1e-9;

struct DuplicateWire : std::runtime_error { using std::runtime_error::runtime_error; };
struct UnknownWire : std::runtime_error { using std::runtime_error::runtime_error; };
struct ArityMismatch : std::runtime_error { using std::runtime_error::runtime_error; };
struct ZeroProbabilityBranch : std::runtime_error { using std::runtime_error::runtime_error; };
struct UnknownGate : std::runtime_error { using std::runtime_error::runtime_error; };
struct BadGate : std::runtime_error { using std::runtime_error::runtime_error; };

struct UnitarySpec {
  std::string name;
  int arity = 0;
  // row-major, dimension 2^arity
  std::vector<std::vector<cplx>> matrix;
};

class GateTable {
public:
  // I, X, H, Z (1-qubit), CNOT, SWAP (2-qubit)
  static GateTable builtin();

  void add(UnitarySpec spec);  // validates unitarity at 1e-9
  // {"gates":[{"name","arity","matrix":[[re,im],...] row-major}]}
  void load_json(const std::string& path);
  bool has(const std::string& name) const { return gates_.count(name) > 0; }
  const UnitarySpec& get(const std::string& name) const;

private:
  std::map<std::string, UnitarySpec> gates_;
};

// Amplitude vector over named qubit wires. Basis order is canonical: wire
// names sorted; bit k of a basis index is the k-th sorted name, with the
// first sorted wire most significant. Value 1 means the |1> state.
class QuantumRegister {
public:
  QuantumRegister();  // zero qubits, amplitude 1

  static QuantumRegister basis(const std::vector<std::string>& wires,
                               const std::vector<int>& bits);

  // amplitudes in the canonical order of the (sorted) wire names
  static QuantumRegister from_amplitudes(std::vector<std::string> wires,
                                         std::vector<cplx> amps);

  int n_wires() const { return (int)wires_.size(); }
  const std::vector<std::string>& wires() const { return wires_; }  // sorted
  const std::vector<cplx>& amplitudes() const { return amps_; }
  bool has(const std::string& w) const;

  // tensor extension with wire r in |0> (or |b>)
  QuantumRegister fresh(const std::string& r, int bit = 0) const;

  QuantumRegister apply(const UnitarySpec& u,
                        const std::vector<std::string>& on) const;

  double prob(const std::string& r, int bit) const;

  // zero the complementary subspace, renormalize, and drop wire r
  QuantumRegister project(const std::string& r, int bit) const;

  QuantumRegister renamed(const std::map<std::string, std::string>& nameMap) const;

  double norm() const;

  // `amp|b1b2...> + ...` with wires in canonical order
  std::string str() const;

  bool approx_equal(const QuantumRegister& o, double tol = kQTol) const;

private:
  std::vector<std::string> wires_;  // sorted ascending
  std::vector<cplx> amps_;          // length 2^wires
  int wire_index(const std::string& w) const;
};

// Equality after mapping a's wire names through nameMap into b's.
bool registers_equal(const QuantumRegister& a, const QuantumRegister& b,
                     const std::map<std::string, std::string>& nameMap,
                     double tol = kQTol);

}  // namespace smll

#endif
