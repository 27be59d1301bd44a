#include "smll/qregister.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace smll {

static void check_unitary(const UnitarySpec& u) {
  size_t dim = size_t(1) << u.arity;
  if (u.matrix.size() != dim)
    throw BadGate("gate " + u.name + ": expected " + std::to_string(dim) + " rows");
  for (auto& row : u.matrix)
    if (row.size() != dim)
      throw BadGate("gate " + u.name + ": ragged matrix");
  // U^dagger U = I
  for (size_t i = 0; i < dim; i++) {
    for (size_t j = 0; j < dim; j++) {
      cplx s = 0;
      for (size_t k = 0; k < dim; k++) s += std::conj(u.matrix[k][i]) * u.matrix[k][j];
      cplx want = i == j ? cplx(1) : cplx(0);
      if (std::abs(s - want) > kQTol)
        throw BadGate("gate " + u.name + " is not unitary");
    }
  }
}

GateTable GateTable::builtin() {
  GateTable t;
  const double s = 1.0 / std::sqrt(2.0);
  t.add({"I", 1, {{1, 0}, {0, 1}}});
  t.add({"X", 1, {{0, 1}, {1, 0}}});
  t.add({"Z", 1, {{1, 0}, {0, -1}}});
  t.add({"H", 1, {{s, s}, {s, -s}}});
  t.add({"CNOT", 2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}});
  t.add({"SWAP", 2, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}});
  return t;
}

void GateTable::add(UnitarySpec spec) {
  check_unitary(spec);
  gates_[spec.name] = std::move(spec);
}

void GateTable::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gate file " + path);
  nlohmann::json j;
  in >> j;
  for (auto& g : j.at("gates")) {
    UnitarySpec spec;
    spec.name = g.at("name").get<std::string>();
    spec.arity = g.at("arity").get<int>();
    size_t dim = size_t(1) << spec.arity;
    auto& m = g.at("matrix");
    if (m.size() != dim * dim)
      throw BadGate("gate " + spec.name + ": matrix must list " +
                    std::to_string(dim * dim) + " row-major entries");
    spec.matrix.assign(dim, std::vector<cplx>(dim));
    for (size_t r = 0; r < dim; r++)
      for (size_t c = 0; c < dim; c++) {
        auto& e = m[r * dim + c];
        spec.matrix[r][c] = cplx(e.at(0).get<double>(), e.at(1).get<double>());
      }
    add(std::move(spec));
  }
}

const UnitarySpec& GateTable::get(const std::string& name) const {
  auto it = gates_.find(name);
  if (it == gates_.end()) throw UnknownGate("unknown gate " + name);
  return it->second;
}

QuantumRegister::QuantumRegister() : amps_{cplx(1)} {}

QuantumRegister QuantumRegister::basis(const std::vector<std::string>& wires,
                                       const std::vector<int>& bits) {
  QuantumRegister q;
  for (size_t i = 0; i < wires.size(); i++) q = q.fresh(wires[i], bits[i]);
  return q;
}

QuantumRegister QuantumRegister::from_amplitudes(std::vector<std::string> wires,
                                                 std::vector<cplx> amps) {
  std::vector<std::string> sorted = wires;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != wires)
    throw std::runtime_error("from_amplitudes: wires must be given sorted");
  for (size_t i = 1; i < sorted.size(); i++)
    if (sorted[i] == sorted[i - 1]) throw DuplicateWire("duplicate wire " + sorted[i]);
  if (amps.size() != size_t(1) << wires.size())
    throw std::runtime_error("from_amplitudes: wrong amplitude count");
  QuantumRegister q;
  q.wires_ = std::move(wires);
  q.amps_ = std::move(amps);
  return q;
}

bool QuantumRegister::has(const std::string& w) const {
  return std::binary_search(wires_.begin(), wires_.end(), w);
}

int QuantumRegister::wire_index(const std::string& w) const {
  auto it = std::lower_bound(wires_.begin(), wires_.end(), w);
  if (it == wires_.end() || *it != w) throw UnknownWire("no wire named " + w);
  return int(it - wires_.begin());
}

QuantumRegister QuantumRegister::fresh(const std::string& r, int bit) const {
  if (has(r)) throw DuplicateWire("wire " + r + " already present");
  QuantumRegister out;
  out.wires_ = wires_;
  auto it = std::lower_bound(out.wires_.begin(), out.wires_.end(), r);
  int pos = int(it - out.wires_.begin());
  out.wires_.insert(it, r);
  int n = (int)out.wires_.size();
  out.amps_.assign(size_t(1) << n, cplx(0));
  int newShift = n - 1 - pos;  // bit position of r in the new index
  for (size_t idx = 0; idx < amps_.size(); idx++) {
    // re-interleave the old bits around the inserted one
    size_t high = idx >> newShift;            // bits above the insertion point
    size_t low = idx & ((size_t(1) << newShift) - 1);
    size_t nidx = (high << (newShift + 1)) | (size_t(bit) << newShift) | low;
    out.amps_[nidx] = amps_[idx];
  }
  return out;
}

QuantumRegister QuantumRegister::apply(const UnitarySpec& u,
                                       const std::vector<std::string>& on) const {
  if ((int)on.size() != u.arity)
    throw ArityMismatch("gate " + u.name + " has arity " + std::to_string(u.arity) +
                        ", got " + std::to_string(on.size()) + " wires");
  std::vector<int> shifts;  // bit shift of each operand wire, first = most significant
  for (auto& w : on) {
    for (auto& w2 : on)
      if (&w != &w2 && w == w2) throw ArityMismatch("repeated wire " + w);
    shifts.push_back((int)wires_.size() - 1 - wire_index(w));
  }
  size_t dim = size_t(1) << u.arity;
  QuantumRegister out = *this;
  std::fill(out.amps_.begin(), out.amps_.end(), cplx(0));
  for (size_t idx = 0; idx < amps_.size(); idx++) {
    if (amps_[idx] == cplx(0)) continue;
    // operand sub-index of this basis state, first wire most significant
    size_t sub = 0;
    for (int k = 0; k < u.arity; k++)
      sub = (sub << 1) | ((idx >> shifts[k]) & 1);
    size_t base = idx;
    for (int k = 0; k < u.arity; k++) base &= ~(size_t(1) << shifts[k]);
    for (size_t row = 0; row < dim; row++) {
      cplx coef = u.matrix[row][sub];
      if (coef == cplx(0)) continue;
      size_t nidx = base;
      for (int k = 0; k < u.arity; k++)
        nidx |= ((row >> (u.arity - 1 - k)) & 1) << shifts[k];
      out.amps_[nidx] += coef * amps_[idx];
    }
  }
  return out;
}

double QuantumRegister::prob(const std::string& r, int bit) const {
  int shift = (int)wires_.size() - 1 - wire_index(r);
  double p = 0;
  for (size_t idx = 0; idx < amps_.size(); idx++)
    if (((idx >> shift) & 1) == (size_t)bit) p += std::norm(amps_[idx]);
  return p;
}

QuantumRegister QuantumRegister::project(const std::string& r, int bit) const {
  double p = prob(r, bit);
  if (p <= 1e-12) throw ZeroProbabilityBranch("projection of " + r + " onto " +
                                              std::to_string(bit) + " has zero mass");
  int pos = wire_index(r);
  int shift = (int)wires_.size() - 1 - pos;
  QuantumRegister out;
  out.wires_ = wires_;
  out.wires_.erase(out.wires_.begin() + pos);
  out.amps_.assign(size_t(1) << out.wires_.size(), cplx(0));
  double scale = 1.0 / std::sqrt(p);
  for (size_t idx = 0; idx < amps_.size(); idx++) {
    if (((idx >> shift) & 1) != (size_t)bit) continue;
    size_t high = idx >> (shift + 1);
    size_t low = idx & ((size_t(1) << shift) - 1);
    out.amps_[(high << shift) | low] = amps_[idx] * scale;
  }
  return out;
}

QuantumRegister QuantumRegister::renamed(
    const std::map<std::string, std::string>& nameMap) const {
  std::vector<std::string> newNames(wires_.size());
  for (size_t i = 0; i < wires_.size(); i++) {
    auto it = nameMap.find(wires_[i]);
    newNames[i] = it == nameMap.end() ? wires_[i] : it->second;
  }
  QuantumRegister out;
  out.wires_ = newNames;
  std::sort(out.wires_.begin(), out.wires_.end());
  for (size_t i = 1; i < out.wires_.size(); i++)
    if (out.wires_[i] == out.wires_[i - 1])
      throw DuplicateWire("rename collides on " + out.wires_[i]);
  int n = (int)wires_.size();
  // old bit position i maps to new bit position of newNames[i]
  std::vector<int> newShift(n);
  for (int i = 0; i < n; i++) {
    auto it = std::lower_bound(out.wires_.begin(), out.wires_.end(), newNames[i]);
    newShift[i] = n - 1 - int(it - out.wires_.begin());
  }
  out.amps_.assign(amps_.size(), cplx(0));
  for (size_t idx = 0; idx < amps_.size(); idx++) {
    if (amps_[idx] == cplx(0)) continue;
    size_t nidx = 0;
    for (int i = 0; i < n; i++)
      nidx |= ((idx >> (n - 1 - i)) & 1) << newShift[i];
    out.amps_[nidx] = amps_[idx];
  }
  return out;
}

double QuantumRegister::norm() const {
  double s = 0;
  for (auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

std::string QuantumRegister::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t idx = 0; idx < amps_.size(); idx++) {
    if (std::abs(amps_[idx]) < 1e-12) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << amps_[idx].real() << (amps_[idx].imag() < 0 ? "" : "+")
       << amps_[idx].imag() << "i)|";
    for (int k = (int)wires_.size() - 1; k >= 0; k--)
      os << ((idx >> k) & 1);
    os << ">";
  }
  if (first) os << "0";
  return os.str();
}

bool QuantumRegister::approx_equal(const QuantumRegister& o, double tol) const {
  if (wires_ != o.wires_) return false;
  for (size_t i = 0; i < amps_.size(); i++)
    if (std::abs(amps_[i] - o.amps_[i]) > tol) return false;
  return true;
}

bool registers_equal(const QuantumRegister& a, const QuantumRegister& b,
                     const std::map<std::string, std::string>& nameMap, double tol) {
  if (a.n_wires() != b.n_wires()) return false;
  try {
    return a.renamed(nameMap).approx_equal(b, tol);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace smll
