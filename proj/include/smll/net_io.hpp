#ifndef SMLL_NET_IO_HPP
#define SMLL_NET_IO_HPP

#include <string>

#include "smll/net.hpp"

namespace smll {

struct NetFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON net format:
//   {links:[{id,sort,label?},...],
//    edges:[{id, src:[link,port]|"ext", dst:[link,port]|"pending", type}],
//    boxes:{botId:{contents:[[linkIds],...]}},
//    conclusions:[edgeIds],
//    register?:{qubits:[name,...], amplitudes:[[re,im],...], wiring:{name:linkId}}}
std::string net_to_json(const Net& n, int indent = 2);
std::string net_to_json(const QuantumNet& qn, int indent = 2);
Net net_from_json(const std::string& text);
QuantumNet quantum_net_from_json(const std::string& text);
bool json_has_register(const std::string& text);

// Top-to-bottom drawing; sync links as a row of squares joined by
// undirected connector edges.
std::string net_to_dot(const Net& n);

}  // namespace smll

#endif
