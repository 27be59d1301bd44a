#include "smll/net_io.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace smll {

using nlohmann::json;

static LinkSort sort_from_string(const std::string& s) {
  if (s == "ax") return LinkSort::Ax;
  if (s == "cut") return LinkSort::Cut;
  if (s == "tensor") return LinkSort::Tensor;
  if (s == "par") return LinkSort::Par;
  if (s == "one") return LinkSort::One;
  if (s == "bot") return LinkSort::Bot;
  if (s == "sync") return LinkSort::Sync;
  throw NetFormatError("unknown link sort " + s);
}

static json net_json(const Net& n) {
  json j;
  j["links"] = json::array();
  for (LinkId l : n.live_links()) {
    json lk;
    lk["id"] = l;
    lk["sort"] = to_string(n.link(l).sort);
    if (n.link(l).label) lk["label"] = *n.link(l).label;
    j["links"].push_back(lk);
  }
  j["edges"] = json::array();
  for (EdgeId e : n.live_edges()) {
    const Edge& ed = n.edge(e);
    json je;
    je["id"] = e;
    if (ed.src)
      je["src"] = json::array({ed.src->link, ed.src->port});
    else
      je["src"] = "ext";
    if (ed.dst)
      je["dst"] = json::array({ed.dst->link, ed.dst->port});
    else
      je["dst"] = "pending";
    je["type"] = to_string(ed.type);
    j["edges"].push_back(je);
  }
  j["boxes"] = json::object();
  for (auto& [bot, contents] : n.boxes) {
    json jc = json::array();
    for (auto& c : contents) jc.push_back(c);
    j["boxes"][std::to_string(bot)] = json{{"contents", jc}};
  }
  j["conclusions"] = n.conclusions;
  return j;
}

std::string net_to_json(const Net& n, int indent) {
  return net_json(n).dump(indent);
}

std::string net_to_json(const QuantumNet& qn, int indent) {
  json j = net_json(qn.net);
  json reg;
  reg["qubits"] = qn.reg.wires();
  json amps = json::array();
  for (auto& a : qn.reg.amplitudes()) amps.push_back(json::array({a.real(), a.imag()}));
  reg["amplitudes"] = amps;
  json w = json::object();
  for (auto& [name, l] : qn.wiring) w[name] = l;
  reg["wiring"] = w;
  j["register"] = reg;
  return j.dump(indent);
}

static Net net_from(const json& j) {
  Net n;
  int maxLink = -1, maxEdge = -1;
  for (auto& lk : j.at("links")) maxLink = std::max(maxLink, lk.at("id").get<int>());
  for (auto& e : j.at("edges")) maxEdge = std::max(maxEdge, e.at("id").get<int>());
  n.links.resize(maxLink + 1);
  n.edges.resize(maxEdge + 1);
  for (auto& lk : j.at("links")) {
    Link link;
    link.sort = sort_from_string(lk.at("sort").get<std::string>());
    if (lk.contains("label")) link.label = lk.at("label").get<std::string>();
    n.links[lk.at("id").get<int>()] = link;
  }
  for (auto& je : j.at("edges")) {
    Edge e;
    e.type = parse_formula(je.at("type").get<std::string>());
    if (je.at("src").is_array())
      e.src = PortRef{je.at("src").at(0).get<int>(), je.at("src").at(1).get<int>()};
    if (je.at("dst").is_array())
      e.dst = PortRef{je.at("dst").at(0).get<int>(), je.at("dst").at(1).get<int>()};
    n.edges[je.at("id").get<int>()] = e;
  }
  // port lists are reconstructed from the edges, in port order
  for (EdgeId e : n.live_edges()) {
    const Edge ed = n.edge(e);
    if (ed.src) {
      auto& v = n.link(ed.src->link).conclusions;
      if ((int)v.size() <= ed.src->port) v.resize(ed.src->port + 1, -1);
      if (v[ed.src->port] != -1) throw NetFormatError("two edges on one source port");
      v[ed.src->port] = e;
    }
    if (ed.dst) {
      auto& v = n.link(ed.dst->link).premisses;
      if ((int)v.size() <= ed.dst->port) v.resize(ed.dst->port + 1, -1);
      if (v[ed.dst->port] != -1) throw NetFormatError("two edges on one target port");
      v[ed.dst->port] = e;
    }
  }
  for (LinkId l : n.live_links()) {
    for (EdgeId e : n.link(l).premisses)
      if (e == -1) throw NetFormatError("gap in premiss ports of link " + std::to_string(l));
    for (EdgeId e : n.link(l).conclusions)
      if (e == -1) throw NetFormatError("gap in conclusion ports of link " + std::to_string(l));
  }
  if (j.contains("boxes"))
    for (auto& [key, val] : j.at("boxes").items()) {
      std::vector<std::vector<LinkId>> contents;
      for (auto& c : val.at("contents")) contents.push_back(c.get<std::vector<LinkId>>());
      n.boxes[std::stoi(key)] = contents;
    }
  n.conclusions = j.at("conclusions").get<std::vector<EdgeId>>();
  return n;
}

Net net_from_json(const std::string& text) {
  return net_from(json::parse(text));
}

bool json_has_register(const std::string& text) {
  return json::parse(text).contains("register");
}

QuantumNet quantum_net_from_json(const std::string& text) {
  json j = json::parse(text);
  QuantumNet qn;
  qn.net = net_from(j);
  if (j.contains("register")) {
    auto& reg = j.at("register");
    auto qubits = reg.at("qubits").get<std::vector<std::string>>();
    std::sort(qubits.begin(), qubits.end());
    std::vector<cplx> v;
    for (auto& a : reg.at("amplitudes"))
      v.push_back(cplx(a.at(0).get<double>(), a.at(1).get<double>()));
    qn.reg = QuantumRegister::from_amplitudes(qubits, std::move(v));
    for (auto& [name, l] : reg.at("wiring").items())
      qn.wiring[name] = l.get<int>();
  }
  return qn;
}

std::string net_to_dot(const Net& n) {
  std::ostringstream os;
  os << "digraph net {\n  rankdir=TB;\n  node [fontsize=10];\n";
  for (LinkId l : n.live_links()) {
    const Link& lk = n.link(l);
    if (lk.sort == LinkSort::Sync) {
      for (size_t i = 0; i < lk.premisses.size(); i++) {
        os << "  l" << l << "_" << i << " [shape=square, label=\""
           << (lk.label ? *lk.label : "") << "\"];\n";
        if (i > 0)
          os << "  l" << l << "_" << i - 1 << " -> l" << l << "_" << i
             << " [dir=none, style=bold];\n";
      }
      continue;
    }
    std::string shape = "ellipse";
    std::string label = to_string(lk.sort);
    if (lk.sort == LinkSort::Tensor) label = "\xE2\x8A\x97";
    if (lk.sort == LinkSort::Par) label = "\xE2\x85\x8B";
    if (lk.sort == LinkSort::Bot) {
      shape = "box";
      label = "bot" + std::string(n.boxes.count(l) ? "/box" : "");
    }
    os << "  l" << l << " [shape=" << shape << ", label=\"" << label << "\"];\n";
  }
  int pend = 0;
  for (EdgeId e : n.live_edges()) {
    const Edge& ed = n.edge(e);
    auto name = [&](const std::optional<PortRef>& p, bool src) -> std::string {
      if (!p) {
        if (src) return "ext" + std::to_string(e);
        os << "  c" << pend << " [shape=plaintext, label=\"" << to_string(ed.type)
           << "\"];\n";
        return "c" + std::to_string(pend++);
      }
      const Link& lk = n.link(p->link);
      if (lk.sort == LinkSort::Sync)
        return "l" + std::to_string(p->link) + "_" + std::to_string(p->port);
      return "l" + std::to_string(p->link);
    };
    std::string s = name(ed.src, true);
    std::string d = name(ed.dst, false);
    os << "  " << s << " -> " << d << " [label=\"" << to_string(ed.type) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace smll
