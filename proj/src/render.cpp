#include "latdiv/render.hpp"

#include <stdexcept>

namespace latdiv {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_hasse(const FiniteLattice& lattice, const std::vector<std::string>& annotations,
                         const std::string& graph_name) {
  if (!annotations.empty() && annotations.size() != lattice.size()) {
    throw std::invalid_argument("one annotation per element is required");
  }
  std::string out = "digraph " + quoted(graph_name) + " {\n  rankdir=BT;\n";
  for (Element a = 0; a < lattice.size(); ++a) {
    std::string label = lattice.name(a);
    if (!annotations.empty()) label += " : " + annotations[a];
    out += "  " + quoted(lattice.name(a)) + " [label=" + quoted(label) + "];\n";
  }
  for (const auto& [lo, hi] : lattice.covers()) {
    out += "  " + quoted(lattice.name(lo)) + " -> " + quoted(lattice.name(hi)) + ";\n";
  }
  return out + "}\n";
}

}  // namespace latdiv
