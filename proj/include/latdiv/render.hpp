#pragma once

#include "latdiv/lattice.hpp"

#include <string>
#include <vector>

namespace latdiv {

/// DOT digraph of the Hasse diagram, edges lower -> upper. Nodes are labeled
/// "name", or "name : annotation" when `annotations` has an entry per element.
std::string render_hasse(const FiniteLattice& lattice, const std::vector<std::string>& annotations = {},
                         const std::string& graph_name = "lattice");

}  // namespace latdiv
