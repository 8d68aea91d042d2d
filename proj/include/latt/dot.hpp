#pragma once

// Graphviz export of order diagrams: covers drawn bottom-to-top, elements
// of equal height in one rank, fork elements filled black, congruence
// blocks colored by block index.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "latt/congruence.hpp"
#include "latt/lattice.hpp"

namespace latt {

struct DotOptions {
  std::vector<ElementId> filled;         // drawn black (fork elements)
  std::optional<Partition> blocks;       // same fill color per block
};

namespace detail {

inline const char* block_color(int index) {
  static const char* palette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                                  "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
                                  "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};
  return palette[index % 12];
}

inline std::vector<int> heights(const FiniteLattice& L) {
  std::vector<int> h(L.size(), -1);
  auto rec = [&](auto&& self, ElementId x) -> int {
    if (h[x] >= 0) return h[x];
    int best = 0;
    for (ElementId d : L.lower_covers(x)) best = std::max(best, self(self, d) + 1);
    return h[x] = best;
  };
  for (ElementId x = 0; x < L.size(); ++x) rec(rec, x);
  return h;
}

}  // namespace detail

inline std::string export_dot(const FiniteLattice& L, const DotOptions& opt = {}) {
  std::vector<char> filled(L.size(), 0);
  for (ElementId x : opt.filled) filled[x] = 1;

  std::vector<ElementId> order(L.size());
  for (int x = 0; x < L.size(); ++x) order[x] = x;
  std::sort(order.begin(), order.end(),
            [&](ElementId a, ElementId b) { return L.label(a) < L.label(b); });

  std::ostringstream out;
  out << "digraph lattice {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=ellipse];\n";
  for (ElementId x : order) {
    out << "  \"" << L.label(x) << "\"";
    if (filled[x]) {
      out << " [style=filled, fillcolor=black, fontcolor=white]";
    } else if (opt.blocks) {
      out << " [style=filled, fillcolor=\"" << detail::block_color(opt.blocks->block_index(x))
          << "\"]";
    }
    out << ";\n";
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [a, b] : L.cover_pairs()) edges.emplace_back(L.label(a), L.label(b));
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) out << "  \"" << a << "\" -> \"" << b << "\";\n";

  std::vector<int> h = detail::heights(L);
  std::map<int, std::vector<std::string>> ranks;
  for (ElementId x : order) ranks[h[x]].push_back(L.label(x));
  for (const auto& [level, names] : ranks) {
    out << "  { rank=same;";
    for (const auto& s : names) out << " \"" << s << "\";";
    out << " }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace latt
