#include "locolour/verify.hpp"

#include <algorithm>

namespace locolour {

std::string_view to_string(ViolationReason reason) {
  switch (reason) {
    case ViolationReason::NoUniqueMaximum:
      return "no-unique-maximum";
    case ViolationReason::UncolouredVertex:
      return "uncoloured-vertex";
  }
  return "unknown";
}

VerifyReport verify_lo_colouring(const Hypergraph& h, const Colouring& c) {
  VerifyReport report;
  std::vector<bool> in_edge(h.num_vertices(), false);

  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const Edge& e = h.edge(i);
    bool uncoloured = false;
    Colour top = 0;
    std::size_t top_count = 0;
    for (Vertex x : e) {
      in_edge[x] = true;
      if (!c.is_coloured(x)) {
        uncoloured = true;
        continue;
      }
      if (top_count == 0 || c[x] > top) {
        top = c[x];
        top_count = 1;
      } else if (c[x] == top) {
        ++top_count;
      }
    }
    if (uncoloured) {
      report.violations.push_back({i, ViolationReason::UncolouredVertex});
    } else if (top_count != 1) {
      report.violations.push_back({i, ViolationReason::NoUniqueMaximum});
    }
  }

  std::vector<Colour> seen;
  for (Vertex x = 0; x < h.num_vertices(); ++x) {
    if (c.is_coloured(x)) {
      seen.push_back(c[x]);
    } else if (!in_edge[x]) {
      report.violations.push_back({std::nullopt, ViolationReason::UncolouredVertex});
    }
  }
  std::sort(seen.begin(), seen.end());
  report.colours_used =
      static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
  report.valid = report.violations.empty();
  return report;
}

bool is_non_monochromatic(const Hypergraph& h, const Colouring& c) {
  for (Vertex x = 0; x < h.num_vertices(); ++x) {
    if (!c.is_coloured(x)) return false;
  }
  return std::all_of(h.edges().begin(), h.edges().end(), [&](const Edge& e) {
    return std::any_of(e.begin(), e.end(), [&](Vertex x) { return c[x] != c[e[0]]; });
  });
}

}  // namespace locolour
