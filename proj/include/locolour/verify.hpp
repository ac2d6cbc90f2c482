#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "locolour/hypergraph.hpp"

namespace locolour {

enum class ViolationReason { NoUniqueMaximum, UncolouredVertex };

std::string_view to_string(ViolationReason reason);

struct Violation {
  /// Offending edge. Empty for an uncoloured vertex that lies in no edge.
  std::optional<std::size_t> edge;
  ViolationReason reason;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct VerifyReport {
  bool valid = true;
  std::vector<Violation> violations;
  std::size_t colours_used = 0;
};

/// Checks that every vertex is coloured and every edge has a unique maximum
/// colour. Total: never throws on a mismatched or partial colouring.
VerifyReport verify_lo_colouring(const Hypergraph& h, const Colouring& c);

/// True iff every vertex is coloured and no edge is monochromatic.
bool is_non_monochromatic(const Hypergraph& h, const Colouring& c);

}  // namespace locolour
