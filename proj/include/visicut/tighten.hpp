#pragma once

#include <optional>

#include "visicut/interval.hpp"
#include "visicut/visibility.hpp"

namespace visicut {

enum class EnclosureStatus { Nonempty, ProvedEmpty };

/// Outer box enclosure of a region. `box` is meaningful only when nonempty.
struct Enclosure {
  IntervalVector box;
  int leaves_kept = 0;
  int depth_used = 0;
  EnclosureStatus status = EnclosureStatus::Nonempty;
};

struct PruneOptions {
  int max_depth = 18;
  /// Absolute; <= 0 selects 1e-4 times the widest side of the domain box.
  double min_width = 0.0;
};

/// Interval branch-and-prune over {x in domain : g(x) = 0, extra(x) >= 0}.
/// Bisects the widest side relative to the domain box; a sub-box is dropped
/// when the interval range of g excludes 0, the extra condition is provably
/// negative, or a linear row of the domain is violated throughout. Half-space
/// conditions also contract each box before the tests, and every box is
/// shaved: boundary slabs failing the same tests are cut off. Ranges use the
/// natural extension intersected with a mean-value form.
Enclosure prune_enclosure(const RegionDescription& region, const PruneOptions& opts = {});

/// Bound propagation of alpha^T x + beta >= 0 onto the box. nullopt when the
/// constraint is infeasible on the box.
std::optional<IntervalVector> fbbt_halfspace(const IntervalVector& box, std::span<const double> alpha, double beta);

}  // namespace visicut
