#include "visicut/tighten.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "visicut/error.hpp"

namespace visicut {

namespace {

constexpr double kPad = 1e-12;
constexpr int kShaveSteps = 6;

double pad(double v) { return kPad * (1.0 + std::abs(v)); }

struct Node {
  IntervalVector box;
  int depth;
};

IntervalVector point_box(const std::vector<double>& c) { return IntervalVector(c, c); }

// Range enclosure of a polynomial: the natural extension intersected with a
// mean-value form whose expansion point sits at the corner that the sign of
// each partial derivative makes extremal.
class RangeBound {
 public:
  explicit RangeBound(const MultiPoly& p) : p_(&p), grad_(p.gradient()) {}

  [[nodiscard]] Interval operator()(const IntervalVector& box) const {
    const Interval nat = p_->eval(box);
    const std::size_t n = box.size();
    std::vector<double> cu(n);
    std::vector<double> cl(n);
    double spread = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Interval gi = grad_[i].eval(box);
      if (gi.lo >= 0.0) {
        cu[i] = box[i].hi;
        cl[i] = box[i].lo;
      } else if (gi.hi <= 0.0) {
        cu[i] = box[i].lo;
        cl[i] = box[i].hi;
      } else {
        cu[i] = cl[i] = box[i].mid();
        spread += gi.mag() * 0.5 * box[i].width();
      }
    }
    const double hi = p_->eval(point_box(cu)).hi + spread;
    const double lo = p_->eval(point_box(cl)).lo - spread;
    return {std::max(nat.lo, lo), std::min(nat.hi, hi)};
  }

 private:
  const MultiPoly* p_;
  std::vector<MultiPoly> grad_;
};

class Pruner {
 public:
  explicit Pruner(const RegionDescription& region)
      : region_(region), surface_(region.surface), halfspace_(std::get_if<Halfspace>(&region.extra)) {
    if (!halfspace_) extra_.emplace(std::get<MultiPoly>(region.extra));
  }

  // Contracts the box in place; false when it provably holds no region point.
  bool contract(IntervalVector& box) const {
    if (!contract_once(box)) return false;
    shave(box);
    return contract_once(box);
  }

 private:
  bool contract_once(IntervalVector& box) const {
    if (halfspace_) {
      auto c = fbbt_halfspace(box, halfspace_->alpha, halfspace_->beta);
      if (!c) return false;
      box = std::move(*c);
    }
    if (region_.domain.excludes(box)) return false;
    const Interval gv = surface_(box);
    if (gv.lo > 0.0 || gv.hi < 0.0) return false;
    if (extra_ && (*extra_)(box).hi < 0.0) return false;
    return true;
  }

  // Removes boundary slabs that the tests above prove empty.
  void shave(IntervalVector& box) const {
    for (std::size_t i = 0; i < box.size(); ++i) {
      for (int side = 0; side < 2; ++side) {
        const double w0 = box[i].width();
        double s = 0.5 * w0;
        for (int step = 0; step < kShaveSteps && box[i].width() > 0.0; ++step) {
          s = std::min(s, 0.5 * box[i].width());
          IntervalVector slab = box;
          if (side == 0)
            slab[i].hi = box[i].lo + s;
          else
            slab[i].lo = box[i].hi - s;
          if (!contract_once(slab)) {
            if (side == 0)
              box[i].lo += s;
            else
              box[i].hi -= s;
          } else {
            s *= 0.5;
          }
        }
      }
    }
  }

  const RegionDescription& region_;
  RangeBound surface_;
  const Halfspace* halfspace_;
  std::optional<RangeBound> extra_;
};

}  // namespace

std::optional<IntervalVector> fbbt_halfspace(const IntervalVector& box, std::span<const double> alpha, double beta) {
  if (alpha.size() != box.size()) throw InputError("fbbt_halfspace: dimension mismatch");
  IntervalVector out = box;
  const std::size_t n = box.size();
  for (std::size_t round = 0; round < std::max<std::size_t>(n, 1); ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha[i] == 0.0) continue;
      // alpha_i x_i >= -beta - sum_{j != i} alpha_j x_j
      double rest_hi = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) rest_hi += alpha[j] > 0.0 ? alpha[j] * out[j].hi : alpha[j] * out[j].lo;
      const double bound = (-beta - rest_hi) / alpha[i];
      Interval& xi = out[i];
      if (alpha[i] > 0.0) {
        const double lo = bound - pad(bound);
        if (lo > xi.hi) return std::nullopt;
        if (lo > xi.lo) {
          xi.lo = lo;
          changed = true;
        }
      } else {
        const double hi = bound + pad(bound);
        if (hi < xi.lo) return std::nullopt;
        if (hi < xi.hi) {
          xi.hi = hi;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return out;
}

Enclosure prune_enclosure(const RegionDescription& region, const PruneOptions& opts) {
  if (opts.max_depth < 1 || opts.max_depth > 40) throw InputError("prune_enclosure: max_depth must lie in [1, 40]");
  const IntervalVector& root = region.domain.box();
  const std::size_t n = root.size();
  double widest = 0.0;
  for (const auto& c : root) widest = std::max(widest, c.width());
  const double min_width = opts.min_width > 0.0 ? opts.min_width : 1e-4 * widest;
  const Pruner pruner(region);

  Enclosure enc;
  std::optional<IntervalVector> hull_box;
  std::vector<Node> stack{{root, 0}};
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (!pruner.contract(node.box)) continue;
    // Nothing below this node can grow the hull.
    if (hull_box && hull_box->contains(node.box)) continue;

    // Widest side relative to the domain box.
    std::size_t split = 0;
    double best = -1.0;
    double abs_widest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      abs_widest = std::max(abs_widest, node.box[i].width());
      if (root[i].width() <= 0.0) continue;
      const double rel = node.box[i].width() / root[i].width();
      if (rel > best) {
        best = rel;
        split = i;
      }
    }
    if (node.depth >= opts.max_depth || abs_widest < min_width || best <= 0.0) {
      hull_box = hull_box ? hull(*hull_box, node.box) : node.box;
      ++enc.leaves_kept;
      enc.depth_used = std::max(enc.depth_used, node.depth);
      continue;
    }
    const double mid = node.box[split].mid();
    IntervalVector left = node.box;
    IntervalVector right = node.box;
    left[split].hi = mid;
    right[split].lo = mid;
    stack.push_back({std::move(right), node.depth + 1});
    stack.push_back({std::move(left), node.depth + 1});
  }
  if (!hull_box) {
    enc.status = EnclosureStatus::ProvedEmpty;
    return enc;
  }
  enc.box = std::move(*hull_box);
  return enc;
}

}  // namespace visicut
