#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace visicut {

/// Closed real interval [lo, hi]. Arithmetic is the plain natural extension
/// without directed rounding; callers that need an enclosure pad the result.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double point) : lo(point), hi(point) {}
  constexpr Interval(double l, double h) : lo(l), hi(h) {}

  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
  [[nodiscard]] double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
  [[nodiscard]] bool contains(double v) const { return lo <= v && v <= hi; }
  [[nodiscard]] bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

  Interval& operator+=(const Interval& o) {
    lo += o.lo;
    hi += o.hi;
    return *this;
  }
};

inline Interval operator+(Interval a, const Interval& b) { return a += b; }
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

inline Interval operator*(double s, const Interval& a) {
  return s >= 0.0 ? Interval{s * a.lo, s * a.hi} : Interval{s * a.hi, s * a.lo};
}

/// Integer power; even powers of an interval straddling zero start at zero.
inline Interval pow(const Interval& a, int e) {
  if (e == 0) return {1.0, 1.0};
  if (e == 1) return a;
  const double pl = std::pow(a.lo, e);
  const double ph = std::pow(a.hi, e);
  if (e % 2 == 1) return {pl, ph};
  if (a.lo >= 0.0) return {pl, ph};
  if (a.hi <= 0.0) return {ph, pl};
  return {0.0, std::max(pl, ph)};
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

/// Axis-aligned box, one Interval per coordinate.
class IntervalVector {
 public:
  IntervalVector() = default;
  explicit IntervalVector(std::vector<Interval> comps) : comps_(std::move(comps)) { validate(); }
  IntervalVector(std::initializer_list<Interval> comps) : comps_(comps) { validate(); }
  IntervalVector(std::span<const double> lo, std::span<const double> hi) {
    if (lo.size() != hi.size()) throw std::invalid_argument("box: lo/hi length mismatch");
    comps_.reserve(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) comps_.emplace_back(lo[i], hi[i]);
    validate();
  }

  [[nodiscard]] std::size_t size() const { return comps_.size(); }
  [[nodiscard]] bool empty() const { return comps_.empty(); }
  const Interval& operator[](std::size_t i) const { return comps_[i]; }
  Interval& operator[](std::size_t i) { return comps_[i]; }
  [[nodiscard]] auto begin() const { return comps_.begin(); }
  [[nodiscard]] auto end() const { return comps_.end(); }

  [[nodiscard]] std::vector<double> lower() const {
    std::vector<double> v;
    for (const auto& c : comps_) v.push_back(c.lo);
    return v;
  }
  [[nodiscard]] std::vector<double> upper() const {
    std::vector<double> v;
    for (const auto& c : comps_) v.push_back(c.hi);
    return v;
  }
  [[nodiscard]] std::vector<double> midpoint() const {
    std::vector<double> v;
    for (const auto& c : comps_) v.push_back(c.mid());
    return v;
  }

  [[nodiscard]] bool contains(std::span<const double> x, double tol = 0.0) const {
    if (x.size() != comps_.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < comps_[i].lo - tol || x[i] > comps_[i].hi + tol) return false;
    return true;
  }
  [[nodiscard]] bool contains(const IntervalVector& o, double tol = 0.0) const {
    if (o.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (o[i].lo < comps_[i].lo - tol || o[i].hi > comps_[i].hi + tol) return false;
    return true;
  }

  friend bool operator==(const IntervalVector& a, const IntervalVector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].lo != b[i].lo || a[i].hi != b[i].hi) return false;
    return true;
  }

 private:
  void validate() const {
    for (const auto& c : comps_) {
      if (!std::isfinite(c.lo) || !std::isfinite(c.hi))
        throw std::invalid_argument("box: non-finite bound");
      if (c.lo > c.hi) throw std::invalid_argument("box: lower bound exceeds upper bound");
    }
  }

  std::vector<Interval> comps_;
};

inline IntervalVector hull(const IntervalVector& a, const IntervalVector& b) {
  std::vector<Interval> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(hull(a[i], b[i]));
  return IntervalVector(std::move(out));
}

}  // namespace visicut
