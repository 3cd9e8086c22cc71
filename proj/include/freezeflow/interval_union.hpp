#pragma once

#include <limits>
#include <span>
#include <vector>

namespace freezeflow {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval [lo, hi]; either end may be infinite.
struct Interval {
  double lo;
  double hi;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of disjoint closed intervals, kept sorted.  Intervals that
// overlap or touch at a point are merged on construction.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> pieces);

  static IntervalUnion single(double lo, double hi) {
    return IntervalUnion({Interval{lo, hi}});
  }
  static IntervalUnion whole_line() { return single(-kInf, kInf); }

  std::span<const Interval> intervals() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool empty() const { return pieces_.empty(); }

  // Lebesgue measure; +inf when unbounded.
  double measure() const;
  double measure_within(double lo, double hi) const;
  bool contains(double x) const;

  IntervalUnion intersect(const Interval& window) const;
  IntervalUnion intersect(const IntervalUnion& other) const;
  IntervalUnion unite(const IntervalUnion& other) const;
  // Closure of the set difference (same measure as the difference).
  IntervalUnion minus(const IntervalUnion& other) const;
  IntervalUnion shifted(double dx) const;

  // True if every point of *this lies within `slack` of `other`.
  bool subset_of(const IntervalUnion& other, double slack = 0.0) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> pieces_;
};

// Measure of the symmetric difference; may be +inf.
double symmetric_difference_measure(const IntervalUnion& a,
                                    const IntervalUnion& b);

}  // namespace freezeflow
