#include "freezeflow/interval_union.hpp"

#include <algorithm>
#include <cmath>

namespace freezeflow {

IntervalUnion::IntervalUnion(std::vector<Interval> pieces) {
  std::erase_if(pieces, [](const Interval& iv) {
    return !(iv.lo <= iv.hi) || std::isnan(iv.lo) || std::isnan(iv.hi);
  });
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : pieces) {
    if (!pieces_.empty() && iv.lo <= pieces_.back().hi) {
      pieces_.back().hi = std::max(pieces_.back().hi, iv.hi);
    } else {
      pieces_.push_back(iv);
    }
  }
}

double IntervalUnion::measure() const {
  double total = 0.0;
  for (const auto& iv : pieces_) total += iv.length();
  return total;
}

double IntervalUnion::measure_within(double lo, double hi) const {
  double total = 0.0;
  for (const auto& iv : pieces_) {
    const double a = std::max(lo, iv.lo);
    const double b = std::min(hi, iv.hi);
    if (b > a) total += b - a;
  }
  return total;
}

bool IntervalUnion::contains(double x) const {
  auto it = std::upper_bound(
      pieces_.begin(), pieces_.end(), x,
      [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == pieces_.begin()) return false;
  return std::prev(it)->contains(x);
}

IntervalUnion IntervalUnion::intersect(const Interval& window) const {
  std::vector<Interval> out;
  for (const auto& iv : pieces_) {
    const double a = std::max(window.lo, iv.lo);
    const double b = std::min(window.hi, iv.hi);
    if (a <= b) out.push_back({a, b});
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const auto& a = pieces_[i];
    const auto& b = other.pieces_[j];
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  std::vector<Interval> all(pieces_);
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::minus(const IntervalUnion& other) const {
  std::vector<Interval> out;
  for (const auto& iv : pieces_) {
    double cursor = iv.lo;
    bool alive = true;
    for (const auto& cut : other.pieces_) {
      if (cut.hi < cursor) continue;
      if (cut.lo > iv.hi) break;
      if (cut.lo > cursor) out.push_back({cursor, cut.lo});
      if (cut.hi >= iv.hi) {
        alive = false;
        break;
      }
      cursor = cut.hi;
    }
    if (alive && cursor < iv.hi) out.push_back({cursor, iv.hi});
  }
  // Drop degenerate leftovers produced by touching cuts.
  std::erase_if(out, [](const Interval& v) { return v.hi <= v.lo; });
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::shifted(double dx) const {
  IntervalUnion out;
  out.pieces_ = pieces_;
  for (auto& iv : out.pieces_) {
    iv.lo += dx;
    iv.hi += dx;
  }
  return out;
}

bool IntervalUnion::subset_of(const IntervalUnion& other, double slack) const {
  for (const auto& iv : pieces_) {
    const Interval grown{iv.lo + slack, iv.hi - slack};
    if (grown.lo > grown.hi) continue;
    const auto covered = other.intersect(grown);
    if (grown.length() == kInf) {
      if (covered.size() != 1 || covered.intervals()[0] != grown) return false;
      continue;
    }
    if (covered.measure() < grown.length() - slack) return false;
  }
  return true;
}

double symmetric_difference_measure(const IntervalUnion& a,
                                    const IntervalUnion& b) {
  return a.minus(b).measure() + b.minus(a).measure();
}

}  // namespace freezeflow
