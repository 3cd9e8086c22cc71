#include "freezeflow/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "freezeflow/errors.hpp"

namespace freezeflow {

namespace {

thread_local std::size_t g_events = 0;

struct Seg {
  double lo;
  double hi;
  bool blue;
  bool pinned = false;
};

// Segments sorted by position; blue and red never overlap.
class Annihilation {
 public:
  Annihilation(const IntervalUnion& blue, const IntervalUnion& red) {
    for (const auto& iv : blue.intervals()) {
      if (iv.hi > iv.lo) segs_.push_back({iv.lo, iv.hi, true});
    }
    for (const auto& iv : red.intervals()) {
      if (iv.hi > iv.lo) segs_.push_back({iv.lo, iv.hi, false});
    }
    std::sort(segs_.begin(), segs_.end(),
              [](const Seg& a, const Seg& b) { return a.lo < b.lo; });
    pin_contacts();
  }

  void run(double duration) {
    double left = duration;
    for (;;) {
      const double tau = next_event();
      if (!(tau <= left)) {
        advance(left);
        return;
      }
      apply_events(tau);
      left -= tau;
    }
  }

  IntervalUnion collect(bool blue) const {
    std::vector<Interval> out;
    for (const auto& s : segs_) {
      if (s.blue == blue) out.push_back({s.lo, s.hi});
    }
    return IntervalUnion(std::move(out));
  }

 private:
  // Pairs blue-then-red whose ends touch or cross become pinned at the
  // midpoint of the two ends.
  void pin_contacts() {
    for (std::size_t i = 0; i + 1 < segs_.size(); ++i) {
      auto& a = segs_[i];
      auto& b = segs_[i + 1];
      if (a.blue && !b.blue && !a.pinned && a.hi >= b.lo) {
        const double m = 0.5 * (a.hi + b.lo);
        a.hi = m;
        b.lo = m;
        a.pinned = b.pinned = true;
        ++g_events;
      }
    }
  }

  double next_event() const {
    double best = kInf;
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      const auto& a = segs_[i];
      if (a.pinned) {
        best = std::min(best, a.hi - a.lo);
      } else if (a.blue && i + 1 < segs_.size() && !segs_[i + 1].blue) {
        best = std::min(best, 0.5 * (segs_[i + 1].lo - a.hi));
      }
    }
    return best;
  }

  static void move(Seg& s, double dt) {
    if (s.blue) {
      s.lo += dt;
      if (!s.pinned) s.hi += dt;
    } else {
      s.hi -= dt;
      if (!s.pinned) s.lo -= dt;
    }
  }

  void advance(double dt) {
    if (dt <= 0.0) return;
    for (auto& s : segs_) move(s, dt);
  }

  void apply_events(double tau) {
    // Contacts due at exactly tau meet at the midpoint of the current gap.
    std::vector<std::pair<std::size_t, double>> meets;
    for (std::size_t i = 0; i + 1 < segs_.size(); ++i) {
      const auto& a = segs_[i];
      const auto& b = segs_[i + 1];
      if (a.blue && !b.blue && !a.pinned && 0.5 * (b.lo - a.hi) <= tau) {
        meets.emplace_back(i, 0.5 * (a.hi + b.lo));
      }
    }
    std::vector<bool> dying(segs_.size(), false);
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      if (segs_[i].pinned && segs_[i].hi - segs_[i].lo <= tau) dying[i] = true;
    }
    advance(tau);
    for (const auto& [i, m] : meets) {
      segs_[i].hi = m;
      segs_[i + 1].lo = m;
      segs_[i].pinned = segs_[i + 1].pinned = true;
      ++g_events;
    }
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      if (!dying[i]) continue;
      ++g_events;
      // Release the partner.
      const std::size_t j = segs_[i].blue ? i + 1 : i - 1;
      if (!dying[j]) segs_[j].pinned = false;
    }
    std::vector<Seg> kept;
    kept.reserve(segs_.size());
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      if (!dying[i] && segs_[i].hi > segs_[i].lo) kept.push_back(segs_[i]);
    }
    segs_ = std::move(kept);
    fix_pins();
    pin_contacts();
  }

  // A pinned segment must have its partner adjacent; clear stale flags.
  void fix_pins() {
    for (std::size_t i = 0; i < segs_.size(); ++i) {
      auto& s = segs_[i];
      if (!s.pinned) continue;
      const bool ok =
          s.blue ? (i + 1 < segs_.size() && !segs_[i + 1].blue &&
                    segs_[i + 1].pinned && segs_[i + 1].lo == s.hi)
                 : (i > 0 && segs_[i - 1].blue && segs_[i - 1].pinned &&
                    segs_[i - 1].hi == s.lo);
      if (!ok) s.pinned = false;
    }
  }

  std::vector<Seg> segs_;
};

}  // namespace

std::size_t last_event_count() { return g_events; }

AnnihilationState annihilate_step(const AnnihilationState& state, double dt) {
  if (!(dt >= 0.0)) throw DomainError("annihilate_step needs dt >= 0");
  g_events = 0;
  Annihilation sim(state.blue, state.red);
  sim.run(dt);
  return {sim.collect(true), sim.collect(false), state.t + dt};
}

std::pair<IntervalUnion, IntervalUnion> oracle_level_sets(
    const ProblemSpec& spec, double b, double t) {
  if (!(t >= 0.0)) throw DomainError("oracle_level_sets needs t >= 0");
  const auto& d = spec.domain;
  const double lo = d.is_segment() ? d.a1 : -kInf;
  const double hi = d.is_segment() ? d.a2 : kInf;
  auto blue = sublevel_set(spec.v0, b, lo, hi);
  auto red = superlevel_set(spec.w0, b, lo, hi);
  if (t == 0.0) return {blue, red};
  // Where both colors hold (v0 = w0 = b on a stretch) they cancel at once.
  const auto both = blue.intersect(red);
  blue = blue.minus(both);
  red = red.minus(both);
  if (d.is_segment()) {
    blue = blue.unite(IntervalUnion::single(-kInf, d.a1));
    red = red.unite(IntervalUnion::single(d.a2, kInf));
  }
  const auto end = annihilate_step({blue, red, 0.0}, t);
  const Interval dom{lo, hi};
  return {end.blue.intersect(dom), end.red.intersect(dom)};
}

SchemeResult grid_scheme(const ProblemSpec& spec, double dx, double t_end,
                         std::optional<std::pair<double, double>> window) {
  if (!(dx > 0.0) || !(t_end >= 0.0)) {
    throw InvalidProblem("grid_scheme needs dx > 0 and t_end >= 0");
  }
  const auto& d = spec.domain;
  const bool segment = d.is_segment();
  double lo, hi;
  if (window) {
    std::tie(lo, hi) = *window;
  } else if (segment) {
    lo = d.a1;
    hi = d.a2;
  } else {
    throw DomainError("grid_scheme on the whole line needs a window");
  }
  if (segment && (lo != d.a1 || hi != d.a2)) {
    throw DomainError("grid_scheme on a segment runs on the whole segment");
  }
  const auto steps =
      static_cast<std::size_t>(std::ceil(t_end / dx - 1e-9));
  const auto cells = static_cast<std::size_t>(std::llround((hi - lo) / dx));
  if (cells == 0 || std::abs(cells * dx - (hi - lo)) > 1e-9 * (hi - lo)) {
    throw InvalidProblem("grid_scheme: dx must divide the window length");
  }
  const std::size_t pad = segment ? 0 : steps + 1;
  const std::size_t n = cells + 1 + 2 * pad;
  std::vector<double> xs(n), v(n), w(n);
  std::vector<bool> frozen(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = lo + (static_cast<double>(i) - static_cast<double>(pad)) * dx;
    v[i] = spec.v0(xs[i]);
    w[i] = spec.w0(xs[i]);
    frozen[i] = v[i] == w[i];
  }
  std::vector<double> nv(n), nw(n);
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      double tv = i > 0 ? v[i - 1] : v[i];
      double tw = i + 1 < n ? w[i + 1] : w[i];
      if (segment && i == 0) tv = tw;
      if (segment && i + 1 == n) tw = tv;
      if (frozen[i]) {
        if (tv > tw) {
          nv[i] = tv;
          nw[i] = tw;
          frozen[i] = false;
        } else {
          nv[i] = v[i];
          nw[i] = w[i];
        }
      } else if (tv >= tw) {
        nv[i] = tv;
        nw[i] = tw;
      } else {
        nv[i] = nw[i] = 0.5 * (tv + tw);
        frozen[i] = true;
      }
    }
    std::swap(v, nv);
    std::swap(w, nw);
  }
  SchemeResult r;
  r.t = static_cast<double>(steps) * dx;
  r.xs.assign(xs.begin() + static_cast<long>(pad),
              xs.end() - static_cast<long>(pad));
  r.v.assign(v.begin() + static_cast<long>(pad),
             v.end() - static_cast<long>(pad));
  r.w.assign(w.begin() + static_cast<long>(pad),
             w.end() - static_cast<long>(pad));
  r.frozen.assign(frozen.begin() + static_cast<long>(pad),
                  frozen.end() - static_cast<long>(pad));
  return r;
}

}  // namespace freezeflow
