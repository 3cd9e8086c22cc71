#include "freezeflow/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "freezeflow/errors.hpp"
#include "freezeflow/parallel.hpp"

namespace freezeflow {

const char* corner_kind_name(CornerKind k) {
  switch (k) {
    case CornerKind::FreezeThaw:
      return "freeze_thaw";
    case CornerKind::ThawFreeze:
      return "thaw_freeze";
    case CornerKind::Tip:
      return "tip";
  }
  return "?";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Pt {
  double x;
  double t;
};

// Bisection for the switch of a boolean predicate on [0, 1], given its
// value at 0.
template <class F>
double refine_crossing(F&& inside, bool at_a, double tol) {
  double a = 0.0, b = 1.0;
  while (b - a > tol) {
    const double c = 0.5 * (a + b);
    if (inside(c) == at_a) {
      a = c;
    } else {
      b = c;
    }
  }
  return 0.5 * (a + b);
}

// Least-squares quadratic y = c0 + c1 u + c2 u^2; falls back to a line with
// fewer than 4 points and to a constant with one.
std::array<double, 3> fit_quadratic(const std::vector<double>& u,
                                    const std::vector<double>& y) {
  const std::size_t n = u.size();
  if (n == 0) return {kNaN, 0.0, 0.0};
  if (n == 1) return {y[0], 0.0, 0.0};
  const int deg = n >= 4 ? 2 : 1;
  double s[5] = {0, 0, 0, 0, 0}, r[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (int k = 0; k <= 2 * deg; ++k) {
      s[k] += p;
      if (k <= deg) r[k] += p * y[i];
      p *= u[i];
    }
  }
  if (deg == 1) {
    const double det = s[0] * s[2] - s[1] * s[1];
    if (det == 0.0) return {r[0] / s[0], 0.0, 0.0};
    return {(r[0] * s[2] - r[1] * s[1]) / det, (s[0] * r[1] - s[1] * r[0]) / det,
            0.0};
  }
  // 3x3 normal equations by Cramer's rule.
  const double m[3][3] = {{s[0], s[1], s[2]}, {s[1], s[2], s[3]},
                          {s[2], s[3], s[4]}};
  auto det3 = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det3(m);
  if (std::abs(d) < 1e-300) return {r[0] / s[0], 0.0, 0.0};
  std::array<double, 3> out{};
  for (int k = 0; k < 3; ++k) {
    double mk[3][3];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) mk[i][j] = j == k ? r[i] : m[i][j];
    }
    out[static_cast<std::size_t>(k)] = det3(mk) / d;
  }
  return out;
}

double eval_fit(const std::array<double, 3>& c, double u) {
  return c[0] + u * (c[1] + u * c[2]);
}

// Linear interpolation of a sampled graph; xs sorted ascending.
double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double s = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return ys[i] + s * (ys[i + 1] - ys[i]);
}

enum class Regime { Freeze, Thaw };

Regime regime_of(const Pt& a, const Pt& b) {
  return std::abs(b.t - a.t) > std::abs(b.x - a.x) ? Regime::Thaw
                                                   : Regime::Freeze;
}

struct Run {
  Regime regime;
  std::size_t begin;  // vertex indices, inclusive
  std::size_t end;
};

std::vector<Run> make_runs(const std::vector<Pt>& pts) {
  std::vector<Regime> seg;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    seg.push_back(regime_of(pts[i], pts[i + 1]));
  }
  auto build = [&] {
    std::vector<Run> runs;
    for (std::size_t i = 0; i < seg.size(); ++i) {
      if (runs.empty() || runs.back().regime != seg[i]) {
        runs.push_back({seg[i], i, i + 1});
      } else {
        runs.back().end = i + 1;
      }
    }
    return runs;
  };
  // Absorb runs shorter than 3 segments into a neighbour, shortest first.
  for (;;) {
    auto runs = build();
    if (runs.size() <= 1) return runs;
    std::size_t best = runs.size();
    std::size_t best_len = 3;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const std::size_t len = runs[r].end - runs[r].begin;
      if (len < best_len) {
        best = r;
        best_len = len;
      }
    }
    if (best == runs.size()) return runs;
    const Regime other = best > 0 ? runs[best - 1].regime
                                  : runs[best + 1].regime;
    for (std::size_t i = runs[best].begin; i < runs[best].end; ++i) {
      seg[i] = other;
    }
  }
}

struct Branch {
  bool thawing;
  std::size_t index;  // into freezing / thawing
};

class Extractor {
 public:
  Extractor(const SolutionField& field, Window win, GridResolution res,
            BoundaryOptions opts)
      : field_(field), win_(win), res_(res), opts_(opts) {}

  BoundarySet run();

 private:
  bool frozen(double x, double t) const { return field_.frozen_at(x, t); }
  std::size_t node(std::size_t ix, std::size_t it) const {
    return it * res_.nx + ix;
  }
  std::size_t h_edge(std::size_t ix, std::size_t it) const {
    return it * (res_.nx - 1) + ix;
  }
  std::size_t v_edge(std::size_t ix, std::size_t it) const {
    return res_.nt * (res_.nx - 1) + it * res_.nx + ix;
  }
  std::pair<std::size_t, std::size_t> edge_nodes(std::size_t e) const;

  void classify_nodes();
  void refine_edges();
  std::vector<std::pair<std::size_t, std::size_t>> cell_segments();
  std::vector<std::pair<std::vector<Pt>, bool>> link(
      const std::vector<std::pair<std::size_t, std::size_t>>& segs);
  void split_polyline(std::vector<Pt> pts, bool closed);
  Branch add_curve(const std::vector<Pt>& pts, Regime regime);
  void add_corner(const Branch& a, const Branch& b, const Pt& at);
  void add_tip(const Branch& left, const Branch& right, const Pt& at);
  std::vector<Pt> near_points(const Curve& c, const Pt& at) const;

  const SolutionField& field_;
  Window win_;
  GridResolution res_;
  BoundaryOptions opts_;
  std::vector<double> xs_, ts_;
  std::vector<char> frozen_;
  std::vector<Pt> edge_pt_;
  BoundarySet out_;
};

std::pair<std::size_t, std::size_t> Extractor::edge_nodes(std::size_t e) const {
  const std::size_t nh = res_.nt * (res_.nx - 1);
  if (e < nh) {
    const std::size_t it = e / (res_.nx - 1), ix = e % (res_.nx - 1);
    return {node(ix, it), node(ix + 1, it)};
  }
  e -= nh;
  const std::size_t it = e / res_.nx, ix = e % res_.nx;
  return {node(ix, it), node(ix, it + 1)};
}

void Extractor::classify_nodes() {
  xs_ = linspace(win_.x0, win_.x1, res_.nx);
  ts_ = linspace(win_.t0, win_.t1, res_.nt);
  frozen_.assign(res_.nx * res_.nt, 0);
  parallel_for(frozen_.size(), [&](std::size_t k) {
    frozen_[k] = frozen(xs_[k % res_.nx], ts_[k / res_.nx]) ? 1 : 0;
  });
}

void Extractor::refine_edges() {
  const std::size_t total = res_.nt * (res_.nx - 1) + (res_.nt - 1) * res_.nx;
  edge_pt_.assign(total, Pt{kNaN, kNaN});
  std::vector<std::size_t> crossing;
  for (std::size_t e = 0; e < total; ++e) {
    const auto [a, b] = edge_nodes(e);
    if (frozen_[a] != frozen_[b]) crossing.push_back(e);
  }
  parallel_for(crossing.size(), [&](std::size_t k) {
    const std::size_t e = crossing[k];
    const auto [a, b] = edge_nodes(e);
    const Pt pa{xs_[a % res_.nx], ts_[a / res_.nx]};
    const Pt pb{xs_[b % res_.nx], ts_[b / res_.nx]};
    const double s = refine_crossing(
        [&](double u) {
          return frozen(pa.x + u * (pb.x - pa.x), pa.t + u * (pb.t - pa.t));
        },
        frozen_[a] != 0, opts_.edge_tolerance);
    edge_pt_[e] = {pa.x + s * (pb.x - pa.x), pa.t + s * (pb.t - pa.t)};
  });
}

std::vector<std::pair<std::size_t, std::size_t>> Extractor::cell_segments() {
  std::vector<std::pair<std::size_t, std::size_t>> segs;
  std::size_t saddles = 0;
  for (std::size_t it = 0; it + 1 < res_.nt; ++it) {
    for (std::size_t ix = 0; ix + 1 < res_.nx; ++ix) {
      const bool in0 = frozen_[node(ix, it)] != 0;
      const bool in1 = frozen_[node(ix + 1, it)] != 0;
      const bool in2 = frozen_[node(ix + 1, it + 1)] != 0;
      const bool in3 = frozen_[node(ix, it + 1)] != 0;
      // Edges in cyclic order: bottom, right, top, left.
      const std::array<std::size_t, 4> edges{h_edge(ix, it), v_edge(ix + 1, it),
                                             h_edge(ix, it + 1), v_edge(ix, it)};
      const std::array<bool, 4> cross{in0 != in1, in1 != in2, in2 != in3,
                                      in3 != in0};
      std::vector<std::size_t> hit;
      for (std::size_t k = 0; k < 4; ++k) {
        if (cross[k]) hit.push_back(k);
      }
      if (hit.size() == 2) {
        segs.emplace_back(edges[hit[0]], edges[hit[1]]);
      } else if (hit.size() == 4) {
        ++saddles;
        const double cx = 0.5 * (xs_[ix] + xs_[ix + 1]);
        const double ct = 0.5 * (ts_[it] + ts_[it + 1]);
        const bool center_in = frozen(cx, ct);
        if (center_in == in0) {
          segs.emplace_back(edges[0], edges[1]);
          segs.emplace_back(edges[2], edges[3]);
        } else {
          segs.emplace_back(edges[3], edges[0]);
          segs.emplace_back(edges[1], edges[2]);
        }
      }
    }
  }
  if (saddles > 0) {
    std::ostringstream os;
    os << saddles << " ambiguous cell(s): interface features below 2 cells";
    out_.warnings.push_back(os.str());
  }
  return segs;
}

std::vector<std::pair<std::vector<Pt>, bool>> Extractor::link(
    const std::vector<std::pair<std::size_t, std::size_t>>& segs) {
  std::vector<std::array<long, 2>> at(edge_pt_.size(), {-1, -1});
  for (std::size_t s = 0; s < segs.size(); ++s) {
    for (std::size_t e : {segs[s].first, segs[s].second}) {
      auto& slot = at[e];
      (slot[0] < 0 ? slot[0] : slot[1]) = static_cast<long>(s);
    }
  }
  std::vector<bool> used(segs.size(), false);
  auto other_seg = [&](std::size_t e, std::size_t s) -> long {
    const auto& slot = at[e];
    return slot[0] == static_cast<long>(s) ? slot[1] : slot[0];
  };
  auto other_edge = [&](std::size_t s, std::size_t e) {
    return segs[s].first == e ? segs[s].second : segs[s].first;
  };
  std::vector<std::pair<std::vector<Pt>, bool>> lines;
  for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
    if (used[s0]) continue;
    // Walk back to an open end (or around a loop) first.
    std::size_t s = s0;
    std::size_t e = segs[s0].first;
    bool closed = false;
    for (;;) {
      const long prev = other_seg(e, s);
      if (prev < 0) break;
      if (static_cast<std::size_t>(prev) == s0) {
        closed = true;
        break;
      }
      s = static_cast<std::size_t>(prev);
      e = other_edge(s, e);
    }
    // Now walk forward from edge e through segment s.
    std::vector<std::size_t> chain{e};
    const std::size_t start = s;
    for (;;) {
      used[s] = true;
      e = other_edge(s, e);
      chain.push_back(e);
      const long next = other_seg(e, s);
      if (next < 0 || used[static_cast<std::size_t>(next)]) break;
      s = static_cast<std::size_t>(next);
      if (s == start) break;
    }
    std::vector<Pt> pts;
    for (std::size_t id : chain) pts.push_back(edge_pt_[id]);
    if (closed && pts.size() > 1) pts.pop_back();
    lines.emplace_back(std::move(pts), closed);
  }
  return lines;
}

Branch Extractor::add_curve(const std::vector<Pt>& pts, Regime regime) {
  Curve c;
  c.kind = regime == Regime::Thaw ? CurveKind::Thawing : CurveKind::Freezing;
  for (const auto& p : pts) c.samples.push_back({p.x, p.t, kNaN, Zone::Boundary});
  if (regime == Regime::Thaw) {
    std::sort(c.samples.begin(), c.samples.end(),
              [](const auto& a, const auto& b) { return a.t < b.t; });
    out_.thawing.push_back(std::move(c));
    return {true, out_.thawing.size() - 1};
  }
  std::sort(c.samples.begin(), c.samples.end(),
            [](const auto& a, const auto& b) { return a.x < b.x; });
  out_.freezing.push_back(std::move(c));
  return {false, out_.freezing.size() - 1};
}

// Curve samples between 2 and 14 cells from `at`, in cell units.
std::vector<Pt> Extractor::near_points(const Curve& c, const Pt& at) const {
  std::vector<Pt> out;
  for (const auto& s : c.samples) {
    const double d = std::hypot((s.x - at.x) / out_.cell_x,
                                (s.t - at.t) / out_.cell_t);
    if (d >= 1.0 && d <= 6.0) out.push_back({s.x, s.t});
  }
  return out;
}

void Extractor::add_corner(const Branch& a, const Branch& b, const Pt& at) {
  const Branch& fb = a.thawing ? b : a;
  const Branch& tb = a.thawing ? a : b;
  const Curve& fc = out_.freezing[fb.index];
  const Curve& tc = out_.thawing[tb.index];
  const auto fp = near_points(fc, at);
  const auto tp = near_points(tc, at);
  Corner corner;
  corner.first = fb.index;
  corner.second = tb.index;
  corner.x = at.x;
  corner.t = at.t;
  if (fp.size() >= 2 && tp.size() >= 2) {
    std::vector<double> u, y;
    for (const auto& p : fp) {
      u.push_back(p.x - at.x);
      y.push_back(p.t);
    }
    const auto F = fit_quadratic(u, y);  // t as a function of x - at.x
    u.clear();
    y.clear();
    for (const auto& p : tp) {
      u.push_back(p.t - at.t);
      y.push_back(p.x);
    }
    const auto G = fit_quadratic(u, y);  // x as a function of t - at.t
    double x = at.x;
    for (int i = 0; i < 100; ++i) {
      const double t = eval_fit(F, x - at.x);
      const double nx = eval_fit(G, t - at.t);
      if (std::abs(nx - x) < 1e-14 * (1.0 + std::abs(x))) {
        x = nx;
        break;
      }
      x = nx;
    }
    const double t = eval_fit(F, x - at.x);
    if (std::isfinite(x) && std::isfinite(t) &&
        std::abs(x - at.x) < 3.0 * out_.cell_x &&
        std::abs(t - at.t) < 3.0 * out_.cell_t) {
      corner.x = x;
      corner.t = t;
    }
  } else {
    out_.warnings.push_back("corner near (" + std::to_string(at.x) + ", " +
                            std::to_string(at.t) +
                            ") has too few samples to fit; resolution too "
                            "coarse");
  }
  // The freezing branch lying below the thawing branch near the corner means
  // freezing gives way to thawing as time increases.
  const double probe = 3.0 * out_.cell_x;
  std::vector<double> fx, ft;
  for (const auto& s : fc.samples) {
    fx.push_back(s.x);
    ft.push_back(s.t);
  }
  const bool f_right = std::abs(fc.samples.front().x - corner.x) <
                       std::abs(fc.samples.back().x - corner.x);
  const double f_t = interp(fx, ft, corner.x + (f_right ? probe : -probe));
  double t_lo = tc.samples.front().t, t_hi = tc.samples.back().t;
  const bool t_up = std::abs(t_lo - corner.t) < std::abs(t_hi - corner.t);
  const double t_t = std::clamp(corner.t + (t_up ? 1.0 : -1.0) * probe,
                                t_lo, t_hi);
  corner.kind = f_t < t_t ? CornerKind::FreezeThaw : CornerKind::ThawFreeze;
  out_.corners.push_back(corner);
}

void Extractor::add_tip(const Branch& left, const Branch& right, const Pt& at) {
  const Curve& lc = out_.thawing[left.index];
  const Curve& rc = out_.thawing[right.index];
  Corner corner;
  corner.kind = CornerKind::Tip;
  corner.first = left.index;
  corner.second = right.index;
  corner.x = at.x;
  corner.t = at.t;
  const auto lp = near_points(lc, at);
  const auto rp = near_points(rc, at);
  if (lp.size() >= 2 && rp.size() >= 2) {
    auto fit = [&](const std::vector<Pt>& pts) {
      std::vector<double> u, y;
      for (const auto& p : pts) {
        u.push_back(p.t - at.t);
        y.push_back(p.x);
      }
      return fit_quadratic(u, y);
    };
    const auto L = fit(lp), R = fit(rp);
    double t = at.t;
    for (int i = 0; i < 100; ++i) {
      const double u = t - at.t;
      const double d = eval_fit(L, u) - eval_fit(R, u);
      const double dd = (L[1] + 2.0 * L[2] * u) - (R[1] + 2.0 * R[2] * u);
      if (dd == 0.0) break;
      const double step = d / dd;
      t -= step;
      if (std::abs(step) < 1e-14 * (1.0 + std::abs(t))) break;
    }
    const double x = 0.5 * (eval_fit(L, t - at.t) + eval_fit(R, t - at.t));
    if (std::isfinite(x) && std::isfinite(t) &&
        std::abs(x - at.x) < 3.0 * out_.cell_x &&
        std::abs(t - at.t) < 3.0 * out_.cell_t) {
      corner.x = x;
      corner.t = t;
    }
  }
  out_.corners.push_back(corner);
}

void Extractor::split_polyline(std::vector<Pt> pts, bool closed) {
  // An interface through a grid node shows up once per incident edge.
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Pt& a, const Pt& b) {
                          return a.x == b.x && a.t == b.t;
                        }),
            pts.end());
  if (closed && pts.size() > 1 && pts.front().x == pts.back().x &&
      pts.front().t == pts.back().t) {
    pts.pop_back();
  }
  if (pts.size() < 2) return;
  if (pts.size() < 4) {
    out_.warnings.push_back(
        "interface piece with fewer than 4 points near (" +
        std::to_string(pts[0].x) + ", " + std::to_string(pts[0].t) +
        "); resolution too coarse");
  }
  if (closed) {
    // Start the loop at a regime change so runs do not wrap around.
    pts.push_back(pts.front());
    auto runs = make_runs(pts);
    if (runs.size() > 1) {
      const std::size_t k = runs.back().begin;
      std::vector<Pt> rot(pts.begin() + static_cast<long>(k), pts.end() - 1);
      rot.insert(rot.end(), pts.begin(), pts.begin() + static_cast<long>(k));
      rot.push_back(rot.front());
      pts = std::move(rot);
    }
  }
  auto runs = make_runs(pts);
  // Thawing runs that rise and fall again are split at the top (a tip) or
  // bottom; each piece is then a graph over t.
  std::vector<Run> pieces;
  std::vector<std::size_t> tips;  // index into pieces of the left piece
  for (const auto& r : runs) {
    if (r.regime == Regime::Freeze) {
      pieces.push_back(r);
      continue;
    }
    std::size_t b = r.begin;
    for (std::size_t k = r.begin + 3; k + 3 <= r.end; ++k) {
      const double tk = pts[k].t;
      const bool top = tk >= pts[k - 1].t && tk > pts[k + 1].t;
      const bool bottom = tk <= pts[k - 1].t && tk < pts[k + 1].t;
      if (!top && !bottom) continue;
      const double rise_l = std::abs(tk - pts[b].t);
      const double rise_r = std::abs(tk - pts[r.end].t);
      if (rise_l < 2.0 * out_.cell_t || rise_r < 2.0 * out_.cell_t) continue;
      pieces.push_back({Regime::Thaw, b, k});
      if (top) tips.push_back(pieces.size() - 1);
      b = k;
    }
    pieces.push_back({Regime::Thaw, b, r.end});
  }
  std::vector<Branch> branches;
  for (const auto& p : pieces) {
    branches.push_back(add_curve(
        std::vector<Pt>(pts.begin() + static_cast<long>(p.begin),
                        pts.begin() + static_cast<long>(p.end) + 1),
        p.regime));
  }
  auto junction_corner = [&](std::size_t i, std::size_t j) {
    if (pieces[i].regime == pieces[j].regime) return;
    add_corner(branches[i], branches[j], pts[pieces[j].begin]);
  };
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (std::find(tips.begin(), tips.end(), i) != tips.end()) {
      const Pt top = pts[pieces[i].end];
      // Left branch is the one whose samples lie at smaller x.
      const auto& a = out_.thawing[branches[i].index].samples;
      const auto& b = out_.thawing[branches[i + 1].index].samples;
      const double ax = a.front().x + a.back().x;
      const double bx = b.front().x + b.back().x;
      if (ax <= bx) {
        add_tip(branches[i], branches[i + 1], top);
      } else {
        add_tip(branches[i + 1], branches[i], top);
      }
      continue;
    }
    junction_corner(i, i + 1);
  }
  if (closed && pieces.size() > 1 &&
      pieces.back().regime != pieces.front().regime) {
    add_corner(branches.back(), branches.front(), pts.front());
  }
}

BoundarySet Extractor::run() {
  out_.cell_x = win_.width() / static_cast<double>(res_.nx - 1);
  out_.cell_t = win_.height() / static_cast<double>(res_.nt - 1);
  out_.slope_tol = opts_.slope_tol > 0.0 ? opts_.slope_tol : out_.cell_x;
  classify_nodes();
  refine_edges();
  const auto segs = cell_segments();
  for (auto& [pts, closed] : link(segs)) split_polyline(std::move(pts), closed);
  for (std::size_t i = 0; i < out_.corners.size(); ++i) {
    try {
      const auto s = corner_slopes(out_, i);
      auto& c = out_.corners[i];
      c.first_slope = s.freezing_slope;
      c.second_slope = s.thawing_slope;
      c.second_unbounded = s.thawing_unbounded;
      c.slopes_valid = true;
    } catch (const InsufficientSamples& e) {
      out_.warnings.push_back(e.what());
    }
  }
  return std::move(out_);
}

}  // namespace

BoundarySet extract_boundaries(const SolutionField& field,
                               const Window& window,
                               const GridResolution& resolution,
                               const BoundaryOptions& opts) {
  if (resolution.nx < 3 || resolution.nt < 3) {
    throw InvalidProblem("boundary grid needs at least 3x3 nodes");
  }
  if (!(window.x1 > window.x0) || !(window.t1 > window.t0) ||
      window.t0 < 0.0) {
    throw DomainError("boundary window needs x0 < x1 and 0 <= t0 < t1");
  }
  Window w = window;
  const auto& d = field.spec().domain;
  if (d.is_segment()) {
    if (w.x0 < d.a1 || w.x1 > d.a2) {
      throw DomainError("boundary window leaves the segment");
    }
    // v = w holds at the endpoints by the boundary condition; keep them off
    // the grid so they do not show up as an interface.
    const double nudge = 1e-6 * (d.a2 - d.a1);
    w.x0 = std::max(w.x0, d.a1 + nudge);
    w.x1 = std::min(w.x1, d.a2 - nudge);
  }
  return Extractor(field, w, resolution, opts).run();
}

Curve freezing_curve_monotone_case(const ProblemSpec& spec, double y1,
                                   double y2, std::size_t samples) {
  if (!(y2 > y1)) throw InvalidProblem("need y1 < y2");
  for (const auto* f : {&spec.v0, &spec.w0}) {
    const auto xs = f->breakpoints();
    std::vector<double> pts{y1};
    for (double x : xs) {
      if (x > y1 && x < y2) pts.push_back(x);
    }
    pts.push_back(y2);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (!((*f)(pts[i + 1]) > (*f)(pts[i]))) {
        throw InvalidProblem("data not strictly increasing on [y1, y2]");
      }
    }
  }
  Curve c;
  c.kind = CurveKind::Freezing;
  const double lo = std::max(spec.v0(y1), spec.w0(y1));
  const double hi = std::min(spec.v0(y2), spec.w0(y2));
  if (!(hi >= lo) || samples == 0) return c;
  // Inverse of an increasing PL function on [y1, y2].
  auto inverse = [&](const PiecewiseLinear& f, double v) {
    double a = y1, b = y2;
    for (double x : f.breakpoints()) {
      if (x <= y1 || x >= y2) continue;
      if (f(x) <= v) {
        a = std::max(a, x);
      } else {
        b = std::min(b, x);
      }
    }
    const double fa = f(a), fb = f(b);
    if (fb == fa) return a;
    return a + (v - fa) / (fb - fa) * (b - a);
  };
  for (double v : linspace(lo, hi, samples)) {
    const double xi = inverse(spec.v0, v);
    const double eta = inverse(spec.w0, v);
    c.samples.push_back({0.5 * (xi + eta), 0.5 * (eta - xi), v, Zone::Boundary});
  }
  std::sort(c.samples.begin(), c.samples.end(),
            [](const auto& a, const auto& b) { return a.x < b.x; });
  return c;
}

namespace {

// Richardson-extrapolated secant slope of a sampled graph y(u) leaving the
// point (u0, y0) in direction dir.
double richardson(const std::vector<double>& us, const std::vector<double>& ys,
                  double u0, double y0, double dir, double h) {
  auto secant = [&](double step) {
    return (interp(us, ys, u0 + dir * step) - y0) / (dir * step);
  };
  return 2.0 * secant(0.5 * h) - secant(h);
}

struct GraphView {
  std::vector<double> u;
  std::vector<double> y;
};

GraphView freezing_view(const Curve& c) {
  GraphView g;
  for (const auto& s : c.samples) {
    g.u.push_back(s.x);
    g.y.push_back(s.t);
  }
  return g;
}

GraphView thawing_view(const Curve& c) {
  GraphView g;
  for (const auto& s : c.samples) {
    g.u.push_back(s.t);
    g.y.push_back(s.x);
  }
  return g;
}

// Slope along a graph away from the corner end nearest u0.
double branch_slope(const GraphView& g, double u0, double y0, double cell) {
  const bool from_front =
      std::abs(g.u.front() - u0) <= std::abs(g.u.back() - u0);
  const double dir = from_front ? 1.0 : -1.0;
  const double extent = from_front ? g.u.back() - u0 : u0 - g.u.front();
  const double h = std::min(8.0 * cell, 0.8 * extent);
  if (!(h > 0.0)) throw InsufficientSamples("corner branch has no extent");
  return richardson(g.u, g.y, u0, y0, dir, h);
}

}  // namespace

CornerSlopes corner_slopes(const BoundarySet& bset, std::size_t corner_index) {
  if (corner_index >= bset.corners.size()) {
    throw InsufficientSamples("no such corner");
  }
  const Corner& c = bset.corners[corner_index];
  const double cap = 1.0 / (bset.slope_tol > 0.0 ? bset.slope_tol : 1e-3);
  auto thaw_slope = [&](const Curve& curve, bool& unbounded) {
    if (curve.samples.size() < 5) {
      throw InsufficientSamples("thawing branch at corner has < 5 samples");
    }
    const double dxdt =
        branch_slope(thawing_view(curve), c.t, c.x, bset.cell_t);
    if (std::abs(dxdt) * cap < 1.0) {
      unbounded = true;
      // Direction of the branch decides the sign: dt/dx has the sign of
      // dx/dt, which the secant keeps even when the limit is 0.
      const double sign = std::signbit(dxdt) ? -1.0 : 1.0;
      return sign * cap;
    }
    unbounded = false;
    return 1.0 / dxdt;
  };
  CornerSlopes out{0.0, 0.0, false};
  if (c.kind == CornerKind::Tip) {
    bool ul = false, ur = false;
    out.freezing_slope = thaw_slope(bset.thawing.at(c.first), ul);
    out.thawing_slope = thaw_slope(bset.thawing.at(c.second), ur);
    out.thawing_unbounded = ul || ur;
    return out;
  }
  const Curve& f = bset.freezing.at(c.first);
  if (f.samples.size() < 5) {
    throw InsufficientSamples("freezing branch at corner has < 5 samples");
  }
  out.freezing_slope = branch_slope(freezing_view(f), c.x, c.t, bset.cell_x);
  out.thawing_slope =
      thaw_slope(bset.thawing.at(c.second), out.thawing_unbounded);
  return out;
}

}  // namespace freezeflow
