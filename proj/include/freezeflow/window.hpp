#pragma once

namespace freezeflow {

// Space-time rectangle [x0, x1] x [t0, t1].
struct Window {
  double x0 = 0.0;
  double x1 = 1.0;
  double t0 = 0.0;
  double t1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return t1 - t0; }
};

}  // namespace freezeflow
