#pragma once

#include <vector>

namespace qdot {

// Piecewise-linear interpolant over an ascending abscissa grid.  Evaluation
// outside the tabulated range throws NumericError (no extrapolation).
class LinearInterp {
  public:
    LinearInterp() = default;
    LinearInterp(std::vector<double> x, std::vector<double> y);

    double operator()(double xq) const;
    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    bool empty() const { return x_.empty(); }

    // Insert or replace a node, keeping the grid ascending.
    void pin(double x, double y);

  private:
    std::vector<double> x_, y_;
};

}  // namespace qdot
