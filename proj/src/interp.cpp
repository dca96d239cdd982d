#include "qdot/interp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdot/errors.hpp"

namespace qdot {

LinearInterp::LinearInterp(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
        throw ConfigError("LinearInterp: need matching x/y with at least two nodes");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1])) throw ConfigError("LinearInterp: abscissae must ascend");
}

double LinearInterp::operator()(double xq) const {
    if (empty()) throw NumericError("LinearInterp: empty table");
    const double eps = 1e-12 * (x_.back() - x_.front());
    if (xq < x_.front() - eps || xq > x_.back() + eps) {
        std::ostringstream os;
        os << "interpolation range exceeded: " << xq << " outside [" << x_.front() << ", "
           << x_.back() << "]";
        throw NumericError(os.str());
    }
    xq = std::clamp(xq, x_.front(), x_.back());
    auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    std::size_t i = (it == x_.begin()) ? 1 : (it - x_.begin());
    if (i >= x_.size()) i = x_.size() - 1;
    const double t = (xq - x_[i - 1]) / (x_[i] - x_[i - 1]);
    return y_[i - 1] + t * (y_[i] - y_[i - 1]);
}

void LinearInterp::pin(double x, double y) {
    auto it = std::lower_bound(x_.begin(), x_.end(), x);
    const std::size_t i = it - x_.begin();
    if (it != x_.end() && std::abs(*it - x) < 1e-12) {
        y_[i] = y;
        return;
    }
    x_.insert(it, x);
    y_.insert(y_.begin() + i, y);
}

}  // namespace qdot
