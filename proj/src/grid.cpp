#include "fracheat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracheat/errors.hpp"

namespace fracheat {

Grid1D Grid1D::dirichlet(double half_width, std::size_t nodes) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw PreconditionError("grid: half-width R must be positive");
  }
  if (nodes < 3) throw PreconditionError("grid: need at least 3 interior nodes");
  return Grid1D(Kind::dirichlet, half_width, nodes);
}

Grid1D Grid1D::periodic(double half_width, std::size_t nodes) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw PreconditionError("grid: half-period L must be positive");
  }
  if (nodes < 4 || nodes % 2 != 0) {
    throw PreconditionError("grid: periodic mode count must be even and >= 4");
  }
  return Grid1D(Kind::periodic, half_width, nodes);
}

double Grid1D::spacing() const {
  return is_periodic() ? 2.0 * half_width_ / static_cast<double>(size_)
                       : 2.0 * half_width_ / static_cast<double>(size_ + 1);
}

double Grid1D::node(std::size_t i) const {
  const double h = spacing();
  return is_periodic() ? -half_width_ + static_cast<double>(i) * h
                       : -half_width_ + static_cast<double>(i + 1) * h;
}

Field::Field(const Grid1D& grid) : grid_(grid), values_(grid.size(), 0.0) {}

Field::Field(const Grid1D& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw PreconditionError("field: value count does not match the grid");
  }
}

double Field::norm_lq(double q) const {
  if (!(q >= 1.0)) throw PreconditionError("field: Lebesgue exponent must be >= 1");
  const double h = grid_.spacing();
  const double top = max_abs();
  if (top == 0.0 || !std::isfinite(top)) return top;
  if (q == 1.0) {
    double s = 0.0;
    for (double v : values_) s += std::abs(v);
    return h * s;
  }
  // Scale by the maximum so large values and large q do not overflow.
  double s = 0.0;
  for (double v : values_) s += std::pow(std::abs(v) / top, q);
  return top * std::pow(h * s, 1.0 / q);
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) {
    if (std::isnan(v)) return v;
    m = std::max(m, std::abs(v));
  }
  return m;
}

double Field::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double Field::integral() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return grid_.spacing() * s;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other, "field +=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Field& Field::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }

Field operator*(double c, Field a) { return a *= c; }

void require_same_grid(const Field& a, const Field& b, const char* where) {
  if (!(a.grid() == b.grid())) {
    throw PreconditionError(std::string(where) + ": grid mismatch");
  }
}

Field indicator(const Grid1D& grid, double radius, double center) {
  if (!(radius >= 0.0)) throw PreconditionError("indicator: radius must be >= 0");
  Field out(grid);
  const double h = grid.spacing();
  const double period = 2.0 * grid.half_width();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.node(i);
    double covered = 0.0;
    const int wraps = grid.is_periodic() ? 1 : 0;
    for (int k = -wraps; k <= wraps; ++k) {
      const double c = center + k * period;
      const double lo = std::max(x - 0.5 * h, c - radius);
      const double hi = std::min(x + 0.5 * h, c + radius);
      covered += std::max(0.0, hi - lo);
    }
    const double frac = covered / h;
    out[i] = frac > 1.0 - 1e-12 ? 1.0 : (frac < 1e-12 ? 0.0 : frac);
  }
  return out;
}

Field sample(const Grid1D& grid, const std::function<double(double)>& fn) {
  Field out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = fn(grid.node(i));
  return out;
}

}  // namespace fracheat
