#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracheat {

/// Uniform 1-D mesh.
///
/// Dirichlet: N interior nodes of (-R, R), h = 2R/(N+1), x_i = -R + (i+1)h;
/// the exterior (including ±R) carries the value zero.
/// Periodic: M nodes of the torus [-L, L), h = 2L/M, x_i = -L + i h.
class Grid1D {
 public:
  enum class Kind { dirichlet, periodic };

  static Grid1D dirichlet(double half_width, std::size_t nodes);
  static Grid1D periodic(double half_width, std::size_t nodes);

  Kind kind() const { return kind_; }
  bool is_periodic() const { return kind_ == Kind::periodic; }
  double half_width() const { return half_width_; }
  std::size_t size() const { return size_; }
  double spacing() const;
  double node(std::size_t i) const;

  bool operator==(const Grid1D&) const = default;

 private:
  Grid1D(Kind kind, double half_width, std::size_t size)
      : kind_(kind), half_width_(half_width), size_(size) {}

  Kind kind_;
  double half_width_;
  std::size_t size_;
};

/// Grid function with the discrete Lebesgue norms (h Σ |u_i|^q)^{1/q}.
class Field {
 public:
  explicit Field(const Grid1D& grid);
  Field(const Grid1D& grid, std::vector<double> values);

  const Grid1D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  double norm_lq(double q) const;
  double norm_l1() const { return norm_lq(1.0); }
  double max_abs() const;
  double min_value() const;
  /// h Σ u_i
  double integral() const;
  bool all_finite() const;

  Field& operator+=(const Field& other);
  Field& operator*=(double c);

 private:
  Grid1D grid_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator*(double c, Field a);

/// Throws PreconditionError unless both fields live on the same grid.
void require_same_grid(const Field& a, const Field& b, const char* where);

/// Cell-average indicator of [center - radius, center + radius]: node i gets
/// |[x_i - h/2, x_i + h/2] ∩ ball| / h, so h Σ χ equals the ball length
/// whenever the ball stays inside the mesh. Periodic grids wrap around.
Field indicator(const Grid1D& grid, double radius, double center = 0.0);

Field sample(const Grid1D& grid, const std::function<double(double)>& fn);

}  // namespace fracheat
