#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fracheat {

/// a s^p (1 + ln(1 + s))^γ
struct PowerLogTerm {
  double a = 1.0;
  double p = 1.0;
  double gamma = 0.0;
};

/// Continuous non-decreasing f: [0, ∞) → [0, ∞).
///
/// Either a sum of PowerLog terms (the empty sum is f ≡ 0) or a table with
/// linear interpolation, constant below the first knot and a power law fitted
/// on the last two decades of knots above the last one.
/// Monotonicity and non-negativity are checked at construction on a
/// 1000-point log grid.
class GrowthFunction {
 public:
  enum class Form { power_log, table };

  static GrowthFunction power_log(std::vector<PowerLogTerm> terms);
  static GrowthFunction power(double p, double a = 1.0) { return power_log({{a, p, 0.0}}); }
  static GrowthFunction table(std::vector<double> knots, std::vector<double> values);
  /// "zero", "powerlog:a,p,g[+powerlog:a,p,g...]" or "table:s/v,s/v,...".
  static GrowthFunction parse(std::string_view spec);
  /// Two-column CSV (s, f), optional header line.
  static GrowthFunction from_csv(const std::string& path);

  double operator()(double s) const;
  Form form() const { return form_; }
  const std::vector<PowerLogTerm>& terms() const { return terms_; }
  const std::vector<double>& knots() const { return knots_; }
  /// Inverse of parse.
  std::string describe() const;
  GrowthFunction scaled(double c) const;

 private:
  GrowthFunction() = default;
  void check_monotone() const;

  Form form_ = Form::power_log;
  std::vector<PowerLogTerm> terms_;
  std::vector<double> knots_;
  std::vector<double> values_;
  double tail_exponent_ = 0.0;
};

}  // namespace fracheat
