#include "fracheat/growth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracheat/errors.hpp"
#include "fracheat/numeric.hpp"

namespace fracheat {

GrowthFunction GrowthFunction::power_log(std::vector<PowerLogTerm> terms) {
  for (const auto& t : terms) {
    if (!(t.a > 0.0) || !std::isfinite(t.a)) throw PreconditionError("growth: need a > 0");
    if (!(t.p >= 0.0) || !std::isfinite(t.p)) throw PreconditionError("growth: need p >= 0");
    if (!std::isfinite(t.gamma)) throw PreconditionError("growth: gamma must be finite");
  }
  GrowthFunction f;
  f.form_ = Form::power_log;
  f.terms_ = std::move(terms);
  f.check_monotone();
  return f;
}

GrowthFunction GrowthFunction::table(std::vector<double> knots, std::vector<double> values) {
  if (knots.size() != values.size() || knots.empty()) {
    throw PreconditionError("growth table: need matching, non-empty knot and value lists");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i] >= 0.0) || !std::isfinite(knots[i]) || !(values[i] >= 0.0) ||
        !std::isfinite(values[i])) {
      throw PreconditionError("growth table: knots and values must be finite and >= 0");
    }
    if (i > 0 && !(knots[i] > knots[i - 1])) {
      throw PreconditionError("growth table: knots must be strictly increasing");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw PreconditionError("growth table: values must be non-decreasing");
    }
  }
  GrowthFunction f;
  f.form_ = Form::table;
  f.knots_ = std::move(knots);
  f.values_ = std::move(values);
  // Least-squares power law on the knots within two decades of the last one.
  const double s_last = f.knots_.back();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
  for (std::size_t i = 0; i < f.knots_.size(); ++i) {
    if (f.knots_[i] < s_last / 100.0 || f.knots_[i] <= 0.0 || f.values_[i] <= 0.0) continue;
    const double x = std::log(f.knots_[i]);
    const double y = std::log(f.values_[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1;
  }
  const double denom = n * sxx - sx * sx;
  if (n >= 2 && denom > 0.0) f.tail_exponent_ = std::max(0.0, (n * sxy - sx * sy) / denom);
  f.check_monotone();
  return f;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& s, std::string_view context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw PreconditionError("growth: bad number '" + s + "' in '" + std::string(context) + "'");
  }
  return v;
}

}  // namespace

GrowthFunction GrowthFunction::parse(std::string_view spec) {
  if (spec == "zero") return power_log({});
  if (spec.starts_with("table:")) {
    std::vector<double> knots, values;
    for (const auto& pair : split(spec.substr(6), ',')) {
      const auto kv = split(pair, '/');
      if (kv.size() != 2) throw PreconditionError("growth: table entries must be s/v");
      knots.push_back(to_double(kv[0], spec));
      values.push_back(to_double(kv[1], spec));
    }
    return table(std::move(knots), std::move(values));
  }
  std::vector<PowerLogTerm> terms;
  for (const auto& part : split(spec, '+')) {
    if (!part.starts_with("powerlog:")) {
      throw PreconditionError("growth: expected 'powerlog:a,p,gamma', 'table:...' or 'zero', got '" +
                              std::string(spec) + "'");
    }
    const auto nums = split(std::string_view(part).substr(9), ',');
    if (nums.size() != 3) throw PreconditionError("growth: powerlog needs three numbers a,p,gamma");
    terms.push_back({to_double(nums[0], spec), to_double(nums[1], spec), to_double(nums[2], spec)});
  }
  return power_log(std::move(terms));
}

GrowthFunction GrowthFunction::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("growth: cannot open table file " + path);
  std::vector<double> knots, values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 2) throw PreconditionError("growth: table rows need two columns: " + line);
    if (first) {
      first = false;
      char* end = nullptr;
      std::strtod(cols[0].c_str(), &end);
      if (end == cols[0].c_str()) continue;  // header
    }
    knots.push_back(to_double(cols[0], path));
    values.push_back(to_double(cols[1], path));
  }
  return table(std::move(knots), std::move(values));
}

double GrowthFunction::operator()(double s) const {
  if (form_ == Form::power_log) {
    double v = 0.0;
    for (const auto& t : terms_) {
      double term = t.a * std::pow(s, t.p);
      if (t.gamma != 0.0) term *= std::pow(1.0 + std::log1p(s), t.gamma);
      v += term;
    }
    return v;
  }
  if (s <= knots_.front()) return values_.front();
  if (s >= knots_.back()) return values_.back() * std::pow(s / knots_.back(), tail_exponent_);
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  const auto j = static_cast<std::size_t>(it - knots_.begin());
  const double w = (s - knots_[j - 1]) / (knots_[j] - knots_[j - 1]);
  return values_[j - 1] + w * (values_[j] - values_[j - 1]);
}

void GrowthFunction::check_monotone() const {
  const auto grid = logspace(1e-12, 1e15, 1000);
  double prev = (*this)(0.0);
  if (!(prev >= 0.0)) throw PreconditionError("growth: f(0) must be >= 0");
  for (double s : grid) {
    const double v = (*this)(s);
    if (!(v >= 0.0)) throw PreconditionError("growth: f must be non-negative");
    if (v < prev * (1.0 - 1e-12)) {
      throw PreconditionError("growth: f must be non-decreasing (fails near s=" +
                              format_double(s) + ")");
    }
    prev = v;
  }
}

std::string GrowthFunction::describe() const {
  std::ostringstream out;
  if (form_ == Form::table) {
    out << "table:";
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      if (i) out << ',';
      out << format_double(knots_[i]) << '/' << format_double(values_[i]);
    }
    return out.str();
  }
  if (terms_.empty()) return "zero";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out << '+';
    out << "powerlog:" << format_double(terms_[i].a) << ',' << format_double(terms_[i].p) << ','
        << format_double(terms_[i].gamma);
  }
  return out.str();
}

GrowthFunction GrowthFunction::scaled(double c) const {
  if (!(c > 0.0)) throw PreconditionError("growth: scale must be positive");
  if (form_ == Form::table) {
    auto v = values_;
    for (double& x : v) x *= c;
    return table(knots_, std::move(v));
  }
  auto t = terms_;
  for (auto& term : t) term.a *= c;
  return power_log(std::move(t));
}

}  // namespace fracheat
