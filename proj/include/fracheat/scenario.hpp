#pragma once

#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fracheat {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;  ///< acceptance failed, or an unexpected exception
inline constexpr int precondition = 2;
inline constexpr int numerical = 3;
inline constexpr int inconclusive = 4;
}  // namespace exit_code

/// Flat key/value scenario description. Text form: one `key = value` per line,
/// '#' starts a comment. JSON form: an object of scalars (arrays are joined
/// with commas). Values are kept as strings until the experiment reads them.
class ScenarioConfig {
 public:
  ScenarioConfig() = default;
  explicit ScenarioConfig(std::string experiment) { set("experiment", std::move(experiment)); }

  /// Accepts either form; JSON is detected by a leading '{'.
  static ScenarioConfig parse(std::string_view text);
  /// A JSON array of objects gives several scenarios; anything else gives one.
  static std::vector<ScenarioConfig> parse_list(std::string_view text);
  static std::vector<ScenarioConfig> load(const std::string& path);

  /// key=value lines in key order; parse(serialize()) reproduces the config.
  std::string serialize() const;
  std::string to_json() const;

  void set(std::string key, std::string value);
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double number(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  bool flag(const std::string& key) const;
  std::string experiment() const { return get("experiment", ""); }
  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// Known experiment and no keys outside its vocabulary.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;

 private:
  std::map<std::string, std::string> entries_;
};

/// Runs one scenario, writing its artifacts and a short summary to `out`.
/// Errors are reported on `err` and mapped to exit codes.
int run(const ScenarioConfig& config, std::ostream& out, std::ostream& err);

/// Runs scenarios concurrently (at most FRACHEAT_THREADS at once, default 1)
/// and prints their output in list order. Returns the first non-zero code.
int run_all(const std::vector<ScenarioConfig>& configs, std::ostream& out, std::ostream& err);

}  // namespace fracheat
