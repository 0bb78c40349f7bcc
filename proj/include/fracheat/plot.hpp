#pragma once

#include <string>

namespace fracheat {

/// Writes a gnuplot script next to a CSV produced by the runner.
/// kind: "kernel" (p and envelopes against r), "semigroup" (M(t)),
/// "solve" (norm_lq against t, with a t_star marker on blowup) or
/// "escalation" (sup_norm_lq against K). Returns the script path
/// (csv_path + ".gp" unless given). Throws PreconditionError when the CSV
/// lacks a column the plot needs.
std::string emit_plot_script(const std::string& csv_path, const std::string& kind,
                             const std::string& script_path = "");

}  // namespace fracheat
