#include "fracheat/plot.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include "fracheat/csv.hpp"
#include "fracheat/errors.hpp"

namespace fracheat {

namespace {

const std::map<std::string, std::vector<std::string>>& required_columns() {
  static const std::map<std::string, std::vector<std::string>> cols = {
      {"kernel", {"t", "r", "p", "min_form", "sum_form"}},
      {"semigroup", {"t", "M_t"}},
      {"solve", {"t", "norm_lq", "status"}},
      {"escalation", {"K", "sup_norm_lq", "t_star"}},
  };
  return cols;
}

std::string col(const std::string& name) { return "(column(\"" + name + "\"))"; }

}  // namespace

std::string emit_plot_script(const std::string& csv_path, const std::string& kind,
                             const std::string& script_path) {
  const auto it = required_columns().find(kind);
  if (it == required_columns().end()) throw PreconditionError("plot: unknown kind '" + kind + "'");
  const auto table = CsvTable::read(csv_path);
  const auto& header = table.header();
  for (const auto& c : it->second) {
    if (std::find(header.begin(), header.end(), c) == header.end()) {
      throw PreconditionError("plot: " + csv_path + " lacks column '" + c + "'");
    }
  }
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set terminal pngcairo size 900,600\n"
     << "set output '" << csv_path << ".png'\n";
  const std::string data = "'" + csv_path + "'";
  if (kind == "kernel") {
    gp << "set logscale xy\nset xlabel 'r'\nset ylabel 'density'\n"
       << "plot " << data << " using " << col("r") << ":" << col("p") << " with points title 'p', \\\n"
       << "     " << data << " using " << col("r") << ":" << col("min_form")
       << " with points title 'min form', \\\n"
       << "     " << data << " using " << col("r") << ":" << col("sum_form")
       << " with points title 'sum form'\n";
  } else if (kind == "semigroup") {
    gp << "set logscale xy\nset xlabel 't'\nset ylabel 'M(t)'\n"
       << "plot " << data << " using " << col("t") << ":" << col("M_t") << " with linespoints title 'M(t)'\n";
  } else if (kind == "solve") {
    const auto s = std::find(header.begin(), header.end(), "status") - header.begin();
    const auto t = std::find(header.begin(), header.end(), "t") - header.begin();
    if (!table.rows().empty() && table.rows().back()[s] == "blowup_detected") {
      gp << "set arrow from " << table.rows().back()[t] << ", graph 0 to "
         << table.rows().back()[t] << ", graph 1 nohead dashtype 2\n"
         << "set label 't_star' at " << table.rows().back()[t] << ", graph 0.95\n";
    }
    gp << "set logscale y\nset xlabel 't'\nset ylabel 'L^q norm'\n"
       << "plot " << data << " using " << col("t") << ":" << col("norm_lq")
       << " with lines title 'norm_lq'\n";
  } else {
    gp << "set logscale y\nset xlabel 'K'\nset ylabel 'sup L^q norm'\nset xtics 1\n"
       << "plot " << data << " using " << col("K") << ":" << col("sup_norm_lq")
       << " with linespoints title 'sup norm'\n";
  }
  const std::string path = script_path.empty() ? csv_path + ".gp" : script_path;
  write_text(path, gp.str());
  return path;
}

}  // namespace fracheat
