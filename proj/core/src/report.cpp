#include "lfr/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lfr {

void PredictionReport::attach_empirical(double value) {
  empirical = value;
  discrepancy_abs = value - total;
  discrepancy_rel = total != 0.0 ? (value - total) / total : 0.0;
}

std::string format_g17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void json_string(std::ostringstream& out, const std::string& s) {
  out << '"';
  for (char c : s) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\t': out << "\\t"; break;
      default: out << c;
    }
  }
  out << '"';
}

}  // namespace

std::string report_to_json(const PredictionReport& r) {
  std::ostringstream out;
  out << "{\n  \"statistic\": ";
  json_string(out, r.statistic);
  out << ",\n  \"inputs\": {";
  for (size_t i = 0; i < r.inputs.size(); ++i) {
    if (i) out << ", ";
    json_string(out, r.inputs[i].first);
    out << ": ";
    json_string(out, r.inputs[i].second);
  }
  out << "},\n  \"terms\": {";
  for (size_t i = 0; i < r.terms.size(); ++i) {
    if (i) out << ", ";
    json_string(out, r.terms[i].first);
    out << ": " << format_g17(r.terms[i].second);
  }
  out << "},\n  \"total\": " << format_g17(r.total);
  if (r.empirical) out << ",\n  \"empirical\": " << format_g17(*r.empirical);
  if (r.discrepancy_abs) out << ",\n  \"discrepancy_abs\": " << format_g17(*r.discrepancy_abs);
  if (r.discrepancy_rel) out << ",\n  \"discrepancy_rel\": " << format_g17(*r.discrepancy_rel);
  if (r.fluctuation_budget)
    out << ",\n  \"fluctuation_budget\": " << format_g17(*r.fluctuation_budget);
  if (r.error_budget) out << ",\n  \"error_budget\": " << format_g17(*r.error_budget);
  if (!r.note.empty()) {
    out << ",\n  \"note\": ";
    json_string(out, r.note);
  }
  out << "\n}\n";
  return out.str();
}

std::string report_to_csv(const PredictionReport& r) {
  std::ostringstream out;
  out << "statistic,label,value\n";
  for (const auto& [label, value] : r.terms)
    out << r.statistic << "," << label << "," << format_g17(value) << "\n";
  out << r.statistic << ",total," << format_g17(r.total) << "\n";
  if (r.empirical) out << r.statistic << ",empirical," << format_g17(*r.empirical) << "\n";
  if (r.discrepancy_abs)
    out << r.statistic << ",discrepancy_abs," << format_g17(*r.discrepancy_abs) << "\n";
  if (r.discrepancy_rel)
    out << r.statistic << ",discrepancy_rel," << format_g17(*r.discrepancy_rel) << "\n";
  if (r.fluctuation_budget)
    out << r.statistic << ",fluctuation_budget," << format_g17(*r.fluctuation_budget) << "\n";
  if (r.error_budget)
    out << r.statistic << ",error_budget," << format_g17(*r.error_budget) << "\n";
  return out.str();
}

}  // namespace lfr
