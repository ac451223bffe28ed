#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lfr {

// Statistic value with a labeled term-by-term breakdown; total is always the
// exact sum of the terms.  Serialization is deterministic: fixed key order,
// 17 significant digits.
struct PredictionReport {
  std::string statistic;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, double>> terms;
  double total = 0.0;

  std::optional<double> empirical;
  std::optional<double> discrepancy_abs;
  std::optional<double> discrepancy_rel;
  std::optional<double> fluctuation_budget;
  std::optional<double> error_budget;  // known-unknown band, not part of total
  std::string note;

  void add_term(std::string label, double value) {
    terms.emplace_back(std::move(label), value);
    total += value;
  }
  void add_input(std::string key, std::string value) {
    inputs.emplace_back(std::move(key), std::move(value));
  }
  void attach_empirical(double value);
};

std::string format_g17(double x);
std::string report_to_json(const PredictionReport& r);
std::string report_to_csv(const PredictionReport& r);

}  // namespace lfr
