#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "symdom/curves.hpp"
#include "symdom/rescaling.hpp"

namespace symdom::io {

using nlohmann::json;

/// Throws std::invalid_argument when j carries a key outside `allowed`.
void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& context);

json domain_to_json(const DomainSpec& d);
DomainSpec domain_from_json(const json& j);

Complex complex_from_json(const json& j);  // [re, im]
json complex_to_json(Complex z);
VectorXcd cvector_from_json(const json& j);  // [[re, im], ...]
json cvector_to_json(const VectorXcd& v);

json curve_to_json(const CurveSpec& c);
CurveSpec curve_from_json(const json& j);

json rescale_report_to_json(const RescaleReport& r);

/// Floats with 17 significant digits (byte-stable across runs).
std::string fmt17(double x);

/// Minimal CSV emitter: one header row, fmt17 numbers.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<double>& vals);
  void row_mixed(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
};

}  // namespace symdom::io
