#include "symdom/io.hpp"

#include <cstdio>

namespace symdom::io {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& context) {
  if (!j.is_object())
    throw std::invalid_argument(context + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw std::invalid_argument(context + ": unknown field \"" + item.key() + "\"");
  }
}

json domain_to_json(const DomainSpec& d) {
  json j;
  switch (d.kind()) {
    case Kind::TypeI:
      j["kind"] = "I";
      j["p"] = d.p();
      j["q"] = d.q();
      break;
    case Kind::TypeII:
      j["kind"] = "II";
      j["n"] = d.n();
      break;
    case Kind::TypeIII:
      j["kind"] = "III";
      j["n"] = d.n();
      break;
    case Kind::TypeIV:
      j["kind"] = "IV";
      j["n"] = d.n();
      break;
    case Kind::Polydisk:
      j["kind"] = "polydisk";
      j["r"] = d.r();
      break;
    case Kind::Product: {
      j["kind"] = "product";
      j["factors"] = json::array();
      for (const auto& f : d.factors()) j["factors"].push_back(domain_to_json(f));
      break;
    }
  }
  return j;
}

DomainSpec domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("domain: expected an object with a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "I") {
    reject_unknown_keys(j, {"kind", "p", "q"}, "domain I");
    return DomainSpec::type_i(j.at("p").get<int>(), j.at("q").get<int>());
  }
  if (kind == "II") {
    reject_unknown_keys(j, {"kind", "n"}, "domain II");
    return DomainSpec::type_ii(j.at("n").get<int>());
  }
  if (kind == "III") {
    reject_unknown_keys(j, {"kind", "n"}, "domain III");
    return DomainSpec::type_iii(j.at("n").get<int>());
  }
  if (kind == "IV") {
    reject_unknown_keys(j, {"kind", "n"}, "domain IV");
    return DomainSpec::type_iv(j.at("n").get<int>());
  }
  if (kind == "polydisk") {
    reject_unknown_keys(j, {"kind", "r"}, "domain polydisk");
    return DomainSpec::polydisk(j.at("r").get<int>());
  }
  if (kind == "product") {
    reject_unknown_keys(j, {"kind", "factors"}, "domain product");
    std::vector<DomainSpec> fs;
    for (const auto& f : j.at("factors")) fs.push_back(domain_from_json(f));
    return DomainSpec::product(std::move(fs));
  }
  throw std::invalid_argument("domain: unknown kind \"" + kind + "\"");
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex: expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

VectorXcd cvector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector: expected an array");
  VectorXcd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex_from_json(j[i]);
  return v;
}

json cvector_to_json(const VectorXcd& v) {
  json j = json::array();
  for (int i = 0; i < v.size(); ++i) j.push_back(complex_to_json(v[i]));
  return j;
}

json curve_to_json(const CurveSpec& c) {
  json j;
  j["domain"] = domain_to_json(c.domain);
  j["coeffs"] = json::array();
  for (const auto& row : c.coeffs) {
    json r = json::array();
    for (Complex v : row) r.push_back(complex_to_json(v));
    j["coeffs"].push_back(r);
  }
  j["b0"] = complex_to_json(c.b0);
  j["valid_radius"] = c.valid_radius;
  j["metric"] = (c.metric == MetricKind::KE) ? "ke" : "bergman";
  return j;
}

CurveSpec curve_from_json(const json& j) {
  reject_unknown_keys(j, {"domain", "coeffs", "b0", "valid_radius", "metric"},
                      "curve");
  CurveSpec c;
  c.domain = domain_from_json(j.at("domain"));
  for (const auto& row : j.at("coeffs")) {
    std::vector<Complex> r;
    for (const auto& v : row) r.push_back(complex_from_json(v));
    c.coeffs.push_back(std::move(r));
  }
  c.b0 = complex_from_json(j.at("b0"));
  if (std::abs(std::abs(c.b0) - 1.0) > 1e-12)
    throw std::invalid_argument("curve: b0 must have unit modulus");
  c.valid_radius = j.value("valid_radius", 0.2);
  const std::string metric = j.value("metric", std::string("ke"));
  if (metric == "ke") {
    c.metric = MetricKind::KE;
  } else if (metric == "bergman") {
    c.metric = MetricKind::Bergman;
  } else {
    throw std::invalid_argument("curve: metric must be \"ke\" or \"bergman\"");
  }
  if (static_cast<int>(c.coeffs.size()) != c.domain.dim())
    throw std::invalid_argument("curve: coeffs rows must equal the domain dimension");
  return c;
}

json rescale_report_to_json(const RescaleReport& r) {
  json j;
  j["m0"] = r.m0;
  j["grid"] = json::array();
  for (Complex g : r.grid) j["grid"].push_back(complex_to_json(g));
  j["steps"] = json::array();
  for (const auto& s : r.steps) {
    json js;
    js["k"] = s.k;
    js["wk"] = complex_to_json(s.wk);
    js["normal_form"] = s.nf0.values;
    js["sigma2_0"] = s.sigma2_0;
    js["lambda0"] = s.lambda0;
    js["cauchy"] = s.cauchy;
    json germ = json::array();
    for (const auto& g : s.germ) germ.push_back(cvector_to_json(g));
    js["germ"] = germ;
    j["steps"].push_back(js);
  }
  j["limit"] = {{"normal_form", r.limit_nf0.values},
                {"rank", r.limit_nf0.rank},
                {"sigma2", r.limit_sigma2},
                {"sigma2_boundary", r.sigma2_boundary},
                {"nf_grid_dev", r.nf_grid_dev},
                {"sigma2_grid_dev", r.sigma2_grid_dev},
                {"isometry_rel_dev", r.isometry_rel_dev}};
  j["verdicts"] = {{"converged", r.verdicts.converged},
                   {"nf_grid_constant", r.verdicts.nf_grid_constant},
                   {"sigma2_grid_constant", r.verdicts.sigma2_grid_constant},
                   {"isometry_ok", r.verdicts.isometry_ok},
                   {"sigma2_matches_boundary", r.verdicts.sigma2_matches_boundary},
                   {"m0_consistent", r.verdicts.m0_consistent}};
  j["final_ratio"] = r.final_ratio;
  j["first_bad_step"] = r.first_bad_step;
  return j;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i)
    os_ << (i ? "," : "") << cols[i];
  os_ << "\n";
}

void CsvWriter::row(const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i)
    os_ << (i ? "," : "") << fmt17(vals[i]);
  os_ << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    os_ << (i ? "," : "") << cells[i];
  os_ << "\n";
}

}  // namespace symdom::io
