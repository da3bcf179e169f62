#include "core/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nqobc {

using nlohmann::json;

namespace {

std::string digits17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json check_to_json(const IdentityCheck& c) {
  json j;
  j["label"] = c.label;
  j["mean"] = c.mean;
  j["std_error"] = c.std_error;
  if (std::isfinite(c.z)) j["z"] = c.z;
  j["pass"] = c.pass;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string tensor_to_json(const CurvatureTensor& t,
                           const std::string& generator) {
  std::ostringstream os;
  os << "{\"n\": " << t.dim();
  if (!generator.empty())
    os << ", \"generator\": " << json(generator).dump();
  os << ", \"components\": [";
  const auto& c = t.components();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ", ";
    os << "[" << digits17(c[i].real()) << ", " << digits17(c[i].imag()) << "]";
  }
  os << "]}";
  return os.str();
}

CurvatureTensor tensor_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed tensor JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("components"))
    throw ParseError("tensor JSON must contain \"n\" and \"components\"");
  if (!j["n"].is_number_integer())
    throw ParseError("\"n\" must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1) throw ParseError("\"n\" must be >= 1");
  const auto& comps = j["components"];
  if (!comps.is_array())
    throw ParseError("\"components\" must be an array");
  const std::size_t expected = static_cast<std::size_t>(n) * n * n * n;
  if (comps.size() != expected)
    throw ParseError("expected " + std::to_string(expected) +
                     " components, got " + std::to_string(comps.size()));
  std::vector<Complex> c(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    const auto& e = comps[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number())
      throw ParseError("component " + std::to_string(i) +
                       " must be a [re, im] pair");
    c[i] = Complex(e[0].get<double>(), e[1].get<double>());
  }
  CurvatureTensor t(n, std::move(c));
  const auto violations = validate(t);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "tensor violates curvature symmetries:";
    for (const auto& v : violations)
      os << " " << v.identity << " at (" << v.index[0] << "," << v.index[1]
         << "," << v.index[2] << "," << v.index[3] << ") residual "
         << v.residual << ";";
    throw TensorSymmetryError(os.str());
  }
  return t;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for reading: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void save_tensor_json(const CurvatureTensor& t, const std::string& path,
                      const std::string& generator) {
  write_text_file(path, tensor_to_json(t, generator) + "\n");
}

CurvatureTensor load_tensor_json(const std::string& path) {
  return tensor_from_json(read_text_file(path));
}

std::string certificate_to_json(const Certificate& c) {
  json j;
  j["status"] = c.status == CertifyStatus::kViolationFound
                    ? "ViolationFound"
                    : "NoViolationFound";
  if (c.witness) {
    json w;
    json frame = json::array();
    const auto& m = c.witness->frame;
    for (int i = 0; i < m.rows(); ++i)
      for (int k = 0; k < m.cols(); ++k)
        frame.push_back({m(i, k).real(), m(i, k).imag()});
    w["frame"] = std::move(frame);
    w["xi"] = std::vector<double>(c.witness->xi.data(),
                                  c.witness->xi.data() + c.witness->xi.size());
    w["value"] = c.witness->value;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
    j["note"] = "heuristic search found no violating frame; this is not a "
                "proof that the NQOBC condition holds";
  }
  j["restarts"] = c.restarts_used;
  j["min_lambda"] = c.min_lambda;
  j["seed"] = c.seed;
  j["elapsed_ms"] = c.elapsed_ms;
  j["config"] = {{"restarts", c.config.restarts},
                 {"max_iters", c.config.max_iters},
                 {"violation_tolerance", c.config.violation_tolerance},
                 {"threads", c.config.threads}};
  return j.dump(2);
}

namespace {

json haar_report_body(const HaarReport& r) {
  json j;
  j["identity"] = r.identity;
  j["n"] = r.n;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  if (std::isfinite(r.k_hat)) {
    j["k_hat"] = r.k_hat;
    j["k_std_error"] = r.k_std_error;
  }
  json est = json::array();
  for (const auto& e : r.estimates) est.push_back(check_to_json(e));
  j["estimates"] = std::move(est);
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  j["checks"] = std::move(checks);
  j["passed"] = r.passed;
  return j;
}

void haar_report_csv(const HaarReport& r, std::ostringstream& os) {
  for (const auto& c : r.checks) {
    os << csv_escape(r.identity) << "," << csv_escape(c.label) << "," << c.mean
       << "," << c.std_error << ",";
    if (std::isfinite(c.z)) os << c.z;
    os << "," << (c.pass ? "true" : "false") << "\n";
  }
}

}  // namespace

std::string report_to_json(const HaarReport& r) {
  return haar_report_body(r).dump(2);
}

std::string report_to_csv(const HaarReport& r) {
  std::ostringstream os;
  os << "identity,label,mean,std_error,z,pass\n";
  os.precision(17);
  haar_report_csv(r, os);
  return os.str();
}

std::string bundle_to_json(const HaarBundle& b) {
  json j;
  j["n"] = b.n;
  j["samples"] = b.samples;
  j["seed"] = b.seed;
  j["passed"] = b.passed;
  json reports = json::array();
  for (const auto& r : b.reports) reports.push_back(haar_report_body(r));
  j["reports"] = std::move(reports);
  return j.dump(2);
}

std::string bundle_to_csv(const HaarBundle& b) {
  std::ostringstream os;
  os << "identity,label,mean,std_error,z,pass\n";
  os.precision(17);
  for (const auto& r : b.reports) haar_report_csv(r, os);
  return os.str();
}

std::string report_to_json(const SuiteReport& r) {
  json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["success_rate"] = r.success_rate;
  j["passed"] = r.passed;
  json cases = json::array();
  for (const auto& c : r.cases) {
    json e;
    e["id"] = c.id;
    e["input"] = c.input;
    e["expected"] = c.expected;
    e["observed"] = c.observed;
    e["pass"] = c.pass;
    cases.push_back(std::move(e));
  }
  j["cases"] = std::move(cases);
  return j.dump(2);
}

std::string report_to_csv(const SuiteReport& r) {
  std::ostringstream os;
  os << "case,expected,observed,pass\n";
  for (const auto& c : r.cases)
    os << csv_escape(c.id) << "," << csv_escape(c.expected) << ","
       << csv_escape(c.observed) << "," << (c.pass ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace nqobc
