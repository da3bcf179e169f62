// Command-line front end. Links only the C API of the shared library.
//
// Exit codes: 0 success / all checks passed / no violation found;
//             1 input or usage error;
//             2 verification checks failed;
//             3 NQOBC violation found.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nqobc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitChecksFailed = 2;
constexpr int kExitViolation = 3;

struct TensorHandle {
  nqobc_tensor* t = nullptr;
  ~TensorHandle() { nqobc_tensor_free(t); }
};

struct CertificateHandle {
  nqobc_certificate* c = nullptr;
  ~CertificateHandle() { nqobc_certificate_free(c); }
};

struct ReportHandle {
  nqobc_report* r = nullptr;
  ~ReportHandle() { nqobc_report_free(r); }
};

int fail(const std::string& context) {
  std::fprintf(stderr, "error: %s: %s\n", context.c_str(), nqobc_last_error());
  return kExitError;
}

bool write_file(const std::string& path, const char* text) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) return false;
  const bool ok = std::fputs(text, f) >= 0;
  return std::fclose(f) == 0 && ok;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin <= s.size()) {
    const std::size_t end = s.find(sep, begin);
    if (end == std::string::npos) {
      out.push_back(s.substr(begin));
      break;
    }
    out.push_back(s.substr(begin, end - begin));
    begin = end + 1;
  }
  return out;
}

// Factor spec: "s:<h>" surface, "f:<n>" flat, "c:<n>:<c>" constant
// holomorphic sectional curvature.
nqobc_status make_factor(const std::string& spec, nqobc_tensor** out) {
  const auto parts = split(spec, ':');
  try {
    if (parts.size() == 2 && parts[0] == "s")
      return nqobc_tensor_surface(std::stod(parts[1]), out);
    if (parts.size() == 2 && parts[0] == "f")
      return nqobc_tensor_flat(std::stoi(parts[1]), out);
    if (parts.size() == 3 && parts[0] == "c")
      return nqobc_tensor_constant_hsc(std::stoi(parts[1]),
                                       std::stod(parts[2]), out);
  } catch (const std::exception&) {
    // fall through to the usage error below
  }
  std::fprintf(stderr,
               "error: bad factor spec '%s' (use s:<h>, f:<n>, or c:<n>:<c>)\n",
               spec.c_str());
  return NQOBC_ERR_ARGUMENT;
}

int run_generate(const std::string& kind, int n, double c,
                 const std::string& factors, std::uint64_t seed, double scale,
                 const std::string& out_path) {
  TensorHandle tensor;
  nqobc_status st = NQOBC_ERR_ARGUMENT;
  std::string generator;
  if (kind == "flat") {
    generator = "flat(n=" + std::to_string(n) + ")";
    st = nqobc_tensor_flat(n, &tensor.t);
  } else if (kind == "csc") {
    generator = "csc(n=" + std::to_string(n) + ",c=" + std::to_string(c) + ")";
    st = nqobc_tensor_constant_hsc(n, c, &tensor.t);
  } else if (kind == "surface") {
    generator = "surface(c=" + std::to_string(c) + ")";
    st = nqobc_tensor_surface(c, &tensor.t);
  } else if (kind == "random") {
    generator = "random(n=" + std::to_string(n) +
                ",seed=" + std::to_string(seed) +
                ",scale=" + std::to_string(scale) + ")";
    st = nqobc_tensor_random(n, seed, scale, &tensor.t);
  } else if (kind == "product") {
    const auto specs = split(factors, ',');
    if (specs.size() < 2 || factors.empty()) {
      std::fprintf(stderr,
                   "error: --factors needs at least two comma-separated "
                   "specs, e.g. s:-1,s:1\n");
      return kExitError;
    }
    generator = "product(" + factors + ")";
    st = make_factor(specs[0], &tensor.t);
    for (std::size_t i = 1; i < specs.size() && st == NQOBC_OK; ++i) {
      TensorHandle next;
      st = make_factor(specs[i], &next.t);
      if (st != NQOBC_OK) break;
      nqobc_tensor* combined = nullptr;
      st = nqobc_tensor_product(tensor.t, next.t, &combined);
      if (st == NQOBC_OK) {
        nqobc_tensor_free(tensor.t);
        tensor.t = combined;
      }
    }
  } else {
    std::fprintf(stderr, "error: unknown kind '%s'\n", kind.c_str());
    return kExitError;
  }
  if (st != NQOBC_OK) return fail("generate");

  if (nqobc_tensor_write_json_annotated(tensor.t, out_path.c_str(),
                                        generator.c_str()) != NQOBC_OK)
    return fail("write " + out_path);
  double scalar = 0.0;
  nqobc_tensor_scalar(tensor.t, &scalar);
  std::printf("wrote %s: n=%d scalar=%.17g\n", out_path.c_str(),
              nqobc_tensor_dim(tensor.t), scalar);
  return kExitOk;
}

int run_check(const std::string& in_path, const std::string& out_path,
              const nqobc_certify_config& cfg) {
  TensorHandle tensor;
  if (nqobc_tensor_read_json(in_path.c_str(), &tensor.t) != NQOBC_OK)
    return fail("read " + in_path);

  CertificateHandle cert;
  if (nqobc_certify(tensor.t, &cfg, &cert.c) != NQOBC_OK)
    return fail("certify");

  char* json = nullptr;
  if (nqobc_certificate_to_json(cert.c, &json) != NQOBC_OK)
    return fail("serialize certificate");
  if (!out_path.empty()) {
    const bool ok = write_file(out_path, json);
    nqobc_string_free(json);
    if (!ok) {
      std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
      return kExitError;
    }
  } else {
    std::printf("%s\n", json);
    nqobc_string_free(json);
  }

  if (nqobc_certificate_violation_found(cert.c)) {
    std::printf("violation found: witness value %.17g (min lambda %.17g)\n",
                nqobc_certificate_witness_value(cert.c),
                nqobc_certificate_min_lambda(cert.c));
    return kExitViolation;
  }
  std::printf("no violation found (heuristic); min lambda %.17g\n",
              nqobc_certificate_min_lambda(cert.c));
  return kExitOk;
}

int emit_report(nqobc_report* report, const std::string& out_path,
                const std::string& csv_path) {
  char* json = nullptr;
  if (nqobc_report_to_json(report, &json) != NQOBC_OK)
    return fail("serialize report");
  bool ok = true;
  if (!out_path.empty())
    ok = write_file(out_path, json);
  else
    std::printf("%s\n", json);
  nqobc_string_free(json);
  if (!ok) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return kExitError;
  }
  if (!csv_path.empty()) {
    char* csv = nullptr;
    if (nqobc_report_to_csv(report, &csv) != NQOBC_OK)
      return fail("serialize CSV");
    ok = write_file(csv_path, csv);
    nqobc_string_free(csv);
    if (!ok) {
      std::fprintf(stderr, "error: cannot write %s\n", csv_path.c_str());
      return kExitError;
    }
  }
  if (nqobc_report_passed(report)) {
    std::printf("all checks passed\n");
    return kExitOk;
  }
  std::printf("some checks FAILED\n");
  return kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointwise NQOBC analysis of Kahler curvature tensors"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nqobc_version()));

  // generate
  auto* gen = app.add_subcommand("generate", "Write a tensor JSON file");
  std::string gen_kind, gen_factors, gen_out;
  int gen_n = 2;
  double gen_c = 1.0, gen_scale = 1.0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind,
                  "flat | csc | surface | product | random")
      ->required();
  gen->add_option("--n", gen_n, "complex dimension");
  gen->add_option("--c", gen_c,
                  "curvature parameter: hsc for csc, component for surface");
  gen->add_option("--factors", gen_factors,
                  "comma-separated factor specs: s:<h>, f:<n>, c:<n>:<c>");
  gen->add_option("--seed", gen_seed, "random generator seed")
      ->envname("NQOBC_SEED");
  gen->add_option("--scale", gen_scale, "random component scale");
  gen->add_option("--out", gen_out, "output tensor file")->required();

  // check
  auto* check = app.add_subcommand("check", "Certify NQOBC for a tensor file");
  std::string check_in, check_out;
  nqobc_certify_config cfg;
  nqobc_certify_config_init(&cfg);
  check->add_option("input", check_in, "tensor JSON file")->required();
  check->add_option("--out", check_out, "certificate JSON file");
  check->add_option("--restarts", cfg.restarts, "multistart count");
  check->add_option("--max-iters", cfg.max_iters, "descent iterations");
  check->add_option("--tol-violation", cfg.violation_tolerance,
                    "violation threshold");
  check->add_option("--seed", cfg.seed, "search seed")->envname("NQOBC_SEED");
  check->add_option("--threads", cfg.threads,
                    "worker threads (0 = hardware); results do not depend on "
                    "this");

  // haar
  auto* haar =
      app.add_subcommand("haar", "Verify frame-averaging identities by "
                                 "Monte Carlo over Haar frames");
  std::string haar_in, haar_out, haar_csv;
  std::uint64_t haar_samples = 200000, haar_seed = 0;
  int haar_threads = 0;
  haar->add_option("input", haar_in, "tensor JSON file")->required();
  haar->add_option("--samples", haar_samples, "Haar sample count");
  haar->add_option("--seed", haar_seed, "sampling seed")->envname("NQOBC_SEED");
  haar->add_option("--threads", haar_threads, "worker threads (0 = hardware)");
  haar->add_option("--out", haar_out, "report JSON file");
  haar->add_option("--csv", haar_csv, "report CSV file");

  // suite
  auto* suite = app.add_subcommand("suite", "Run a named verification suite");
  std::string suite_name, suite_out, suite_csv;
  std::uint64_t suite_seed = 0;
  int suite_threads = 0;
  suite->add_option("name", suite_name, "theorem31 | flatness-n3 | lemma43")
      ->required();
  suite->add_option("--seed", suite_seed, "suite seed")->envname("NQOBC_SEED");
  suite->add_option("--threads", suite_threads,
                    "worker threads (0 = hardware)");
  suite->add_option("--out", suite_out, "report JSON file");
  suite->add_option("--csv", suite_csv, "report CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (gen->parsed())
    return run_generate(gen_kind, gen_n, gen_c, gen_factors, gen_seed,
                        gen_scale, gen_out);
  if (check->parsed()) return run_check(check_in, check_out, cfg);
  if (haar->parsed()) {
    TensorHandle tensor;
    if (nqobc_tensor_read_json(haar_in.c_str(), &tensor.t) != NQOBC_OK)
      return fail("read " + haar_in);
    ReportHandle report;
    if (nqobc_haar_verify(tensor.t, haar_samples, haar_seed, haar_threads,
                          &report.r) != NQOBC_OK)
      return fail("haar verification");
    return emit_report(report.r, haar_out, haar_csv);
  }
  if (suite->parsed()) {
    ReportHandle report;
    if (nqobc_suite_run(suite_name.c_str(), suite_seed, suite_threads,
                        &report.r) != NQOBC_OK)
      return fail("suite " + suite_name);
    return emit_report(report.r, suite_out, suite_csv);
  }
  return kExitError;
}
