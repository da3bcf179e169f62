#include "nqobc.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>
#include <utility>

#include <json.hpp>

#include "core/certify.hpp"
#include "core/curvature.hpp"
#include "core/experiments.hpp"
#include "core/haar_average.hpp"
#include "core/io.hpp"

struct nqobc_tensor {
  nqobc::CurvatureTensor t;
};

struct nqobc_certificate {
  nqobc::Certificate c;
};

struct nqobc_report {
  bool passed = false;
  std::string json;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
nqobc_status guarded(F&& body) {
  try {
    body();
    return NQOBC_OK;
  } catch (const nqobc::TensorSymmetryError& e) {
    g_last_error = e.what();
    return NQOBC_ERR_TENSOR;
  } catch (const nqobc::ParseError& e) {
    g_last_error = e.what();
    return NQOBC_ERR_PARSE;
  } catch (const nqobc::IoError& e) {
    g_last_error = e.what();
    return NQOBC_ERR_IO;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return NQOBC_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NQOBC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NQOBC_ERR_INTERNAL;
  }
}

nqobc_status fail_argument(const char* message) {
  g_last_error = message;
  return NQOBC_ERR_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nqobc_status make_tensor(nqobc_tensor** out, nqobc::CurvatureTensor t) {
  *out = new nqobc_tensor{std::move(t)};
  return NQOBC_OK;
}

std::size_t component_count(int n) {
  const auto m = static_cast<std::size_t>(n);
  return m * m * m * m;
}

}  // namespace

extern "C" {

const char* nqobc_version(void) { return "0.1.0"; }

const char* nqobc_last_error(void) { return g_last_error.c_str(); }

void nqobc_string_free(char* s) { std::free(s); }

nqobc_status nqobc_tensor_flat(int n, nqobc_tensor** out) {
  if (!out) return fail_argument("out must not be NULL");
  return guarded([&] { make_tensor(out, nqobc::flat(n)); });
}

nqobc_status nqobc_tensor_constant_hsc(int n, double c, nqobc_tensor** out) {
  if (!out) return fail_argument("out must not be NULL");
  return guarded([&] { make_tensor(out, nqobc::constant_hsc(n, c)); });
}

nqobc_status nqobc_tensor_surface(double h, nqobc_tensor** out) {
  if (!out) return fail_argument("out must not be NULL");
  return guarded([&] { make_tensor(out, nqobc::surface(h)); });
}

nqobc_status nqobc_tensor_product(const nqobc_tensor* first,
                                  const nqobc_tensor* second,
                                  nqobc_tensor** out) {
  if (!first || !second || !out)
    return fail_argument("arguments must not be NULL");
  return guarded([&] { make_tensor(out, nqobc::product(first->t, second->t)); });
}

nqobc_status nqobc_tensor_random(int n, uint64_t seed, double scale,
                                 nqobc_tensor** out) {
  if (!out) return fail_argument("out must not be NULL");
  return guarded([&] { make_tensor(out, nqobc::random_kahler(n, seed, scale)); });
}

nqobc_status nqobc_tensor_from_components(int n, const double* re_im_pairs,
                                          nqobc_tensor** out) {
  if (!re_im_pairs || !out) return fail_argument("arguments must not be NULL");
  return guarded([&] {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    const std::size_t count = component_count(n);
    std::vector<nqobc::Complex> c(count);
    for (std::size_t i = 0; i < count; ++i)
      c[i] = nqobc::Complex(re_im_pairs[2 * i], re_im_pairs[2 * i + 1]);
    nqobc::CurvatureTensor t(n, std::move(c));
    const auto violations = nqobc::validate(t);
    if (!violations.empty())
      throw nqobc::TensorSymmetryError(
          "components violate the curvature symmetries (" +
          violations.front().identity + " residual " +
          std::to_string(violations.front().residual) + ")");
    make_tensor(out, std::move(t));
  });
}

void nqobc_tensor_free(nqobc_tensor* t) { delete t; }

int nqobc_tensor_dim(const nqobc_tensor* t) { return t ? t->t.dim() : 0; }

nqobc_status nqobc_tensor_components(const nqobc_tensor* t,
                                     double* re_im_pairs_out) {
  if (!t || !re_im_pairs_out) return fail_argument("arguments must not be NULL");
  const auto& c = t->t.components();
  for (std::size_t i = 0; i < c.size(); ++i) {
    re_im_pairs_out[2 * i] = c[i].real();
    re_im_pairs_out[2 * i + 1] = c[i].imag();
  }
  return NQOBC_OK;
}

nqobc_status nqobc_tensor_scalar(const nqobc_tensor* t, double* out) {
  if (!t || !out) return fail_argument("arguments must not be NULL");
  return guarded([&] { *out = nqobc::scalar_curvature(t->t); });
}

nqobc_status nqobc_tensor_validate(const nqobc_tensor* t, int* violations_out,
                                   char** diagnostic_out) {
  if (!t || !violations_out) return fail_argument("arguments must not be NULL");
  return guarded([&] {
    const auto violations = nqobc::validate(t->t);
    *violations_out = static_cast<int>(violations.size());
    if (diagnostic_out) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& v : violations)
        j.push_back({{"identity", v.identity},
                     {"index", v.index},
                     {"residual", v.residual}});
      *diagnostic_out = dup_string(j.dump());
    }
  });
}

nqobc_status nqobc_tensor_read_json(const char* path, nqobc_tensor** out) {
  if (!path || !out) return fail_argument("arguments must not be NULL");
  return guarded([&] { make_tensor(out, nqobc::load_tensor_json(path)); });
}

nqobc_status nqobc_tensor_write_json(const nqobc_tensor* t, const char* path) {
  if (!t || !path) return fail_argument("arguments must not be NULL");
  return guarded([&] { nqobc::save_tensor_json(t->t, path); });
}

nqobc_status nqobc_tensor_write_json_annotated(const nqobc_tensor* t,
                                               const char* path,
                                               const char* generator) {
  if (!t || !path) return fail_argument("arguments must not be NULL");
  return guarded([&] {
    nqobc::save_tensor_json(t->t, path, generator ? generator : "");
  });
}

void nqobc_certify_config_init(nqobc_certify_config* cfg) {
  if (!cfg) return;
  const nqobc::CertifyConfig defaults;
  cfg->restarts = defaults.restarts;
  cfg->max_iters = defaults.max_iters;
  cfg->violation_tolerance = defaults.violation_tolerance;
  cfg->seed = defaults.seed;
  cfg->threads = defaults.threads;
}

nqobc_status nqobc_certify(const nqobc_tensor* t,
                           const nqobc_certify_config* cfg,
                           nqobc_certificate** out) {
  if (!t || !out) return fail_argument("arguments must not be NULL");
  return guarded([&] {
    nqobc::CertifyConfig config;
    if (cfg) {
      config.restarts = cfg->restarts;
      config.max_iters = cfg->max_iters;
      config.violation_tolerance = cfg->violation_tolerance;
      config.seed = cfg->seed;
      config.threads = cfg->threads;
    }
    *out = new nqobc_certificate{nqobc::certify_nqobc(t->t, config)};
  });
}

int nqobc_certificate_violation_found(const nqobc_certificate* c) {
  return c && c->c.status == nqobc::CertifyStatus::kViolationFound ? 1 : 0;
}

double nqobc_certificate_min_lambda(const nqobc_certificate* c) {
  return c ? c->c.min_lambda : std::numeric_limits<double>::quiet_NaN();
}

double nqobc_certificate_witness_value(const nqobc_certificate* c) {
  if (!c || !c->c.witness) return std::numeric_limits<double>::quiet_NaN();
  return c->c.witness->value;
}

nqobc_status nqobc_certificate_to_json(const nqobc_certificate* c,
                                       char** json_out) {
  if (!c || !json_out) return fail_argument("arguments must not be NULL");
  return guarded([&] { *json_out = dup_string(nqobc::certificate_to_json(c->c)); });
}

void nqobc_certificate_free(nqobc_certificate* c) { delete c; }

nqobc_status nqobc_haar_verify(const nqobc_tensor* t, uint64_t samples,
                               uint64_t seed, int threads,
                               nqobc_report** out) {
  if (!t || !out) return fail_argument("arguments must not be NULL");
  return guarded([&] {
    const nqobc::HaarBundle b =
        nqobc::haar_verify_bundle(t->t, samples, seed, threads);
    *out = new nqobc_report{b.passed, nqobc::bundle_to_json(b),
                            nqobc::bundle_to_csv(b)};
  });
}

nqobc_status nqobc_suite_run(const char* name, uint64_t seed, int threads,
                             nqobc_report** out) {
  if (!name || !out) return fail_argument("arguments must not be NULL");
  return guarded([&] {
    const std::string suite(name);
    nqobc::SuiteReport rep;
    if (suite == "theorem31")
      rep = nqobc::suite_theorem31(seed, threads);
    else if (suite == "flatness-n3")
      rep = nqobc::suite_flatness_n3(seed, threads);
    else if (suite == "lemma43")
      rep = nqobc::suite_lemma43(seed, threads);
    else
      throw std::invalid_argument("unknown suite: " + suite);
    *out = new nqobc_report{rep.passed, nqobc::report_to_json(rep),
                            nqobc::report_to_csv(rep)};
  });
}

int nqobc_report_passed(const nqobc_report* r) {
  return r && r->passed ? 1 : 0;
}

nqobc_status nqobc_report_to_json(const nqobc_report* r, char** json_out) {
  if (!r || !json_out) return fail_argument("arguments must not be NULL");
  *json_out = dup_string(r->json);
  return NQOBC_OK;
}

nqobc_status nqobc_report_to_csv(const nqobc_report* r, char** csv_out) {
  if (!r || !csv_out) return fail_argument("arguments must not be NULL");
  *csv_out = dup_string(r->csv);
  return NQOBC_OK;
}

void nqobc_report_free(nqobc_report* r) { delete r; }

}  // extern "C"
