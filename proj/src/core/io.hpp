#pragma once

#include <stdexcept>
#include <string>

#include "core/certify.hpp"
#include "core/curvature.hpp"
#include "core/experiments.hpp"
#include "core/haar_average.hpp"

namespace nqobc {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tensor file: {"n": int, "components": [[re, im], ...]} with n^4 entries,
// row-major in (i,j,k,l). The writer emits 17 significant digits so the
// round trip is exact; a nonempty `generator` is embedded as a "generator"
// key recording how the tensor was produced (the loader ignores it). The
// loader validates the curvature symmetries and throws TensorSymmetryError
// on violations.
std::string tensor_to_json(const CurvatureTensor& t,
                           const std::string& generator = "");
CurvatureTensor tensor_from_json(const std::string& text);
void save_tensor_json(const CurvatureTensor& t, const std::string& path,
                      const std::string& generator = "");
CurvatureTensor load_tensor_json(const std::string& path);

// {status, witness{frame, xi, value}, restarts, min_lambda, seed,
//  elapsed_ms, config, note-when-heuristic}.
std::string certificate_to_json(const Certificate& c);

std::string report_to_json(const HaarReport& r);
std::string report_to_csv(const HaarReport& r);

std::string bundle_to_json(const HaarBundle& b);
std::string bundle_to_csv(const HaarBundle& b);

// Suite serialization omits wall time so reruns with the same seed are
// bitwise identical.
std::string report_to_json(const SuiteReport& r);
std::string report_to_csv(const SuiteReport& r);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace nqobc
