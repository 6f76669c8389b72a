// errors.hpp -- exception taxonomy mirrored by the CLI exit-code contract.
#pragma once

#include <stdexcept>
#include <string>

namespace pvass {

// Invalid or inconsistent input model (CLI exit code 2).
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

// Analysis cannot produce a verdict (e.g. unresolved stability; exit code 3).
struct AnalysisError : std::runtime_error {
  explicit AnalysisError(const std::string& what) : std::runtime_error(what) {}
};

// A numeric certificate could not be established (exit code 4).
struct CertificateError : std::runtime_error {
  explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pvass
