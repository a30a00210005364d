#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace cauto {

// Every failure carries a short machine-readable kind ("input", "alignment",
// ...) alongside the human message. The CLI prints both.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define CAUTO_DEFINE_ERROR(Name, Kind)                               \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(Kind, what) {}    \
  };

CAUTO_DEFINE_ERROR(InputError, "input")
CAUTO_DEFINE_ERROR(AlignmentError, "alignment")
CAUTO_DEFINE_ERROR(NoOccurrenceError, "no-occurrence")
CAUTO_DEFINE_ERROR(InsufficientDataError, "insufficient-data")
CAUTO_DEFINE_ERROR(ModelExplosionError, "model-explosion")
CAUTO_DEFINE_ERROR(ZeroProbabilityHistoryError, "zero-probability-history")
CAUTO_DEFINE_ERROR(DegenerateProcessError, "degenerate-process")
CAUTO_DEFINE_ERROR(ConvergenceError, "non-convergence")
CAUTO_DEFINE_ERROR(DegenerateQuantizationError, "degenerate-quantization")
CAUTO_DEFINE_ERROR(FormatError, "malformed-file")

#undef CAUTO_DEFINE_ERROR

}  // namespace cauto
