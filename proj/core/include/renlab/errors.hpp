#ifndef RENLAB_ERRORS_HPP_
#define RENLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace renlab {

// Evaluating the physical metric on the conformal boundary, or a stencil
// that crosses x = 0.
struct SingularEvaluation : std::runtime_error {
  explicit SingularEvaluation(const std::string& what) : std::runtime_error(what) {}
};

// A model produced a non-positive-definite metric or otherwise inconsistent data.
struct ModelInconsistency : std::runtime_error {
  explicit ModelInconsistency(const std::string& what) : std::runtime_error(what) {}
};

// Series inversion/power with vanishing leading coefficient.
struct SingularSeries : std::runtime_error {
  explicit SingularSeries(const std::string& what) : std::runtime_error(what) {}
};

// Coefficient extraction did not converge; carries the convergence table as text.
struct ExtractionFailure : std::runtime_error {
  ExtractionFailure(const std::string& what, std::string table_text)
      : std::runtime_error(what), table(std::move(table_text)) {}
  std::string table;
};

// Regularization fit residual above tolerance.
struct FitFailure : std::runtime_error {
  explicit FitFailure(const std::string& what) : std::runtime_error(what) {}
};

struct SingularSurface : std::runtime_error {
  explicit SingularSurface(const std::string& what) : std::runtime_error(what) {}
};

// Cutoff below grid resolution in a truncated-area quadrature.
struct ResolutionError : std::runtime_error {
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

struct TailDivergence : std::runtime_error {
  explicit TailDivergence(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace renlab

#endif  // RENLAB_ERRORS_HPP_
