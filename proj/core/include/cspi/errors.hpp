#pragma once

#include <stdexcept>
#include <string>

namespace cspi {

/// Bad caller input: violated preconditions, unknown tags, malformed matrices.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver a result at the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// two_s = 0 has no coherent-state structure worth representing.
class TrivialRepresentationError : public InvalidArgument {
 public:
  TrivialRepresentationError()
      : InvalidArgument("spin representation with two_s = 0 is trivial; need two_s >= 1") {}
};

class NonHermitianError : public InvalidArgument {
 public:
  explicit NonHermitianError(double defect)
      : InvalidArgument("matrix is not Hermitian (max |H - H^dagger| = " + std::to_string(defect) + ")"),
        defect_(defect) {}
  double defect() const noexcept { return defect_; }

 private:
  double defect_;
};

class NonDiagonalError : public InvalidArgument {
 public:
  explicit NonDiagonalError(double off_diagonal)
      : InvalidArgument("Hamiltonian must be diagonal in the S_z / number basis (max off-diagonal = " +
                        std::to_string(off_diagonal) + ")"),
        off_diagonal_(off_diagonal) {}
  double off_diagonal() const noexcept { return off_diagonal_; }

 private:
  double off_diagonal_;
};

/// Glauber state truncated too aggressively for the requested accuracy.
class TailBoundError : public NumericalError {
 public:
  TailBoundError(double bound, double limit)
      : NumericalError("Fock cutoff too low: Poisson tail bound " + std::to_string(bound) +
                       " exceeds " + std::to_string(limit)),
        bound_(bound) {}
  double bound() const noexcept { return bound_; }

 private:
  double bound_;
};

/// Quadrature grid does not resolve the identity well enough to slice with.
class UnderResolvedQuadratureError : public NumericalError {
 public:
  UnderResolvedQuadratureError(double residual, double limit)
      : NumericalError("quadrature under-resolved: resolution-of-identity residual " +
                       std::to_string(residual) + " > " + std::to_string(limit)),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class DegenerateSaddleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace cspi
