#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include "ionlink/errors.hpp"

namespace ionlink {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Fixed numerical tolerances. Configurable only in tests.
namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double trace_unit = 1e-10;
inline constexpr double negativity = 1e-8;
inline constexpr double unitarity = 1e-10;
inline constexpr double eig_residual = 1e-9;
inline constexpr double truncation_tail = 1e-6;
inline constexpr double metric_clamp = 1e-10;
}  // namespace tol

struct SpaceFactor {
  std::string label;
  int dim = 0;
};

// Ordered list of tensor factors defining a labeled product Hilbert space.
// Canonical protocol order is (f, ion1, ion2); the full cavity model uses
// (f, ion, field, vib).
class SpaceLayout {
 public:
  SpaceLayout() = default;
  SpaceLayout(std::initializer_list<SpaceFactor> factors);
  explicit SpaceLayout(std::vector<SpaceFactor> factors);

  int factor_count() const { return static_cast<int>(factors_.size()); }
  const SpaceFactor& factor(int i) const { return factors_.at(static_cast<size_t>(i)); }
  const std::vector<SpaceFactor>& factors() const { return factors_; }
  int total_dim() const { return total_dim_; }

  bool has(const std::string& label) const;
  // Position of a factor; throws validation_error for unknown labels.
  int index_of(const std::string& label) const;
  int dim_of(const std::string& label) const;

  bool operator==(const SpaceLayout& other) const;

 private:
  void check();
  std::vector<SpaceFactor> factors_;
  int total_dim_ = 1;
};

bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::hermiticity);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Operator acting as `op` on one factor and identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& op, const std::string& label, const SpaceLayout& layout);

struct EigResult {
  RealVector eigenvalues;    // descending
  ComplexMatrix eigenvectors;  // columns, matching order
};

// Eigendecomposition of a Hermitian matrix; throws validation_error if the
// input is not Hermitian to tol::hermiticity.
EigResult hermitian_eig(const ComplexMatrix& m);

// Unitary propagator exp(-i h t) via eigendecomposition of the Hermitian
// generator h. Exactly unitary up to eigensolver accuracy.
ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double t);

// cos(x) applied to the spectrum of a Hermitian x.
ComplexMatrix operator_cosine(const ComplexMatrix& x);

struct StateVector {
  SpaceLayout layout;
  ComplexVector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

struct DensityMatrix {
  SpaceLayout layout;
  ComplexMatrix matrix;

  double trace_real() const { return matrix.trace().real(); }
  // Enforces Hermiticity, unit trace and positivity; throws validation_error.
  void validate() const;
};

DensityMatrix projector(const StateVector& psi);

// Reduced density matrix over the kept factors, in their original relative
// order. Unknown labels raise validation_error.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

// <psi|rho|psi>, the fidelity of rho against a pure reference.
double fidelity_to_pure(const DensityMatrix& rho, const StateVector& psi);

}  // namespace ionlink
