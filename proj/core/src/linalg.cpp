#include "ionlink/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ionlink {

SpaceLayout::SpaceLayout(std::initializer_list<SpaceFactor> factors)
    : factors_(factors) {
  check();
}

SpaceLayout::SpaceLayout(std::vector<SpaceFactor> factors)
    : factors_(std::move(factors)) {
  check();
}

void SpaceLayout::check() {
  std::set<std::string> seen;
  total_dim_ = 1;
  for (const auto& f : factors_) {
    if (f.dim <= 0) throw validation_error("factor '" + f.label + "' has non-positive dimension");
    if (!seen.insert(f.label).second)
      throw validation_error("duplicate factor label '" + f.label + "'");
    total_dim_ *= f.dim;
  }
}

bool SpaceLayout::has(const std::string& label) const {
  for (const auto& f : factors_)
    if (f.label == label) return true;
  return false;
}

int SpaceLayout::index_of(const std::string& label) const {
  for (size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return static_cast<int>(i);
  throw validation_error("unknown factor label '" + label + "'");
}

int SpaceLayout::dim_of(const std::string& label) const {
  return factors_[static_cast<size_t>(index_of(label))].dim;
}

bool SpaceLayout::operator==(const SpaceLayout& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label != other.factors_[i].label || factors_[i].dim != other.factors_[i].dim)
      return false;
  return true;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, const std::string& label, const SpaceLayout& layout) {
  int pos = layout.index_of(label);
  int d = layout.factor(pos).dim;
  if (op.rows() != d || op.cols() != d)
    throw validation_error("operator dimension does not match factor '" + label + "'");
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int i = 0; i < layout.factor_count(); ++i) {
    if (i == pos)
      out = kron(out, op);
    else
      out = kron(out, ComplexMatrix::Identity(layout.factor(i).dim, layout.factor(i).dim));
  }
  return out;
}

EigResult hermitian_eig(const ComplexMatrix& m) {
  if (!is_hermitian(m))
    throw validation_error("hermitian_eig: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw numerical_error("hermitian_eig: eigensolver failed to converge");
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = m.rows();
  EigResult r;
  r.eigenvalues = solver.eigenvalues().reverse();
  r.eigenvectors = solver.eigenvectors().rowwise().reverse();
  (void)n;
  return r;
}

ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double t) {
  EigResult e = hermitian_eig(h);
  ComplexVector phases(e.eigenvalues.size());
  for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -e.eigenvalues(k) * t));
  return e.eigenvectors * phases.asDiagonal() * e.eigenvectors.adjoint();
}

ComplexMatrix operator_cosine(const ComplexMatrix& x) {
  EigResult e = hermitian_eig(x);
  ComplexVector vals(e.eigenvalues.size());
  for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k)
    vals(k) = std::cos(e.eigenvalues(k));
  return e.eigenvectors * vals.asDiagonal() * e.eigenvectors.adjoint();
}

void DensityMatrix::validate() const {
  if (matrix.rows() != matrix.cols() || matrix.rows() != layout.total_dim())
    throw validation_error("density matrix dimension does not match layout");
  if (!is_hermitian(matrix, tol::hermiticity))
    throw validation_error("density matrix is not Hermitian within tolerance");
  if (std::abs(matrix.trace() - Complex(1.0, 0.0)) > tol::trace_unit)
    throw validation_error("density matrix trace differs from 1 beyond tolerance");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((matrix + matrix.adjoint()) / 2.0);
  if (solver.eigenvalues().minCoeff() < -tol::negativity)
    throw validation_error("density matrix has a negative eigenvalue beyond tolerance");
}

DensityMatrix projector(const StateVector& psi) {
  return DensityMatrix{psi.layout, psi.amplitudes * psi.amplitudes.adjoint()};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  if (keep.empty()) throw validation_error("partial_trace: keep set is empty");
  const SpaceLayout& layout = rho.layout;
  const int nf = layout.factor_count();

  std::vector<bool> kept(static_cast<size_t>(nf), false);
  for (const auto& label : keep) {
    int idx = layout.index_of(label);
    if (kept[static_cast<size_t>(idx)])
      throw validation_error("partial_trace: duplicate label '" + label + "'");
    kept[static_cast<size_t>(idx)] = true;
  }

  std::vector<int> dims(static_cast<size_t>(nf));
  for (int i = 0; i < nf; ++i) dims[static_cast<size_t>(i)] = layout.factor(i).dim;

  // Row-major strides over the factor multi-index.
  std::vector<int> strides(static_cast<size_t>(nf), 1);
  for (int i = nf - 2; i >= 0; --i)
    strides[static_cast<size_t>(i)] = strides[static_cast<size_t>(i + 1)] * dims[static_cast<size_t>(i + 1)];

  std::vector<SpaceFactor> out_factors;
  std::vector<int> keep_idx, trace_idx;
  for (int i = 0; i < nf; ++i) {
    if (kept[static_cast<size_t>(i)]) {
      out_factors.push_back(layout.factor(i));
      keep_idx.push_back(i);
    } else {
      trace_idx.push_back(i);
    }
  }
  SpaceLayout out_layout(out_factors);
  const int dk = out_layout.total_dim();

  int dt = 1;
  for (int i : trace_idx) dt *= dims[static_cast<size_t>(i)];

  // Offset of a composite index within the full space, given its digits.
  auto offset_of = [&](const std::vector<int>& which, int composite) {
    int off = 0;
    for (int n = static_cast<int>(which.size()) - 1; n >= 0; --n) {
      int f = which[static_cast<size_t>(n)];
      off += (composite % dims[static_cast<size_t>(f)]) * strides[static_cast<size_t>(f)];
      composite /= dims[static_cast<size_t>(f)];
    }
    return off;
  };

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i) {
    int ri = offset_of(keep_idx, i);
    for (int j = 0; j < dk; ++j) {
      int rj = offset_of(keep_idx, j);
      Complex acc(0.0, 0.0);
      for (int s = 0; s < dt; ++s) {
        int rs = offset_of(trace_idx, s);
        acc += rho.matrix(ri + rs, rj + rs);
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix{out_layout, out};
}

double fidelity_to_pure(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.matrix.rows() != psi.amplitudes.size())
    throw validation_error("fidelity_to_pure: dimension mismatch");
  return (psi.amplitudes.adjoint() * rho.matrix * psi.amplitudes)(0, 0).real();
}

}  // namespace ionlink
