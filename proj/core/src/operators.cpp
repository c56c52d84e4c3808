#include "ionlink/operators.hpp"

#include <cmath>

namespace ionlink {

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix sigma_plus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

ComplexMatrix annihilation(int n_max) {
  if (n_max < 0) throw validation_error("annihilation: n_max must be nonnegative");
  const int d = n_max + 1;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return m;
}

ComplexMatrix number_operator(int n_max) {
  const int d = n_max + 1;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (int n = 0; n < d; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

ComplexMatrix position_quadrature(int n_max) {
  ComplexMatrix a = annihilation(n_max);
  return a + a.adjoint().eval();
}

}  // namespace ionlink
