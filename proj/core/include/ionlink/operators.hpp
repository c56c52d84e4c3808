#pragma once

#include "ionlink/linalg.hpp"

namespace ionlink {

// Qubit basis convention: index 0 = excited |e>, index 1 = ground |g>,
// so sigma_z = diag(1, -1) and sigma_plus = |e><g|.
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();

// Bosonic annihilation operator on a Fock space truncated at n_max
// (dimension n_max + 1).
ComplexMatrix annihilation(int n_max);
ComplexMatrix number_operator(int n_max);

// Fock-space quadrature combination a^dag + a, the argument of the
// Lamb-Dicke cosine factor.
ComplexMatrix position_quadrature(int n_max);

}  // namespace ionlink
