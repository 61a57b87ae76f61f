// Shared test helpers: seeded random matrices and the random full-orthogonal
// product-set generator used by the protocol and acceptance suites.

#pragma once

#include <random>
#include <vector>

#include "locc/linalg.hpp"
#include "locc/states.hpp"

namespace locc::testing {

Mat random_complex(int rows, int cols, std::mt19937_64& rng);
HermitianOperator random_hermitian(int d, std::mt19937_64& rng);
HermitianOperator random_psd(int d, std::mt19937_64& rng);
Mat random_unitary(int d, std::mt19937_64& rng);
Vec random_ket(int d, std::mt19937_64& rng);

// Isometry onto a random subspace of dimension h (columns of a random unitary).
Isometry random_subspace(int d, int h, std::mt19937_64& rng);

// Random full orthogonal product-state set on C^dA ⊗ C^dB, built by composing
// random local projective refinements: recursively split a local subspace into
// orthogonal blocks (the measurement a protocol would perform) until a leaf
// emits a product state supported on the current block pair.  The
// construction itself is a discrimination protocol, so the set is
// finite-LOCC distinguishable by design.
StateSet random_refinement_set(int d_a, int d_b, std::mt19937_64& rng);

}  // namespace locc::testing
