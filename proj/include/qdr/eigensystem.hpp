#pragma once

#include "qdr/basis.hpp"

namespace qdr {

struct Eigensystem {
  RealVector values;   // ascending
  Matrix vectors;      // column k pairs with values[k]
};

// Full Hermitian eigendecomposition with a deterministic phase convention:
// each column is rotated so its largest-magnitude component is real positive.
// Throws std::invalid_argument for non-square or non-Hermitian input and
// std::runtime_error (with the measured residual) if the reconstruction check
// ||H v - lambda v|| <= 1e-10 * ||H||_2 or unitarity to 1e-10 fails.
Eigensystem hermitian_eig(const Matrix& h);

}  // namespace qdr
