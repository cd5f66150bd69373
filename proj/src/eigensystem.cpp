#include "qdr/eigensystem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdr {

Eigensystem hermitian_eig(const Matrix& h) {
  require_hermitian(h, "hermitian_eig");
  const Eigen::Index dim = h.rows();
  if (dim == 0) {
    throw std::invalid_argument("hermitian_eig: matrix is empty");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  }

  Eigensystem out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();

  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double mag = std::abs(out.vectors(i, k));
      if (mag > best) {
        best = mag;
        imax = i;
      }
    }
    const std::complex<double> pivot = out.vectors(imax, k);
    if (best > 0.0) {
      out.vectors.col(k) *= std::abs(pivot) / pivot;
    }
  }

  const double hnorm =
      std::max(std::abs(out.values(0)), std::abs(out.values(dim - 1)));
  const double floor = std::max(hnorm, 1e-300);
  double residual = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double r =
        (h * out.vectors.col(k) - out.values(k) * out.vectors.col(k)).norm();
    residual = std::max(residual, r);
  }
  const double unitarity =
      (out.vectors.adjoint() * out.vectors - Matrix::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff();
  if (residual > 1e-10 * floor || unitarity > 1e-10) {
    std::ostringstream msg;
    msg << "hermitian_eig: decomposition check failed (residual = " << residual
        << ", matrix norm = " << hnorm << ", unitarity deviation = "
        << unitarity << ")";
    throw std::runtime_error(msg.str());
  }
  return out;
}

}  // namespace qdr
