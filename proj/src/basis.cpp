#include "qdr/basis.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace qdr {

ChargeBasis::ChargeBasis(int n_max) : n_max_(n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("ChargeBasis: n_max must be at least 1");
  }
}

int ChargeBasis::index(int charge) const {
  if (std::abs(charge) > n_max_) {
    std::ostringstream msg;
    msg << "ChargeBasis::index: charge " << charge << " outside [-" << n_max_
        << ", " << n_max_ << "]";
    throw std::out_of_range(msg.str());
  }
  return charge + n_max_;
}

int ChargeBasis::charge(int index) const {
  if (index < 0 || index >= dimension()) {
    std::ostringstream msg;
    msg << "ChargeBasis::charge: index " << index << " outside [0, "
        << dimension() << ")";
    throw std::out_of_range(msg.str());
  }
  return index - n_max_;
}

Matrix number_operator(const ChargeBasis& basis) {
  const int dim = basis.dimension();
  Matrix n = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    n(i, i) = static_cast<double>(basis.charge(i));
  }
  return n;
}

Matrix charge_shift(const ChargeBasis& basis, int m) {
  const int dim = basis.dimension();
  if (std::abs(m) > dim - 1) {
    std::ostringstream msg;
    msg << "charge_shift: shift exceeds basis (|m| = " << std::abs(m)
        << ", dimension = " << dim << ")";
    throw std::invalid_argument(msg.str());
  }
  Matrix s = Matrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const int i = j + m;
    if (i >= 0 && i < dim) {
      s(i, j) = 1.0;
    }
  }
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols();
  const Eigen::Index br = b.rows(), bc = b.cols();
  Matrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i) {
    for (Eigen::Index j = 0; j < ac; ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

void require_hermitian(const Matrix& h, const char* context) {
  if (h.rows() != h.cols()) {
    std::ostringstream msg;
    msg << context << ": matrix is " << h.rows() << "x" << h.cols()
        << ", expected square";
    throw std::invalid_argument(msg.str());
  }
  if (h.rows() == 0) {
    return;
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-12 * scale) {
    std::ostringstream msg;
    msg << context << ": matrix is not Hermitian (max |H - H^dag| = " << dev
        << ", scale = " << scale << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace qdr
