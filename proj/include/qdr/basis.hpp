#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qdr {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Truncated charge basis |N>, N = -n_max..n_max, indexed 0..2*n_max.
class ChargeBasis {
 public:
  explicit ChargeBasis(int n_max);

  int n_max() const { return n_max_; }
  int dimension() const { return 2 * n_max_ + 1; }

  // Row/column index of charge state |N>. Throws std::out_of_range if
  // |N| > n_max.
  int index(int charge) const;

  // Charge of basis state at index i. Throws std::out_of_range if i is not in
  // [0, dimension).
  int charge(int index) const;

 private:
  int n_max_;
};

// Diagonal charge-number operator diag(-n_max..n_max).
Matrix number_operator(const ChargeBasis& basis);

// Shift operator S_m: |N> -> |N+m>, rows truncated at the basis edge. Throws
// std::invalid_argument if |m| > 2*n_max (the shift exceeds the basis).
Matrix charge_shift(const ChargeBasis& basis, int m);

// Kronecker product with A-major ordering: (A kron B)[i*p+k, j*q+l] = A[i,j]*B[k,l].
Matrix kron(const Matrix& a, const Matrix& b);

// Throws std::invalid_argument naming `context` unless h is square and
// Hermitian to max|H - H^dag| <= 1e-12 * max(1, max|H|).
void require_hermitian(const Matrix& h, const char* context);

}  // namespace qdr
