#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace litt {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Square matrix in compressed sparse row layout with sorted column indices.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  /// Sums duplicates in input order, so identical triplet lists give
  /// bit-identical matrices.
  static CsrMatrix from_triplets(int n, std::span<const Triplet> triplets);
  static CsrMatrix diagonal(std::span<const double> d);

  int size() const { return n_; }
  std::size_t nnz() const { return values_.size(); }
  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& cols() const { return cols_; }
  const std::vector<double>& values() const { return values_; }

  /// Entry (i, j), zero if not stored.
  double at(int i, int j) const;
  std::vector<double> diagonal_values() const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;

  CsrMatrix operator+(const CsrMatrix& other) const;
  CsrMatrix scaled(double s) const;
  /// this + diag(d).
  CsrMatrix plus_diagonal(std::span<const double> d) const;

  /// Max |a_ij - a_ji| over stored entries.
  double asymmetry() const;
  /// Frobenius norm.
  double norm() const;

 private:
  int n_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> cols_;
  std::vector<double> values_;
};

struct SolveReport {
  int iterations = 0;
  double final_relative_residual = 0.0;
  bool converged = false;
  std::vector<double> residual_history;  // ||r_k|| / ||b||, k = 0..iterations
};

class NumericalBreakdown : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveResult {
  std::vector<double> x;
  SolveReport report;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems. Stops when
/// ||b - A x|| <= rtol ||b||. `max_iter <= 0` means 10 n. Non-convergence is
/// reported, not thrown; NaN/Inf throws NumericalBreakdown.
SolveResult cg_solve(const CsrMatrix& A, std::span<const double> b, std::span<const double> x0, double rtol,
                     int max_iter = 0);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace litt
