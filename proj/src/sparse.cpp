#include "litt/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace litt {

CsrMatrix CsrMatrix::from_triplets(int n, std::span<const Triplet> triplets) {
  CsrMatrix m;
  m.n_ = n;
  std::vector<int> order(triplets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ta = triplets[a];
    const auto& tb = triplets[b];
    return ta.row != tb.row ? ta.row < tb.row : ta.col < tb.col;
  });

  m.row_ptr_.assign(n + 1, 0);
  m.cols_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  int last_row = -1, last_col = -1;
  for (int k : order) {
    const auto& t = triplets[k];
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) throw std::out_of_range("triplet index out of range");
    if (t.row == last_row && t.col == last_col) {
      m.values_.back() += t.value;
    } else {
      m.cols_.push_back(t.col);
      m.values_.push_back(t.value);
      ++m.row_ptr_[t.row + 1];
      last_row = t.row;
      last_col = t.col;
    }
  }
  std::partial_sum(m.row_ptr_.begin(), m.row_ptr_.end(), m.row_ptr_.begin());
  return m;
}

CsrMatrix CsrMatrix::diagonal(std::span<const double> d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0.0) t.push_back({static_cast<int>(i), static_cast<int>(i), d[i]});
  return from_triplets(static_cast<int>(d.size()), t);
}

double CsrMatrix::at(int i, int j) const {
  const auto begin = cols_.begin() + row_ptr_[i];
  const auto end = cols_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  return (it != end && *it == j) ? values_[it - cols_.begin()] : 0.0;
}

std::vector<double> CsrMatrix::diagonal_values() const {
  std::vector<double> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = at(i, i);
  return d;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[cols_[k]];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(n_);
  multiply(x, y);
  return y;
}

CsrMatrix CsrMatrix::operator+(const CsrMatrix& other) const {
  if (other.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  CsrMatrix m;
  m.n_ = n_;
  m.row_ptr_.assign(n_ + 1, 0);
  m.cols_.reserve(nnz() + other.nnz());
  m.values_.reserve(nnz() + other.nnz());
  for (int i = 0; i < n_; ++i) {
    int a = row_ptr_[i], b = other.row_ptr_[i];
    const int ae = row_ptr_[i + 1], be = other.row_ptr_[i + 1];
    while (a < ae || b < be) {
      if (b >= be || (a < ae && cols_[a] < other.cols_[b])) {
        m.cols_.push_back(cols_[a]);
        m.values_.push_back(values_[a++]);
      } else if (a >= ae || other.cols_[b] < cols_[a]) {
        m.cols_.push_back(other.cols_[b]);
        m.values_.push_back(other.values_[b++]);
      } else {
        m.cols_.push_back(cols_[a]);
        m.values_.push_back(values_[a++] + other.values_[b++]);
      }
    }
    m.row_ptr_[i + 1] = static_cast<int>(m.cols_.size());
  }
  return m;
}

CsrMatrix CsrMatrix::scaled(double s) const {
  CsrMatrix m = *this;
  for (auto& v : m.values_) v *= s;
  return m;
}

CsrMatrix CsrMatrix::plus_diagonal(std::span<const double> d) const {
  if (static_cast<int>(d.size()) != n_) throw std::invalid_argument("diagonal size mismatch");
  return *this + diagonal(d);
}

double CsrMatrix::asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      worst = std::max(worst, std::abs(values_[k] - at(cols_[k], i)));
  return worst;
}

double CsrMatrix::norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

SolveResult cg_solve(const CsrMatrix& A, std::span<const double> b, std::span<const double> x0, double rtol,
                     int max_iter) {
  const int n = A.size();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("cg_solve: dimension mismatch");
  if (max_iter <= 0) max_iter = 10 * std::max(n, 1);

  SolveResult out;
  out.x.assign(x0.begin(), x0.end());
  auto& x = out.x;
  auto& rep = out.report;

  const double b_norm = norm2(b);
  if (!std::isfinite(b_norm)) throw NumericalBreakdown("cg_solve: right-hand side is not finite");
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    rep.converged = true;
    rep.residual_history = {0.0};
    return out;
  }

  std::vector<double> inv_diag = A.diagonal_values();
  for (auto& d : inv_diag) {
    if (!(d > 0.0)) throw NumericalBreakdown("cg_solve: non-positive diagonal entry");
    d = 1.0 / d;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  A.multiply(x, r);
  for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double rel = norm2(r) / b_norm;
  rep.residual_history.push_back(rel);

  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);

  int it = 0;
  while (rel > rtol && it < max_iter) {
    A.multiply(p, q);
    const double pq = dot(p, q);
    if (!std::isfinite(pq) || !(pq > 0.0))
      throw NumericalBreakdown("cg_solve: breakdown at iteration " + std::to_string(it) + " (p'Ap = " +
                               std::to_string(pq) + ")");
    const double alpha = rz / pq;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    ++it;
    rel = norm2(r) / b_norm;
    if (!std::isfinite(rel)) throw NumericalBreakdown("cg_solve: residual is not finite");
    rep.residual_history.push_back(rel);

    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  // The recurrence drifts from the true residual; report the true one.
  A.multiply(x, r);
  for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
  rep.final_relative_residual = norm2(r) / b_norm;
  rep.iterations = it;
  rep.converged = rep.final_relative_residual <= rtol;
  return out;
}

}  // namespace litt
