#pragma once

// Test-only oracle: dense ladder matrices on a truncated multi-mode Fock
// space, built directly from <n-1|a|n> = sqrt(n). Independent of src/fock.

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace oracle {

using cplx = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;

inline SparseOp single_mode_annihilator(int dim) {
  SparseOp a(dim, dim);
  for (int n = 1; n < dim; ++n) a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline SparseOp identity(int dim) {
  SparseOp id(dim, dim);
  id.setIdentity();
  return id;
}

inline SparseOp kron(const SparseOp& x, const SparseOp& y) {
  SparseOp out(x.rows() * y.rows(), x.cols() * y.cols());
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int i = 0; i < x.outerSize(); ++i)
    for (SparseOp::InnerIterator ix(x, i); ix; ++ix)
      for (int j = 0; j < y.outerSize(); ++j)
        for (SparseOp::InnerIterator iy(y, j); iy; ++iy)
          trips.emplace_back(ix.row() * y.rows() + iy.row(), ix.col() * y.cols() + iy.col(),
                             ix.value() * iy.value());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

/// Annihilator of `mode` among `modes` modes, mode 0 most significant.
inline SparseOp annihilator(int mode, int modes, int dim) {
  SparseOp out = mode == 0 ? single_mode_annihilator(dim) : identity(dim);
  for (int m = 1; m < modes; ++m) out = kron(out, m == mode ? single_mode_annihilator(dim) : identity(dim));
  return out;
}

/// Normalized coherent state of one mode, amplitudes up to dim-1.
inline Vec coherent(cplx alpha, int dim) {
  Vec v(dim);
  cplx amp = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < dim; ++n) {
    v[n] = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v / v.norm();
}

inline Vec kron(const Vec& x, const Vec& y) {
  Vec out(x.size() * y.size());
  for (int i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x[i] * y;
  return out;
}

}  // namespace oracle
