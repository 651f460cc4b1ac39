#pragma once

// Brute-force Borel cocycle: every strat class is computed from scratch with
// full SVDs of the spanning vectors, and volumes come from the dihedral-angle
// dilogarithm oracle. Shares no code path with the library's evaluation.

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "oracle/dilog_oracle.hpp"

namespace borelrig::oracle {

using CMatrix = Eigen::MatrixXcd;

inline int svd_rank(const CMatrix& m) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  while (r < s.size() && s(r) > 1e-9 * s(0)) ++r;
  return r;
}

inline CMatrix leading_columns(const std::array<CMatrix, 4>& bases, const std::array<int, 4>& k) {
  const auto n = bases[0].rows();
  CMatrix out(n, k[0] + k[1] + k[2] + k[3]);
  Eigen::Index c = 0;
  for (int i = 0; i < 4; ++i) {
    out.middleCols(c, k[i]) = bases[i].leftCols(k[i]);
    c += k[i];
  }
  return out;
}

inline double volume4(const std::array<std::complex<double>, 8>& h) {
  auto det = [&](int i, int j) { return h[2 * i] * h[2 * j + 1] - h[2 * i + 1] * h[2 * j]; };
  const auto num = det(2, 0) * det(1, 3);
  const auto den = det(2, 3) * det(1, 0);
  if (std::abs(num) < 1e-14 || std::abs(den) < 1e-14) return 0.0;
  return bloch_wigner_angles(num / den);
}

/// bases[i] columns are the decoration vectors of flag i.
inline double borel_brute_force(const std::array<CMatrix, 4>& bases) {
  const int n = static_cast<int>(bases[0].rows());
  double total = 0.0;
  std::array<int, 4> j{};
  for (j[0] = 0; j[0] < n; ++j[0])
    for (j[1] = 0; j[1] < n; ++j[1])
      for (j[2] = 0; j[2] < n; ++j[2])
        for (j[3] = 0; j[3] < n; ++j[3]) {
          const std::array<int, 4> up = {j[0] + 1, j[1] + 1, j[2] + 1, j[3] + 1};
          const CMatrix lower = leading_columns(bases, j);
          const CMatrix upper = leading_columns(bases, up);
          const int d_lower = svd_rank(lower);
          if (svd_rank(upper) - d_lower != 2) continue;
          CMatrix projector = CMatrix::Identity(n, n);
          if (d_lower > 0) {
            Eigen::JacobiSVD<CMatrix> svd(lower, Eigen::ComputeThinU);
            const CMatrix q = svd.matrixU().leftCols(d_lower);
            projector -= q * q.adjoint();
          }
          Eigen::JacobiSVD<CMatrix> svd(projector * upper, Eigen::ComputeThinU);
          const CMatrix e = svd.matrixU().leftCols(2);
          std::array<std::complex<double>, 8> h{};
          bool zero = false;
          for (int i = 0; i < 4; ++i) {
            const Eigen::VectorXcd v = bases[i].col(j[i]);
            const Eigen::VectorXcd c = e.adjoint() * (projector * v);
            if (c.norm() < 1e-9 * v.norm()) zero = true;
            h[2 * i] = c(0);
            h[2 * i + 1] = c(1);
          }
          if (!zero) total += volume4(h);
        }
  return total;
}

}  // namespace borelrig::oracle
