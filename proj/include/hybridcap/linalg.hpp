#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hybridcap {

// log2 det(A) for Hermitian positive definite A.
inline double log2_det_hpd(const Eigen::MatrixXcd& a) {
  const Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) throw std::domain_error("matrix is not positive definite");
  double s = 0;
  const auto diag = llt.matrixLLT().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) s += std::log2(std::real(diag[i]));
  return 2 * s;
}

// log2 det(I + p H H^H)
inline double log2_det_identity_plus(const Eigen::MatrixXcd& h, double p) {
  const Eigen::Index r = h.rows();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(r, r);
  a.noalias() += p * h * h.adjoint();
  return log2_det_hpd(a);
}

// Rates of successive interference cancellation with MMSE receivers.
// Columns of h are the users' channels, each with power p, noise covariance
// n (Hermitian positive definite). User i is decoded with users i+1.. as
// interference and users ..i-1 already cancelled. The rates sum to
// log2 det(I + p H H^H N^-1).
inline std::vector<double> sic_rates(const Eigen::MatrixXcd& h, double p, const Eigen::MatrixXcd& n) {
  const Eigen::Index k = h.cols();
  std::vector<double> rates(static_cast<std::size_t>(k));
  // Walk backwards keeping inv(N + p sum_{j>i} h_j h_j^H) by Sherman-Morrison.
  Eigen::MatrixXcd inv = n.llt().solve(Eigen::MatrixXcd::Identity(n.rows(), n.cols()));
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    const Eigen::VectorXcd u = inv * h.col(i);
    const double q = std::real(h.col(i).dot(u));  // h^H inv h
    rates[static_cast<std::size_t>(i)] = std::log2(1 + p * q);
    inv.noalias() -= (p / (1 + p * q)) * u * u.adjoint();
  }
  return rates;
}

}  // namespace hybridcap
