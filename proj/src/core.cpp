#include "spectriple/core.hpp"

namespace spectriple {

double op_2norm_estimate(const CMat& a, double rel_tol, int max_iter) {
  require_square(a, "op_2norm_estimate");
  const Eigen::Index n = a.rows();
  if (a.norm() == 0.0) return 0.0;
  // Power iteration on A^dagger A; deterministic start vector mixing all
  // coordinates so the estimate is reproducible.
  CVec v = CVec::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) += cplx(0.0, double(i + 1) / double(n));
  v.normalize();
  const CMat ata = a.adjoint() * a;
  double prev = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    CVec w = ata * v;
    const double lambda = w.norm();
    if (lambda == 0.0) return 0.0;
    v = w / lambda;
    const double sigma = std::sqrt(lambda);
    if (it > 0 && std::abs(sigma - prev) <= rel_tol * sigma) return sigma;
    prev = sigma;
  }
  return prev;
}

int AntiUnitary::square_sign() const {
  const CMat sq = u_ * u_.conjugate();
  const Eigen::Index n = u_.rows();
  const CMat id = CMat::Identity(n, n);
  if ((sq - id).norm() <= kAlgebraicTol * n) return 1;
  if ((sq + id).norm() <= kAlgebraicTol * n) return -1;
  throw InconsistentStructure("AntiUnitary::square_sign: J^2 is not +-I");
}

int commutation_sign(const CMat& lhs, const CMat& rhs, double tol) {
  require_same_dim(lhs, rhs, "commutation_sign");
  const double scale = std::max(1.0, rhs.norm());
  if ((lhs - rhs).norm() <= tol * scale) return 1;
  if ((lhs + rhs).norm() <= tol * scale) return -1;
  throw InconsistentStructure("commutation_sign: neither sign matches within tolerance");
}

CMat random_complex_matrix(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = cplx(gauss(rng), gauss(rng));
  return out;
}

CMat random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  // QR of a Ginibre matrix with the standard phase fix gives Haar-ish
  // unitaries; distribution details are irrelevant here, only unitarity is.
  const CMat g = random_complex_matrix(n, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    q.col(i) *= (d == cplx(0.0) ? cplx(1.0) : d / std::abs(d));
  }
  return q;
}

}  // namespace spectriple
