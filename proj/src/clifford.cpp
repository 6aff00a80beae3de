#include "spectriple/clifford.hpp"

#include <Eigen/SVD>

namespace spectriple {

namespace {

const cplx kI(0.0, 1.0);

CMat pauli(int which) {
  CMat s(2, 2);
  switch (which) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

}  // namespace

void Signature::validate() const {
  if (m < 1 || m > 4)
    throw UnsupportedDimension("Signature: m must be in [1,4], got " + std::to_string(m));
  if (n < 0 || n > 2 * m)
    throw UnsupportedDimension("Signature: n must be in [0,2m], got " + std::to_string(n));
}

std::vector<CMat> build_euclidean_gammas(int m) {
  if (m < 1 || m > 4)
    throw UnsupportedDimension("build_euclidean_gammas: m must be in [1,4], got " +
                               std::to_string(m));
  const CMat s1 = pauli(1), s2 = pauli(2), s3 = pauli(3);
  const CMat i2 = CMat::Identity(2, 2);
  std::vector<CMat> out;
  out.reserve(2 * m);
  for (int slot = 1; slot <= m; ++slot) {
    for (const CMat* mid : {&s1, &s2}) {
      CMat g = CMat::Identity(1, 1);
      for (int j = 1; j <= m; ++j) {
        const CMat& factor = (j < slot) ? s3 : (j == slot ? *mid : i2);
        g = kron(g, factor);
      }
      out.push_back(g);
    }
  }
  return out;
}

CliffordBasis wick_rotate(const std::vector<CMat>& euclid, Signature sig) {
  sig.validate();
  if (static_cast<int>(euclid.size()) != sig.space_dim())
    throw InvalidBasis("wick_rotate: expected " + std::to_string(sig.space_dim()) +
                       " euclidean gammas, got " + std::to_string(euclid.size()));
  const Eigen::Index d = sig.spinor_dim();
  for (const CMat& e : euclid) {
    require_square(e, "wick_rotate");
    if (e.rows() != d) throw InvalidBasis("wick_rotate: gamma dimension != 2^m");
  }
  // Input must satisfy the Euclidean relation and Hermiticity.
  for (size_t a = 0; a < euclid.size(); ++a) {
    if ((euclid[a] - euclid[a].adjoint()).norm() > kAlgebraicTol)
      throw InvalidBasis("wick_rotate: euclidean gamma not Hermitian");
    for (size_t b = 0; b < euclid.size(); ++b) {
      const CMat anti = euclid[a] * euclid[b] + euclid[b] * euclid[a];
      const CMat want = (a == b) ? CMat(2.0 * CMat::Identity(d, d)) : CMat(CMat::Zero(d, d));
      if ((anti - want).norm() > kAlgebraicTol * d)
        throw InvalidBasis("wick_rotate: euclidean Clifford relation fails");
    }
  }
  CliffordBasis basis;
  basis.sig = sig;
  basis.euclid_gammas = euclid;
  basis.gammas.reserve(euclid.size());
  for (int a = 0; a < sig.space_dim(); ++a)
    basis.gammas.push_back(a < sig.n ? euclid[a] : CMat(-kI * euclid[a]));
  return basis;
}

CliffordBasis build_basis(Signature sig) {
  sig.validate();
  return wick_rotate(build_euclidean_gammas(sig.m), sig);
}

CliffordBasis chiral_gammas_4d() { return build_basis(Signature{2, 1}); }

double verify_clifford(const CliffordBasis& basis) {
  const int d2m = basis.sig.space_dim();
  const Eigen::Index d = basis.sig.spinor_dim();
  double worst = 0.0;
  for (int a = 0; a < d2m; ++a) {
    for (int b = 0; b < d2m; ++b) {
      const double gab = (a == b) ? basis.metric_sign(a) : 0.0;
      const CMat res = basis.gammas[a] * basis.gammas[b] + basis.gammas[b] * basis.gammas[a] -
                       2.0 * gab * CMat::Identity(d, d);
      worst = std::max(worst, res.norm());
    }
  }
  return worst;
}

std::vector<CMat> vielbein_apply(const RMat& e, const CliffordBasis& basis) {
  const int d2m = basis.sig.space_dim();
  if (e.rows() != d2m || e.cols() != d2m)
    throw DimensionError("vielbein_apply: frame matrix must be 2m x 2m");
  Eigen::FullPivLU<RMat> lu(e);
  if (!lu.isInvertible()) throw SingularVielbein("vielbein_apply: singular frame matrix");
  const Eigen::Index d = basis.sig.spinor_dim();
  std::vector<CMat> out(d2m, CMat::Zero(d, d));
  for (int mu = 0; mu < d2m; ++mu)
    for (int a = 0; a < d2m; ++a) out[mu] += cplx(e(mu, a), 0.0) * basis.gammas[a];
  return out;
}

int commutant_dimension(const std::vector<CMat>& gammas) {
  if (gammas.empty()) throw InvalidInput("commutant_dimension: empty basis");
  const Eigen::Index d = gammas.front().rows();
  // Row-major vectorization: vec(A X B) = (A (x) B^T) vec(X). Stack the
  // commutator maps X -> gamma X - X gamma and count the nullspace by SVD.
  const Eigen::Index d2 = d * d;
  CMat stacked(static_cast<Eigen::Index>(gammas.size()) * d2, d2);
  const CMat id = CMat::Identity(d, d);
  for (size_t k = 0; k < gammas.size(); ++k) {
    require_square(gammas[k], "commutant_dimension");
    stacked.middleRows(static_cast<Eigen::Index>(k) * d2, d2) =
        kron(gammas[k], id) - kron(id, gammas[k].transpose());
  }
  Eigen::JacobiSVD<CMat> svd(stacked);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-9 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return static_cast<int>(d2 - rank);
}

}  // namespace spectriple
