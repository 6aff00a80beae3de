#include "spectriple/structural.hpp"

namespace spectriple {

namespace {

const cplx kI(0.0, 1.0);

cplx i_power(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return cplx(1.0, 0.0);
    case 1: return cplx(0.0, 1.0);
    case 2: return cplx(-1.0, 0.0);
    default: return cplx(0.0, -1.0);
  }
}

CMat ordered_product(const std::vector<CMat>& gammas, const std::vector<int>& idx,
                     Eigen::Index dim) {
  CMat out = CMat::Identity(dim, dim);
  for (int i : idx) out *= gammas[static_cast<size_t>(i)];
  return out;
}

// +1 if conj(g) == g, -1 if conj(g) == -g, 0 otherwise.
int conjugation_parity(const CMat& g) {
  if ((g.conjugate() - g).norm() <= kAlgebraicTol * std::max(1.0, g.norm())) return 1;
  if ((g.conjugate() + g).norm() <= kAlgebraicTol * std::max(1.0, g.norm())) return -1;
  return 0;
}

cplx leading_entry(const CMat& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j)) > 1e-12) return a(i, j);
  throw InconsistentStructure("leading_entry: zero matrix");
}

CMat conjugation_from(const std::vector<CMat>& gammas, Eigen::Index dim) {
  std::vector<int> odd, even;
  for (size_t a = 0; a < gammas.size(); ++a) {
    const int parity = conjugation_parity(gammas[a]);
    if (parity == 0)
      throw NonRealizableBasis("build_charge_conjugation: gamma is neither real nor imaginary");
    (parity == -1 ? odd : even).push_back(static_cast<int>(a));
  }
  const std::vector<int>& use = (odd.size() % 2 == 1) ? odd : even;
  CMat c0 = ordered_product(gammas, use, dim);
  const cplx p = leading_entry(c0);
  return (std::conj(p) / std::abs(p)) * c0;
}

}  // namespace

CMat build_K(const CliffordBasis& basis) {
  const int m = basis.sig.m, n = basis.sig.n;
  const Eigen::Index dim = basis.sig.spinor_dim();
  std::vector<int> idx;
  int s = 0;
  if (n % 2 == 1) {
    for (int a = 0; a < n; ++a) idx.push_back(a);
    s = n * (n - 1) / 2;
  } else {
    for (int a = n; a < 2 * m; ++a) idx.push_back(a);
    const int k = 2 * m - n;
    s = k * (k + 1) / 2;
  }
  return i_power(-s) * ordered_product(basis.gammas, idx, dim);
}

CMat build_grading(const CliffordBasis& basis) {
  const int m = basis.sig.m, n = basis.sig.n;
  const Eigen::Index dim = basis.sig.spinor_dim();
  std::vector<int> all(static_cast<size_t>(2 * m));
  for (int a = 0; a < 2 * m; ++a) all[static_cast<size_t>(a)] = a;
  const int t = m * (2 * m - 1) + n;
  return i_power(t) * ordered_product(basis.gammas, all, dim);
}

ChargeConjugation build_charge_conjugation(const CliffordBasis& basis) {
  const Eigen::Index dim = basis.sig.spinor_dim();
  CMat c = conjugation_from(basis.gammas, dim);
  CMat c_hat = conjugation_from(basis.euclid_gammas, dim);
  AntiUnitary j(c), j_hat(c_hat);
  return ChargeConjugation{std::move(c), std::move(c_hat), std::move(j), std::move(j_hat)};
}

StructuralSet build_structural(const CliffordBasis& basis) {
  const int m = basis.sig.m, n = basis.sig.n;
  CMat K = build_K(basis);
  CMat Gamma = build_grading(basis);
  ChargeConjugation cc = build_charge_conjugation(basis);

  // lambda in C = lambda K C_hat.
  const int lambda = commutation_sign(cc.C, K * cc.C_hat);

  StructuralSet set{std::move(K),     std::move(Gamma), std::move(cc.C), std::move(cc.C_hat),
                    std::move(cc.J), std::move(cc.J_hat),
                    ko_dimension(n, m), ko_dimension_row(n, m), 0, 0, lambda};

  const auto [eps, eps_prime] = epsilon_parameters(basis, set);
  set.eps = eps;
  set.eps_prime = eps_prime;

  // Cross-check the KO table row against measured signs on the constructed
  // operators (J^2, J vs D^K on the minimal derivative model, J vs Gamma).
  const EpsilonRow measured = measure_ko_row(basis, set);
  if (!(measured == set.table_row))
    throw InconsistentStructure("build_structural: measured KO signs disagree with table");
  return set;
}

StructuralSet extend_structural(const StructuralSet& ops, Eigen::Index factor_dim) {
  if (factor_dim < 1) throw InvalidInput("extend_structural: factor dimension must be >= 1");
  const CMat id = CMat::Identity(factor_dim, factor_dim);
  CMat c_ext = kron(ops.C, id);
  CMat c_hat_ext = kron(ops.C_hat, id);
  AntiUnitary j_ext(c_ext), j_hat_ext(c_hat_ext);
  return StructuralSet{kron(ops.K, id),   kron(ops.Gamma, id), std::move(c_ext),
                       std::move(c_hat_ext), std::move(j_ext),  std::move(j_hat_ext),
                       ops.ko,             ops.table_row,       ops.eps,
                       ops.eps_prime,      ops.lambda};
}

CMat twist_apply(const CMat& K, const CMat& O) {
  require_same_dim(K, O, "twist_apply");
  return K * O * K.adjoint();
}

bool check_regularity(const CMat& K, int samples, std::uint64_t seed, double tol) {
  require_square(K, "check_regularity");
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const CMat a = random_complex_matrix(K.rows(), rng);
    const CMat lhs = twist_apply(K, a.adjoint());              // rho(a^dag)
    const CMat rhs = (K.adjoint() * a * K).adjoint();          // (rho^{-1}(a))^dag
    if ((lhs - rhs).norm() > tol * std::max(1.0, lhs.norm())) return false;
  }
  return true;
}

cplx k_product(const CMat& K, const CVec& psi, const CVec& phi) {
  if (psi.size() != K.rows() || phi.size() != K.rows())
    throw DimensionError("k_product: dim mismatch");
  return psi.dot(K * phi);
}

CMat k_adjoint(const CMat& K, const CMat& O) {
  require_same_dim(K, O, "k_adjoint");
  return K * O.adjoint() * K;
}

bool is_k_unitary(const CMat& K, const CMat& U, double tol) {
  require_same_dim(K, U, "is_k_unitary");
  const double scale = std::max(1.0, K.norm());
  return (U * K * U.adjoint() - K).norm() <= tol * scale &&
         (U.adjoint() * K * U - K).norm() <= tol * scale;
}

CRowVec spinor_dual(const CMat& K, const CVec& psi) {
  if (psi.size() != K.rows()) throw DimensionError("spinor_dual: dim mismatch");
  return psi.adjoint() * K;
}

std::pair<int, int> kj_sign_law(int m, int n) {
  if (n % 2 == 1) {
    const int e = (n * (3 * n - 1) / 2) % 2;
    return {e == 0 ? 1 : -1, -1};
  }
  const int k = 2 * m - n;
  const int e = (k * (k + 1) / 2) % 2;
  return {e == 0 ? 1 : -1, 1};
}

std::pair<int, int> epsilon_parameters(const CliffordBasis& basis, const StructuralSet& ops) {
  // K o J = eps J o K as anti-linear maps means K C = eps C conj(K).
  const int eps = commutation_sign(ops.K * ops.C, ops.C * ops.K.conjugate());
  const int eps_prime = commutation_sign(ops.K * ops.Gamma, ops.Gamma * ops.K);
  const auto law = kj_sign_law(basis.sig.m, basis.sig.n);
  if (eps != law.first || eps_prime != law.second)
    throw InconsistentStructure("epsilon_parameters: measured signs disagree with sign law");
  return {eps, eps_prime};
}

int ko_dimension(int n, int m) {
  const int ko = ((2 * (n - m)) % 8 + 8) % 8;
  if (ko % 2 != 0) throw InconsistentStructure("ko_dimension: odd KO dimension");
  return ko;
}

EpsilonRow ko_dimension_row(int n, int m) {
  switch (ko_dimension(n, m)) {
    case 0: return {1, 1, 1};
    case 2: return {-1, 1, -1};
    case 4: return {-1, 1, 1};
    case 6: return {1, 1, -1};
    default: throw InconsistentStructure("ko_dimension_row: unreachable");
  }
}

TwistedRow twisted_table_row(EpsilonRow from_ko, int eps, int eps_prime) {
  TwistedRow row{from_ko.eps0, eps * from_ko.eps1, from_ko.eps2, -eps_prime, ""};
  if (row.eps0 == 1 && row.eps1 == -1 && row.eps2 == 1 && row.eps3 == 1)
    row.column = "(2)";
  else if (row.eps0 == 1 && row.eps1 == -1 && row.eps2 == -1 && row.eps3 == 1)
    row.column = "(4)";
  return row;
}

bool spin_identity_check(const CliffordBasis& basis, const CMat& K,
                         const std::vector<RVec>& factors) {
  const int d2m = basis.sig.space_dim();
  const Eigen::Index dim = basis.sig.spinor_dim();
  CMat x = CMat::Identity(dim, dim);
  int q = 0;
  for (const RVec& v : factors) {
    if (v.size() != d2m) throw DimensionError("spin_identity_check: factor has wrong dimension");
    double norm_g = 0.0;
    for (int a = 0; a < d2m; ++a) norm_g += basis.metric_sign(a) * v(a) * v(a);
    if (std::abs(std::abs(norm_g) - 1.0) > 1e-9)
      throw InvalidFactor("spin_identity_check: factor is not a unit vector, |g(v,v)| = " +
                          std::to_string(std::abs(norm_g)));
    if (norm_g < 0.0) ++q;
    CMat cv = CMat::Zero(dim, dim);
    for (int a = 0; a < d2m; ++a) cv += cplx(v(a), 0.0) * basis.gammas[a];
    x *= cv;
  }
  const double sign = (q % 2 == 0) ? 1.0 : -1.0;
  const CMat candidate_inverse = sign * twist_apply(K, x.adjoint());
  const CMat id = CMat::Identity(dim, dim);
  if ((x * candidate_inverse - id).norm() > kAlgebraicTol * dim) return false;
  if ((candidate_inverse * x - id).norm() > kAlgebraicTol * dim) return false;
  if (q % 2 == 0 && factors.size() % 2 == 0 && !is_k_unitary(K, x)) return false;
  return true;
}

MiniModel build_mini_model(const CliffordBasis& basis, const StructuralSet& ops,
                           const std::vector<double>& coeffs) {
  const int d2m = basis.sig.space_dim();
  if (static_cast<int>(coeffs.size()) != d2m)
    throw DimensionError("build_mini_model: need one real coefficient per direction");
  const Eigen::Index dim = basis.sig.spinor_dim();
  // R = i [[0,1],[-1,0]]: Hermitian with conj(R) = -R, the algebraic shadow of
  // a derivative (anti-real, symmetric).
  CMat r(2, 2);
  r << 0, kI, -kI, 0;
  const CMat i2 = CMat::Identity(2, 2);
  CMat dk = CMat::Zero(2 * dim, 2 * dim);
  for (int a = 0; a < d2m; ++a) dk += cplx(coeffs[a], 0.0) * kron(basis.gammas[a], r);
  MiniModel mm{dk, CMat(), kron(ops.K, i2), kron(ops.Gamma, i2), kron(ops.C, i2)};
  mm.D = mm.K * mm.DK;
  return mm;
}

EpsilonRow measure_ko_row(const CliffordBasis& basis, const StructuralSet& ops) {
  std::vector<double> coeffs(static_cast<size_t>(basis.sig.space_dim()));
  for (size_t a = 0; a < coeffs.size(); ++a) coeffs[a] = 0.3 + 0.17 * static_cast<double>(a);
  const MiniModel mm = build_mini_model(basis, ops, coeffs);
  const int eps0 = ops.J.square_sign();
  // J' D^K = eps1 D^K J'  <=>  C' conj(D^K) = eps1 D^K C'.
  const int eps1 = commutation_sign(mm.C * mm.DK.conjugate(), mm.DK * mm.C);
  const int eps2 = commutation_sign(ops.C * ops.Gamma.conjugate(), ops.Gamma * ops.C);
  return {eps0, eps1, eps2};
}

}  // namespace spectriple
