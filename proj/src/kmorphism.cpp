#include "spectriple/kmorphism.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace spectriple {

namespace {

const cplx kI(0.0, 1.0);

void require_involutive_symmetry(const CMat& K, const char* who) {
  require_square(K, who);
  const Eigen::Index n = K.rows();
  if ((K - K.adjoint()).norm() > kAlgebraicTol * n ||
      (K * K - CMat::Identity(n, n)).norm() > kAlgebraicTol * n)
    throw InconsistentStructure(std::string(who) + ": K must be a Hermitian involution");
}

}  // namespace

TripleSide make_twisted_side(CMat D, const StructuralSet& ops) {
  require_same_dim(D, ops.K, "make_twisted_side");
  if ((D - D.adjoint()).norm() > kAlgebraicTol * std::max(1.0, D.norm()))
    throw InconsistentStructure("make_twisted_side: D is not self-adjoint");
  return TripleSide{TripleKind::Twisted, std::move(D), &ops, InnerKind::Standard};
}

TripleSide make_pseudo_side(CMat DK, const StructuralSet& ops) {
  require_same_dim(DK, ops.K, "make_pseudo_side");
  if ((DK - k_adjoint(ops.K, DK)).norm() > kAlgebraicTol * std::max(1.0, DK.norm()))
    throw InconsistentStructure("make_pseudo_side: D^K is not K-self-adjoint");
  return TripleSide{TripleKind::Pseudo, std::move(DK), &ops, InnerKind::Krein};
}

TripleSide phi_K(const TripleSide& side) {
  if (side.structure == nullptr) throw InvalidInput("phi_K: side has no structural set");
  const CMat mapped = side.structure->K * side.D;
  return side.kind == TripleKind::Twisted ? make_pseudo_side(mapped, *side.structure)
                                          : make_twisted_side(mapped, *side.structure);
}

CMat twisted_commutator(const CMat& D, const CMat& a, const CMat& K) {
  require_same_dim(D, a, "twisted_commutator");
  require_same_dim(D, K, "twisted_commutator");
  return D * a - twist_apply(K, a) * D;
}

double check_first_order(const CMat& D, const CMat& a, const CMat& b,
                         const AntiUnitary& J, const CMat& K, bool twisted) {
  require_same_dim(D, a, "check_first_order");
  require_same_dim(D, b, "check_first_order");
  require_same_dim(D, K, "check_first_order");
  const CMat b_opp = J.conjugate_op(b.adjoint());

  const CMat twisted_nested = twisted_commutator(twisted_commutator(D, a, K), b_opp, K);
  const CMat plain_nested = commutator(commutator(K * D, a), b_opp);

  // Bridge [[D,a]_rho, b°]_rho° = K [[D^K,a], b°] holds identically.
  const CMat bridge = K * plain_nested;
  if ((twisted_nested - bridge).norm() > kAlgebraicTol * std::max(1.0, bridge.norm()))
    throw InconsistentStructure("check_first_order: twisted/plain bridge violated");

  return twisted ? twisted_nested.norm() : plain_nested.norm();
}

CMat fluctuate_type1(const CMat& D, const CMat& u, const AntiUnitary& J, const CMat& K) {
  require_same_dim(D, u, "fluctuate_type1");
  require_involutive_symmetry(K, "fluctuate_type1");
  const Eigen::Index n = u.rows();
  if ((u.adjoint() * u - CMat::Identity(n, n)).norm() > kAlgebraicTol * n)
    throw InvalidGaugeElement("fluctuate_type1: u is not unitary");
  const CMat U = u * J.conjugate_op(u);
  return U * D * k_adjoint(K, U);
}

CMat fluctuate_type2(const CMat& D, const CMat& u_K, const AntiUnitary& J, const CMat& K) {
  require_same_dim(D, u_K, "fluctuate_type2");
  require_involutive_symmetry(K, "fluctuate_type2");
  if (!is_k_unitary(K, u_K))
    throw InvalidGaugeElement("fluctuate_type2: u_K is not K-unitary");
  const CMat U_K = u_K * J.conjugate_op(u_K);
  return U_K * D * U_K.adjoint();
}

CMat type1_one_form(const CMat& D, const CMat& u, const CMat& K) {
  return twist_apply(K, u.adjoint()) * twisted_commutator(D, u, K);
}

CMat fluctuated_family(const CMat& D, const CMat& A, const AntiUnitary& J, int eps1) {
  require_same_dim(D, A, "fluctuated_family");
  if (eps1 != 1 && eps1 != -1) throw InvalidInput("fluctuated_family: eps1 must be +-1");
  return D + A + double(eps1) * J.conjugate_op(A);
}

double type2_pseudo_bridge_residual(const CMat& D, const CMat& u_K, const AntiUnitary& J,
                                    const CMat& K) {
  require_same_dim(D, u_K, "type2_pseudo_bridge_residual");
  const CMat U_K = u_K * J.conjugate_op(u_K);
  const CMat lhs = U_K * (K * D) * k_adjoint(K, U_K);
  const CMat V_K = twist_apply(K, U_K);
  const CMat rhs = K * (V_K * D * V_K.adjoint());
  return (lhs - rhs).norm();
}

// --- lattice model --------------------------------------------------------------

Eigen::Index LatticeModel::lattice_dim() const {
  Eigen::Index d = 1;
  for (size_t i = 0; i < dims_used.size(); ++i) d *= sites;
  return d;
}

Eigen::Index LatticeModel::total_dim() const { return sig.spinor_dim() * lattice_dim(); }

CMat LatticeModel::multiplication(const CVec& values) const {
  if (values.size() != lattice_dim())
    throw DimensionError("LatticeModel::multiplication: expected " +
                         std::to_string(lattice_dim()) + " site values");
  const CMat diag = values.asDiagonal();
  return kron(CMat::Identity(sig.spinor_dim(), sig.spinor_dim()), diag);
}

CMat LatticeModel::split_multiplication(const CMat& Gamma, const CVec& f1,
                                        const CVec& f2) const {
  require_square(Gamma, "LatticeModel::split_multiplication");
  if (Gamma.rows() != sig.spinor_dim())
    throw DimensionError("LatticeModel::split_multiplication: grading has wrong dimension");
  if (f1.size() != lattice_dim() || f2.size() != lattice_dim())
    throw DimensionError("LatticeModel::split_multiplication: wrong site-value count");
  const Eigen::Index s = sig.spinor_dim();
  const CMat id = CMat::Identity(s, s);
  const CMat p_plus = 0.5 * (id + Gamma);
  const CMat p_minus = 0.5 * (id - Gamma);
  const CMat d1 = f1.asDiagonal();
  const CMat d2 = f2.asDiagonal();
  return kron(p_plus, d1) + kron(p_minus, d2);
}

CMat lattice_shift(int N, int step) {
  if (N < 1) throw UnsupportedLattice("lattice_shift: N must be positive");
  CMat s = CMat::Zero(N, N);
  for (int i = 0; i < N; ++i) s(i, ((i + step) % N + N) % N) = 1.0;
  return s;
}

CMat lattice_difference(int N, double h) {
  if (h <= 0.0) throw InvalidInput("lattice_difference: spacing must be positive");
  return -kI / (2.0 * h) * (lattice_shift(N, +1) - lattice_shift(N, -1));
}

LatticeModel build_lattice_dirac(const CliffordBasis& basis, int N,
                                 const std::vector<int>& dims_used, double spacing) {
  if (N < 4 || N % 2 != 0)
    throw UnsupportedLattice("build_lattice_dirac: N must be even and >= 4, got " +
                             std::to_string(N));
  if (dims_used.empty() || dims_used.size() > 2)
    throw UnsupportedLattice("build_lattice_dirac: 1 or 2 lattice directions supported");
  std::set<int> distinct(dims_used.begin(), dims_used.end());
  if (distinct.size() != dims_used.size())
    throw InvalidInput("build_lattice_dirac: duplicate direction index");
  for (int d : dims_used)
    if (d < 0 || d >= basis.sig.space_dim())
      throw InvalidInput("build_lattice_dirac: direction index out of range");

  LatticeModel model;
  model.sig = basis.sig;
  model.sites = N;
  model.dims_used = dims_used;
  model.spacing = spacing > 0.0 ? spacing : 1.0 / N;

  const CMat p = lattice_difference(N, model.spacing);
  const CMat id_n = CMat::Identity(N, N);
  const Eigen::Index total = model.total_dim();
  model.D_lat = CMat::Zero(total, total);
  for (size_t d = 0; d < dims_used.size(); ++d) {
    CMat lattice_factor;
    if (dims_used.size() == 1)
      lattice_factor = p;
    else
      lattice_factor = (d == 0) ? kron(p, id_n) : kron(id_n, p);
    model.D_lat += kron(basis.euclid_gammas[static_cast<size_t>(dims_used[d])], lattice_factor);
  }
  if ((model.D_lat - model.D_lat.adjoint()).norm() >
      kAlgebraicTol * std::max(1.0, model.D_lat.norm()))
    throw InconsistentStructure("build_lattice_dirac: D_lat not Hermitian");
  return model;
}

CVec lattice_plane_wave(int N, int dims, int axis, int k) {
  if (N < 1 || dims < 1 || dims > 2) throw InvalidInput("lattice_plane_wave: bad N or dims");
  if (axis < 0 || axis >= dims) throw InvalidInput("lattice_plane_wave: axis out of range");
  Eigen::Index total = 1;
  for (int i = 0; i < dims; ++i) total *= N;
  CVec values(total);
  for (Eigen::Index site = 0; site < total; ++site) {
    // Row-major site order: site = x0 * N + x1 for dims = 2.
    const int coord = (dims == 1) ? static_cast<int>(site)
                                  : (axis == 0 ? static_cast<int>(site) / N
                                               : static_cast<int>(site) % N);
    const double phase = 2.0 * std::numbers::pi * k * coord / N;
    values(site) = std::polar(1.0, phase);
  }
  return values;
}

double lattice_comm_norm_oracle(int N, double h, int k) {
  if (N < 1 || h <= 0.0) throw InvalidInput("lattice_comm_norm_oracle: bad N or h");
  double worst = 0.0;
  for (int p = 0; p < N; ++p) {
    const double a = std::sin(2.0 * std::numbers::pi * (p + k) / N);
    const double b = std::sin(2.0 * std::numbers::pi * p / N);
    worst = std::max(worst, std::abs(a - b) / h);
  }
  return worst;
}

}  // namespace spectriple
