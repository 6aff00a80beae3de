#include "spectriple/acproduct.hpp"

namespace spectriple {

namespace {

const cplx kI(0.0, 1.0);

CMat sigma1() {
  CMat s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

CMat sigma3() {
  CMat s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

void require_diag2(const CMat& a, const char* who) {
  require_square(a, who);
  if (a.rows() != 2) throw DimensionError(std::string(who) + ": finite side is 2x2");
  if (std::abs(a(0, 1)) > kAlgebraicTol || std::abs(a(1, 0)) > kAlgebraicTol)
    throw InvalidInput(std::string(who) + ": finite algebra elements are diagonal");
}

}  // namespace

FiniteTriple build_finite_triple_ko6(double mass) {
  if (mass == 0.0 || !std::isfinite(mass))
    throw InvalidInput("build_finite_triple_ko6: mass must be nonzero and finite");
  FiniteTriple f{2,
                 {finite_algebra_element(1.0, 0.0), finite_algebra_element(0.0, 1.0)},
                 mass * sigma1(),
                 sigma3(),
                 AntiUnitary(sigma1()),
                 EpsilonRow{},
                 0,
                 mass};
  // Measure the KO-6 sign tuple on the constructed operators.
  f.eps_row.eps0 = f.J_F.square_sign();
  f.eps_row.eps1 = commutation_sign(f.J_F.conjugate_op(f.D_F), f.D_F);
  f.eps_row.eps2 = commutation_sign(f.J_F.conjugate_op(f.Gamma_F), f.Gamma_F);
  f.eps3 = commutation_sign(f.Gamma_F * f.D_F, f.D_F * f.Gamma_F);
  if (!(f.eps_row == EpsilonRow{1, 1, -1}) || f.eps3 != -1)
    throw ConstructionError("build_finite_triple_ko6: sign tuple is not (1,1,-1;-1)");
  // Order-zero condition [a, b°] = 0 on the generators.
  for (const CMat& a : f.algebra_generators)
    for (const CMat& b : f.algebra_generators)
      if (commutator(a, finite_opposite(f, b)).norm() > kAlgebraicTol)
        throw ConstructionError("build_finite_triple_ko6: order-zero condition fails");
  return f;
}

CMat finite_algebra_element(cplx a1, cplx a2) {
  CMat a = CMat::Zero(2, 2);
  a(0, 0) = a1;
  a(1, 1) = a2;
  return a;
}

CMat finite_opposite(const FiniteTriple& f, const CMat& b) {
  require_square(b, "finite_opposite");
  if (b.rows() != f.dimF) throw DimensionError("finite_opposite: dim mismatch");
  return f.J_F.conjugate_op(b.adjoint());
}

CMat finite_first_order(const FiniteTriple& f, const CMat& a, const CMat& b) {
  return commutator(commutator(f.D_F, a), finite_opposite(f, b));
}

CMat finite_first_order_closed_form(double mass, const CMat& a, const CMat& b) {
  require_diag2(a, "finite_first_order_closed_form");
  require_diag2(b, "finite_first_order_closed_form");
  return mass * (a(1, 1) - a(0, 0)) * (b(0, 0) - b(1, 1)) * sigma1();
}

CMat build_symbol_dirac(const CliffordBasis& basis, const StructuralSet& ops,
                        const std::vector<double>& coeffs) {
  if (basis.sig.m != 2 || basis.sig.n != 1)
    throw UnsupportedDimension("build_symbol_dirac: defined on the 4D Lorentzian basis");
  if (coeffs.size() != 4)
    throw DimensionError("build_symbol_dirac: need 4 real coefficients");
  std::vector<CMat> t(4);
  for (int a = 0; a < 4; ++a) t[static_cast<size_t>(a)] = ops.K * basis.gammas[a];
  CMat d = kI * (coeffs[0] * t[1] * t[2] + coeffs[1] * t[1] * t[3] + coeffs[2] * t[2] * t[3]) +
           kI * coeffs[3] * t[1] * t[2] * t[3];
  const double scale = std::max(1.0, d.norm());
  if ((d - d.adjoint()).norm() > kAlgebraicTol * scale)
    throw ConstructionError("build_symbol_dirac: D not self-adjoint");
  if ((ops.J.conjugate_op(d) + d).norm() > kAlgebraicTol * scale)
    throw ConstructionError("build_symbol_dirac: J D != -D J");
  if (commutator(ops.Gamma, d).norm() > kAlgebraicTol * scale)
    throw ConstructionError("build_symbol_dirac: twisted grading relation fails");
  const CMat dk = ops.K * d;
  if ((dk - k_adjoint(ops.K, dk)).norm() > kAlgebraicTol * scale)
    throw ConstructionError("build_symbol_dirac: D^K not K-self-adjoint");
  return d;
}

ProductTriple build_product(const TripleSide& manifold, const FiniteTriple& finite) {
  if (manifold.kind != TripleKind::Twisted || manifold.structure == nullptr)
    throw InvalidInput("build_product: manifold side must be a twisted side");
  const StructuralSet& ops = *manifold.structure;
  const CMat& D = manifold.D;
  const CMat id_f = CMat::Identity(finite.dimF, finite.dimF);
  const CMat id_m = CMat::Identity(D.rows(), D.cols());

  ProductTriple p{manifold,
                  finite,
                  kron(D, id_f) + kron(ops.K, finite.D_F),
                  AntiUnitary(kron(ops.J.linear_part(), finite.J_F.linear_part())),
                  kron(ops.Gamma, finite.Gamma_F),
                  kron(ops.K, id_f),
                  EpsilonRow{},
                  0};

  const double scale = std::max(1.0, p.D_p.norm());
  if ((p.D_p - p.D_p.adjoint()).norm() > kAlgebraicTol * scale)
    throw InconsistentStructure("build_product: D_p is not self-adjoint");

  // Factored form D_p = (K (x) I)(D^K (x) I + I (x) D_F).
  const CMat factored = p.K_p_twist * (kron(ops.K * D, id_f) + kron(id_m, finite.D_F));
  if ((p.D_p - factored).norm() > kAlgebraicTol * scale)
    throw InconsistentStructure("build_product: factored form of D_p fails");

  p.measured.eps0 = p.J_p.square_sign();
  p.measured.eps1 = commutation_sign(p.J_p.conjugate_op(p.D_p), p.D_p);
  p.measured.eps2 = commutation_sign(p.J_p.conjugate_op(p.Gamma_p), p.Gamma_p);
  if (p.measured.eps0 != 1 || p.measured.eps1 != ops.eps || p.measured.eps2 != 1)
    throw InconsistentStructure("build_product: measured signs are not (1, eps, 1)");

  // eps3_p is defined when the manifold Dirac obeys its own twisted grading
  // relation D Gamma + rho(Gamma) D = 0 (the lattice desk Dirac does not).
  const CMat manifold_grading = D * ops.Gamma + twist_apply(ops.K, ops.Gamma) * D;
  if (manifold_grading.norm() <= kAlgebraicTol * std::max(1.0, D.norm())) {
    const CMat rho_gamma_p = twist_apply(p.K_p_twist, p.Gamma_p);
    if ((p.D_p * p.Gamma_p + rho_gamma_p * p.D_p).norm() > kAlgebraicTol * scale)
      throw InconsistentStructure("build_product: product twisted grading relation fails");
    p.eps3_p = commutation_sign(p.Gamma_p * p.D_p, p.D_p * p.Gamma_p);
    if (p.eps3_p != -ops.eps_prime)
      throw InconsistentStructure("build_product: eps3_p != -epsPrime");
  }
  return p;
}

ProductDerivation product_derivation(const ProductTriple& p, const CMat& a1, const CMat& a2) {
  const StructuralSet& ops = *p.manifold_side.structure;
  const CMat& D = p.manifold_side.D;
  require_same_dim(a1, D, "product_derivation");
  require_same_dim(a2, p.finite.D_F, "product_derivation");
  const CMat id_f = CMat::Identity(p.finite.dimF, p.finite.dimF);
  const CMat id_m = CMat::Identity(D.rows(), D.cols());

  ProductDerivation out{twisted_commutator(p.D_p, kron(a1, a2), p.K_p_twist),
                        kron(twisted_commutator(D, a1, ops.K), a2) +
                            kron(ops.K * a1, commutator(p.finite.D_F, a2)),
                        0.0, 0.0};
  out.residual = (out.lhs - out.rhs).norm();
  const CMat factored =
      p.K_p_twist * (kron(commutator(ops.K * D, a1), a2) + kron(a1, commutator(p.finite.D_F, a2)));
  out.factored_residual = (out.lhs - factored).norm();
  return out;
}

ProductFluctuation product_fluctuation(const ProductTriple& p, const CMat& u_K, const CMat& u) {
  const StructuralSet& ops = *p.manifold_side.structure;
  const CMat& D = p.manifold_side.D;
  require_same_dim(u_K, D, "product_fluctuation");
  require_same_dim(u, p.finite.D_F, "product_fluctuation");
  if (!is_k_unitary(ops.K, u_K))
    throw InvalidGaugeElement("product_fluctuation: U_K is not K-unitary");
  if ((u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).norm() > kAlgebraicTol * u.rows())
    throw InvalidGaugeElement("product_fluctuation: U is not unitary");

  const CMat id_f = CMat::Identity(p.finite.dimF, p.finite.dimF);
  const CMat id_m = CMat::Identity(D.rows(), D.cols());
  const CMat conjugator = kron(u_K, u);

  ProductFluctuation out{conjugator * p.D_p * conjugator.adjoint(), 0.0, 0.0};

  const CMat dk = ops.K * D;
  const CMat v_K = twist_apply(ops.K, u_K);
  const CMat dk_fluct = v_K * dk * k_adjoint(ops.K, v_K);
  const CMat df_fluct = u * p.finite.D_F * u.adjoint();
  const CMat decomposition = p.K_p_twist * (kron(dk_fluct, id_f) + kron(id_m, df_fluct));
  out.decomposition_residual = (out.fluctuated - decomposition).norm();

  const CMat finite_term = kron(ops.K, p.finite.D_F);
  const CMat uk_ext = kron(u_K, id_f);
  out.finite_term_invariance = (uk_ext * finite_term * uk_ext.adjoint() - finite_term).norm();
  return out;
}

std::pair<cplx, cplx> evaluate_pairing(const ProductTriple& p, const CVec& psi1,
                                       const CVec& psi2, const CVec& phi1, const CVec& phi2) {
  const StructuralSet& ops = *p.manifold_side.structure;
  const CMat& D = p.manifold_side.D;
  if (psi1.size() != D.rows() || phi1.size() != D.rows())
    throw DimensionError("evaluate_pairing: manifold component has wrong dimension");
  if (psi2.size() != p.finite.dimF || phi2.size() != p.finite.dimF)
    throw DimensionError("evaluate_pairing: finite component has wrong dimension");

  CVec psi(psi1.size() * psi2.size()), phi(phi1.size() * phi2.size());
  for (Eigen::Index i = 0; i < psi1.size(); ++i)
    for (Eigen::Index j = 0; j < psi2.size(); ++j) {
      psi(i * psi2.size() + j) = psi1(i) * psi2(j);
      phi(i * phi2.size() + j) = phi1(i) * phi2(j);
    }

  const cplx lhs = psi.dot(p.K_p_twist * (p.D_p * phi));
  const CMat dk = ops.K * D;
  const cplx rhs = psi1.dot(dk * phi1) * psi2.dot(phi2) +
                   psi1.dot(phi1) * psi2.dot(p.finite.D_F * phi2);
  return {lhs, rhs};
}

std::vector<OCandidate> clifford_monomial_candidates(const std::vector<CMat>& gammas) {
  if (gammas.empty() || gammas.size() > 8)
    throw InvalidInput("clifford_monomial_candidates: need 1..8 gammas");
  const Eigen::Index d = gammas.front().rows();
  const int count = static_cast<int>(gammas.size());
  const cplx phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<OCandidate> out;
  out.reserve((size_t(1) << count) * 4);
  for (int mask = 0; mask < (1 << count); ++mask) {
    CMat mono = CMat::Identity(d, d);
    std::vector<int> subset;
    for (int a = 0; a < count; ++a)
      if (mask & (1 << a)) {
        mono *= gammas[static_cast<size_t>(a)];
        subset.push_back(a);
      }
    for (const cplx& ph : phases) out.push_back(OCandidate{subset, ph, ph * mono});
  }
  return out;
}

std::vector<OCandidate> solve_O_constraints(const CMat& D, const AntiUnitary& J,
                                            const CMat& Gamma, int eps, int eps_prime,
                                            const std::vector<OCandidate>& candidates,
                                            const CMat* expected_member) {
  if (candidates.empty()) throw InvalidInput("solve_O_constraints: empty candidate list");
  if (eps * eps != 1 || eps_prime * eps_prime != 1)
    throw InvalidInput("solve_O_constraints: eps and epsPrime must be +-1");
  require_same_dim(D, Gamma, "solve_O_constraints");
  std::vector<OCandidate> out;
  for (const OCandidate& cand : candidates) {
    const CMat& O = cand.matrix;
    require_same_dim(O, Gamma, "solve_O_constraints");
    const double scale = std::max(1.0, O.norm());
    if ((O - O.adjoint()).norm() > kAlgebraicTol * scale) continue;
    // J O = eps O J as anti-linear maps: C conj(O) = eps O C.
    const CMat& c = J.linear_part();
    if ((c * O.conjugate() - double(eps) * O * c).norm() > kAlgebraicTol * scale) continue;
    if ((Gamma * O - double(eps_prime) * O * Gamma).norm() > kAlgebraicTol * scale) continue;
    out.push_back(cand);
  }
  if (expected_member != nullptr) {
    bool found = false;
    for (const OCandidate& cand : out)
      if ((cand.matrix - *expected_member).norm() <= kAlgebraicTol * expected_member->rows()) {
        found = true;
        break;
      }
    if (!found)
      throw InconsistentStructure("solve_O_constraints: expected operator not among survivors");
  }
  return out;
}

}  // namespace spectriple
