#ifndef SPECTRIPLE_ACPRODUCT_HPP
#define SPECTRIPLE_ACPRODUCT_HPP

// ---------------------------------------------------------------------------
// acproduct: the almost-commutative product of a twisted manifold-side triple
// (A, H, D, J, Gamma; rho = K . K) with a minimal finite triple of
// KO-dimension 6:
//
//   H_p = H (x) H_F,   D_p = D (x) I_F + K (x) D_F,
//   J_p = J (x) J_F,   Gamma_p = Gamma (x) Gamma_F,   rho_p = rho (x) id.
//
// The K-factor in the second Dirac term is what makes D_p self-adjoint when
// D_F is: it replaces the grading used in the untwisted almost-commutative
// product.  The factored form D_p = (K (x) I)(D^K (x) I + I (x) D_F) then
// decouples the two sides: derivations split exactly as
//   [D_p, a1 (x) a2]_rho_p = [D,a1]_rho (x) a2 + (K a1) (x) [D_F, a2],
// fluctuations act independently on the two factors, and the Krein pairing
// of D_p splits into the Krein pairing of D^K and the Hilbert pairing of D_F.
//
// The finite triple here is the minimal KO-6 realization on C^2 with
// D_F = mass sigma1, Gamma_F = sigma3, J_F = sigma1 o cc and the diagonal
// algebra.  Its sign tuple (1, 1, -1; eps3 = -1) is machine-verified at
// construction.  Note the diagonal algebra does NOT satisfy the first-order
// condition: [[D_F, a], b°] = mass (a2 - a1)(b1 - b2) sigma1 in closed form,
// which is generically nonzero; the product constructions never rely on it.
// ---------------------------------------------------------------------------

#include "spectriple/clifford.hpp"
#include "spectriple/core.hpp"
#include "spectriple/kmorphism.hpp"
#include "spectriple/structural.hpp"

#include <utility>
#include <vector>

namespace spectriple {

// --- the finite KO-6 triple ----------------------------------------------------

struct FiniteTriple {
  int dimF = 0;
  std::vector<CMat> algebra_generators;  // span of diag(a1, a2)
  CMat D_F;
  CMat Gamma_F;
  AntiUnitary J_F;
  EpsilonRow eps_row;  // (1, 1, -1), measured at construction
  int eps3 = 0;        // -1, measured at construction
  double mass = 0.0;
};

// dimF = 2, D_F = mass sigma1, Gamma_F = sigma3, J_F = sigma1 o cc.
// mass must be nonzero (InvalidInput); a failed invariant measurement is a
// programming bug and throws ConstructionError.
FiniteTriple build_finite_triple_ko6(double mass);

// diag(a1, a2).
CMat finite_algebra_element(cplx a1, cplx a2);

// b° = J_F b^dag J_F^{-1}; for diagonal b = diag(b1, b2) this is diag(b2, b1).
CMat finite_opposite(const FiniteTriple& f, const CMat& b);

// [[D_F, a], b°], evaluated directly.
CMat finite_first_order(const FiniteTriple& f, const CMat& a, const CMat& b);

// The closed form mass (a2 - a1)(b1 - b2) sigma1 for diagonal a, b.
CMat finite_first_order_closed_form(double mass, const CMat& a, const CMat& b);

// --- manifold-side symbol Dirac ---------------------------------------------------

// Desk-scale twisted Dirac on the 4D Lorentzian basis (m = 2, n = 1), built
// from the Hermitian anticommuting tilde gammas gammaT^a = K gamma^a of the
// spatial directions:
//   D = i (c0 gT1 gT2 + c1 gT1 gT3 + c2 gT2 gT3) + i c3 gT1 gT2 gT3.
// Self-adjoint, J D = -D J, [Gamma, D] = 0 (the twisted grading relation for
// epsPrime = -1), and D^K = K D is K-self-adjoint; all verified at
// construction (ConstructionError on failure).  coeffs must hold 4 reals.
CMat build_symbol_dirac(const CliffordBasis& basis, const StructuralSet& ops,
                        const std::vector<double>& coeffs);

// --- the product triple -----------------------------------------------------------

struct ProductTriple {
  TripleSide manifold_side;  // twisted side; keeps a pointer to its StructuralSet
  FiniteTriple finite;
  CMat D_p;
  AntiUnitary J_p;
  CMat Gamma_p;
  CMat K_p_twist;      // K (x) I_F, the product twist rho_p = K_p . K_p
  EpsilonRow measured;  // (eps0_p, eps1_p, eps2_p) = (1, eps, 1)
  int eps3_p = 0;       // -epsPrime when the manifold D obeys the twisted
                        // grading relation; 0 (unmeasured) otherwise
};

// Assembles and verifies the product: D_p self-adjoint, factored form
// D_p = (K (x) I)(D^K (x) I + I (x) D_F), measured signs (1, eps, 1) and,
// when defined, eps3_p = -epsPrime together with the product twisted grading
// D_p Gamma_p + rho_p(Gamma_p) D_p = 0.  InconsistentStructure on any
// mismatch.  The manifold side must be a twisted side (InvalidInput).
ProductTriple build_product(const TripleSide& manifold, const FiniteTriple& finite);

// --- the section-5 propositions ----------------------------------------------------

struct ProductDerivation {
  CMat lhs;  // [D_p, a1 (x) a2]_rho_p
  CMat rhs;  // [D, a1]_rho (x) a2 + (K a1) (x) [D_F, a2]
  double residual = 0.0;
  double factored_residual = 0.0;  // against (K (x) I)([D^K,a1] (x) a2 + a1 (x) [D_F,a2])
};
ProductDerivation product_derivation(const ProductTriple& p, const CMat& a1, const CMat& a2);

struct ProductFluctuation {
  CMat fluctuated;  // (U_K (x) U) D_p (U_K^dag (x) U^dag)
  // Residual against (K (x) I)(V_K D^K V_K^{dag_K} (x) I + I (x) U D_F U^dag)
  // with V_K = rho(U_K).
  double decomposition_residual = 0.0;
  // || (U_K (x) I)(K (x) D_F)(U_K^dag (x) I) - K (x) D_F ||: the finite Dirac
  // term is invariant exactly because U_K is K-unitary.
  double finite_term_invariance = 0.0;
};
// U_K must be K-unitary on the manifold side and u unitary on the finite side
// (InvalidGaugeElement otherwise).
ProductFluctuation product_fluctuation(const ProductTriple& p, const CMat& u_K, const CMat& u);

// Krein evaluation pairing on product vectors psi = psi1 (x) psi2,
// phi = phi1 (x) phi2:
//   lhs = < psi, (K (x) I) D_p phi >
//   rhs = < psi1, D^K phi1 > < psi2, phi2 > + < psi1, phi1 > < psi2, D_F phi2 >.
// The identity is term-by-term exact since (K (x) I) D_p = D^K (x) I + I (x) D_F.
std::pair<cplx, cplx> evaluate_pairing(const ProductTriple& p, const CVec& psi1,
                                       const CVec& psi2, const CVec& phi1, const CVec& phi2);

// --- constraints forcing O = K -----------------------------------------------------

struct OCandidate {
  std::vector<int> subset;  // gamma indices, increasing
  cplx phase{1.0, 0.0};
  CMat matrix;
};

// All 2^{2m} monomials of the given gammas with phases {1, i, -1, -i}.
std::vector<OCandidate> clifford_monomial_candidates(const std::vector<CMat>& gammas);

// Keeps the candidates satisfying the three constraints of the product
// construction: O = O^dag, J O = eps O J, Gamma O = epsPrime O Gamma (each at
// kAlgebraicTol).  D is part of the interface for dimensional validation; the
// constraints themselves do not involve it.  Empty candidate list ->
// InvalidInput.  If expected_member is non-null, asserts it appears among the
// survivors (InconsistentStructure otherwise).
std::vector<OCandidate> solve_O_constraints(const CMat& D, const AntiUnitary& J,
                                            const CMat& Gamma, int eps, int eps_prime,
                                            const std::vector<OCandidate>& candidates,
                                            const CMat* expected_member = nullptr);

}  // namespace spectriple

#endif  // SPECTRIPLE_ACPRODUCT_HPP
