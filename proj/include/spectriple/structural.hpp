#ifndef SPECTRIPLE_STRUCTURAL_HPP
#define SPECTRIPLE_STRUCTURAL_HPP

// ---------------------------------------------------------------------------
// structural: the fundamental symmetry K, grading Gamma, charge conjugation
// C (real structure J = C o cc), the twist rho = K . K, Krein-product
// helpers, KO-dimension sign tables, and the Clifford spin identities.
//
// Phase conventions (all verified exhaustively for m <= 4, 0 <= n <= 2m):
//   K     = i^(-s) K0.  For n odd, K0 = gamma^(0)...gamma^(n-1) (the n plus
//           directions) and s = n(n-1)/2.  For n even, K0 is the product of
//           the 2m-n minus directions and s = k(k+1)/2 with k = 2m-n; K0
//           squares to (-1)^s I, so the i-power is required to keep K = K^dag
//           and K^2 = I (it is not optional: for k = 2 mod 4 no real multiple
//           of K0 is an involution).
//   Gamma = i^t gamma^(0)...gamma^(2m-1) with t = m(2m-1) + n (mod 4); gives
//           the 4D chiral grading -i g0 g1 g2 g3 and s3 in dimension 2.
//   C     = alpha3 * product of the conjugation-odd gammas (or their
//           complement, whichever set has odd parity count), alpha3 chosen so
//           the leading entry is +1; C comes out real in the ladder basis.
//
// Sign law for K against the real structure, K o J = eps J o K:
//   n odd:  eps = (-1)^(n(3n-1)/2),              epsPrime = -1
//   n even: eps = (-1)^(k(k+1)/2), k = 2m - n,   epsPrime = +1
// The n-even case differs from the naive monomial computation exactly when
// k = 2 mod 4 because the anti-linear J conjugates the mandatory i-power in
// K.  The law above is what the constructed operators actually satisfy; it is
// asserted, not assumed.
// ---------------------------------------------------------------------------

#include "spectriple/clifford.hpp"
#include "spectriple/core.hpp"

#include <utility>
#include <vector>

namespace spectriple {

struct EpsilonRow {
  int eps0 = 0, eps1 = 0, eps2 = 0;
  friend bool operator==(const EpsilonRow&, const EpsilonRow&) = default;
};

struct TwistedRow {
  int eps0 = 0, eps1 = 0, eps2 = 0, eps3 = 0;
  // Which classification column the tuple reproduces: "(2)", "(4)", or "" if
  // it is not one of the two tabulated twisted columns.
  const char* column = "";
  friend bool operator==(const TwistedRow& a, const TwistedRow& b) {
    return a.eps0 == b.eps0 && a.eps1 == b.eps1 && a.eps2 == b.eps2 && a.eps3 == b.eps3;
  }
};

struct ChargeConjugation {
  CMat C;        // J = C o cc
  CMat C_hat;    // Euclidean partner, Jhat = C_hat o cc
  AntiUnitary J;
  AntiUnitary J_hat;
};

struct StructuralSet {
  CMat K;
  CMat Gamma;
  CMat C;
  CMat C_hat;
  AntiUnitary J;
  AntiUnitary J_hat;
  int ko = 0;               // KO dimension 2(n - m) mod 8
  EpsilonRow table_row;     // table row for ko, cross-checked against measured signs
  int eps = 0;              // measured sign in K o J = eps J o K
  int eps_prime = 0;        // measured sign in K Gamma = epsPrime Gamma K
  int lambda = 0;           // measured sign in C = lambda K C_hat
};

// --- constructions ----------------------------------------------------------

CMat build_K(const CliffordBasis& basis);
CMat build_grading(const CliffordBasis& basis);
// NonRealizableBasis if some gamma is not entrywise real-or-imaginary
// (conj(gamma) = +-gamma), which the monomial construction for C requires.
ChargeConjugation build_charge_conjugation(const CliffordBasis& basis);
StructuralSet build_structural(const CliffordBasis& basis);

// Tensor every operator of a structural set with I_{factor_dim} (spinor side
// first): the extension of (K, Gamma, J, ...) from the spinor space to
// H (x) C^{factor_dim}, e.g. square-integrable sections modeled on a lattice.
// All sign data is unchanged by the extension.
StructuralSet extend_structural(const StructuralSet& ops, Eigen::Index factor_dim);

// --- twist and Krein helpers ------------------------------------------------

// rho(O) = K O K^dagger (involutive for Hermitian involutive K).
CMat twist_apply(const CMat& K, const CMat& O);

// For `samples` random matrices a: || rho(a^dag) - (rho^{-1}(a))^dag || <= tol.
bool check_regularity(const CMat& K, int samples, std::uint64_t seed = 12345,
                      double tol = kAlgebraicTol);

// Krein product <psi, phi>_K = <psi, K phi>.
cplx k_product(const CMat& K, const CVec& psi, const CVec& phi);
// O^{dag_K} = K O^dag K.
CMat k_adjoint(const CMat& K, const CMat& O);
// U K-unitary iff U K U^dag = K and U^dag K U = K.
bool is_k_unitary(const CMat& K, const CMat& U, double tol = kAlgebraicTol);
// psi^dag K as a covector; spinor_dual(K, psi) * phi = <psi, phi>_K.
CRowVec spinor_dual(const CMat& K, const CVec& psi);

// --- sign parameters and tables ---------------------------------------------

// Closed-form law for (eps, epsPrime) stated in the header comment.
std::pair<int, int> kj_sign_law(int m, int n);

// Measured (eps, epsPrime) from the constructed operators; throws
// InconsistentStructure if a sign is not clean or disagrees with the law.
std::pair<int, int> epsilon_parameters(const CliffordBasis& basis, const StructuralSet& ops);

int ko_dimension(int n, int m);
// Table row (eps0, eps1, eps2) for even KO dimension 2(n-m) mod 8.
EpsilonRow ko_dimension_row(int n, int m);

// Twisted sign tuple (eps0, eps1 * eps, eps2, -epsPrime) with the
// classification column it lands in.
TwistedRow twisted_table_row(EpsilonRow from_ko, int eps, int eps_prime);

// --- spin identities ---------------------------------------------------------

// factors: real tangent vectors with |g(v,v)| = 1 (else InvalidFactor).
// Builds x = c(v_1)...c(v_k) and verifies x^{-1} = (-1)^q rho(x^dag) with
// q = #{i : g(v_i, v_i) < 0}; when q and k are both even additionally
// verifies is_k_unitary(x).  Returns true iff everything holds.
bool spin_identity_check(const CliffordBasis& basis, const CMat& K,
                         const std::vector<RVec>& factors);

// --- minimal derivative model -------------------------------------------------
//
// H' = C^{2^m} (x) C^2 with D^K = sum_a c_a gamma^a (x) R, where R is the real
// rotation generator [[0,1],[-1,0]] times i (so R is Hermitian and conj(R) =
// -R, mimicking a derivative).  Gives a K-self-adjoint D^K with
// J' D^K = + D^K J' on every signature, the measurement hook for eps1.
struct MiniModel {
  CMat DK;     // K-self-adjoint Dirac on the extended space
  CMat D;      // K' DK (self-adjoint)
  CMat K;      // K (x) I2
  CMat Gamma;  // Gamma (x) I2
  CMat C;      // C (x) I2  (J' = C' o cc)
};
MiniModel build_mini_model(const CliffordBasis& basis, const StructuralSet& ops,
                           const std::vector<double>& coeffs);

// Measured (eps0, eps1, eps2) on the mini model: J^2, J vs D^K, J vs Gamma.
EpsilonRow measure_ko_row(const CliffordBasis& basis, const StructuralSet& ops);

}  // namespace spectriple

#endif  // SPECTRIPLE_STRUCTURAL_HPP
