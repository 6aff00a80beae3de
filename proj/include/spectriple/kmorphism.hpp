#ifndef SPECTRIPLE_KMORPHISM_HPP
#define SPECTRIPLE_KMORPHISM_HPP

// ---------------------------------------------------------------------------
// kmorphism: the bijective involutive map Phi^K between the twisted side
// (A, H, D, J, Gamma; rho = K . K, standard inner product, D = D^dag) and the
// pseudo-Riemannian side (A, H, D^K = K D, J, Gamma; Krein inner product,
// D^K K-self-adjoint).  The two derivations are bridged by
//
//     [D, a]_rho = K [D^K, a],
//
// and the first-order conditions and inner fluctuations on the two sides are
// images of each other under the same conjugation.  A small periodic-lattice
// Dirac model supplies a genuine commutative function algebra for the tests:
// plain site functions are twist-trivial, while the split algebra
// pi(f1, f2) = p_+ (x) f1 + p_- (x) f2, with p_+- the grading projections,
// is swapped by the twist and realizes the nontrivial first-order checks.
// ---------------------------------------------------------------------------

#include "spectriple/clifford.hpp"
#include "spectriple/core.hpp"
#include "spectriple/structural.hpp"

#include <vector>

namespace spectriple {

// --- the two sides of the K-morphism -----------------------------------------

enum class TripleKind { Twisted, Pseudo };
enum class InnerKind { Standard, Krein };

struct TripleSide {
  TripleKind kind = TripleKind::Twisted;
  CMat D;
  const StructuralSet* structure = nullptr;  // non-owning
  InnerKind inner = InnerKind::Standard;
};

// Validating constructors: the twisted side requires D = D^dag, the pseudo
// side requires D^K = k_adjoint(K, D^K); InconsistentStructure otherwise.
TripleSide make_twisted_side(CMat D, const StructuralSet& ops);
TripleSide make_pseudo_side(CMat DK, const StructuralSet& ops);

// Phi^K: swaps the kind, maps D <-> K D, swaps the inner-product flag and
// leaves everything else untouched.  Involutive because K^2 = I.
TripleSide phi_K(const TripleSide& side);

// --- twisted derivations ------------------------------------------------------

// [D, a]_rho = D a - rho(a) D with rho(a) = K a K^dag.
CMat twisted_commutator(const CMat& D, const CMat& a, const CMat& K);

// Residual of the first-order condition with b° = J b^dag J^{-1}:
//   twisted:   || [ [D, a]_rho, b° ]_rho° ||_F   (rho° = same conjugation)
//   untwisted: || [ [D^K, a], b° ] ||_F          with D^K = K D
// Also asserts the exact bridge
//   [ [D,a]_rho, b° ]_rho° = K [ [D^K,a], b° ]
// (InconsistentStructure if it fails, which would indicate broken inputs).
double check_first_order(const CMat& D, const CMat& a, const CMat& b,
                         const AntiUnitary& J, const CMat& K, bool twisted);

// --- inner fluctuations --------------------------------------------------------

// Type 1 (twist-respecting): U = u J u J^{-1} for a plain unitary u;
// returns U D U^{dag_K}.  InvalidGaugeElement if u is not unitary.
CMat fluctuate_type1(const CMat& D, const CMat& u, const AntiUnitary& J, const CMat& K);

// Type 2 (Krein-respecting): U_K = u_K J u_K J^{-1} for a K-unitary u_K;
// returns U_K D U_K^dag.  InvalidGaugeElement if u_K is not K-unitary.
CMat fluctuate_type2(const CMat& D, const CMat& u_K, const AntiUnitary& J, const CMat& K);

// The twisted one-form realizing the type-1 gauge orbit:
//   A = rho(u^dag) [D, u]_rho.
CMat type1_one_form(const CMat& D, const CMat& u, const CMat& K);

// D + A + eps1 J A J^{-1}: the fluctuated-family element a one-form A induces
// (eps1 is the sign in J D = eps1 D J).
CMat fluctuated_family(const CMat& D, const CMat& A, const AntiUnitary& J, int eps1);

// Exact pseudo-side bridge for type-2 fluctuations:
//   U_K (K D) U_K^{dag_K} = K (V_K D V_K^dag),  V_K = rho(U_K),
// returned as the Frobenius residual of lhs - rhs (machine-zero algebra).
double type2_pseudo_bridge_residual(const CMat& D, const CMat& u_K, const AntiUnitary& J,
                                    const CMat& K);

// --- periodic-lattice Dirac model ----------------------------------------------

struct LatticeModel {
  Signature sig;               // spinor-side signature
  int sites = 0;               // N sites per used direction
  std::vector<int> dims_used;  // Euclidean direction indices carried by the lattice
  double spacing = 0.0;        // h
  CMat D_lat;                  // sum_d ê_{dims_used[d]} (x) P_d, Hermitian

  Eigen::Index lattice_dim() const;  // N^{#dims_used}
  Eigen::Index total_dim() const;    // 2^m * N^{#dims_used}

  // Plain site function: I_{2^m} (x) diag(values); twist-trivial.
  CMat multiplication(const CVec& values) const;

  // Split function pi(f1, f2) = p_+ (x) diag(f1) + p_- (x) diag(f2) with
  // p_+- = (I +- Gamma)/2; the twist swaps the two components and
  // J pi(f1,f2) J^{-1} = pi(conj f2, conj f1).
  CMat split_multiplication(const CMat& Gamma, const CVec& f1, const CVec& f2) const;
};

// Periodic shift S_step on N sites: (S psi)(x) = psi(x + step mod N).
CMat lattice_shift(int N, int step);

// Symmetric difference P = -i (S_+ - S_-) / (2h): Hermitian, eigenvalues
// sin(2 pi p / N) / h on plane waves.
CMat lattice_difference(int N, double h);

// D_lat = sum_d ê_{dims_used[d]} (x) P_d on the periodic lattice, tensor
// order spinor (x) lattice, row-major site order for two directions.
// spacing <= 0 selects the default h = 1/N.  N must be even and >= 4
// (UnsupportedLattice), dims_used must hold 1 or 2 distinct direction
// indices in range (UnsupportedLattice / InvalidInput).
LatticeModel build_lattice_dirac(const CliffordBasis& basis, int N,
                                 const std::vector<int>& dims_used, double spacing = 0.0);

// Site values of the plane wave exp(2 pi i k x_axis / N) on N^dims sites
// (row-major enumeration).
CVec lattice_plane_wave(int N, int dims, int axis, int k);

// Exact 2-norm of [P, e_k] for the plane wave e_k on N sites:
//   max_p | sin(2 pi (p+k)/N) - sin(2 pi p/N) | / h.
double lattice_comm_norm_oracle(int N, double h, int k);

}  // namespace spectriple

#endif  // SPECTRIPLE_KMORPHISM_HPP
