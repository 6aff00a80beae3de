#ifndef SPECTRIPLE_CLIFFORD_HPP
#define SPECTRIPLE_CLIFFORD_HPP

// ---------------------------------------------------------------------------
// clifford: gamma-matrix bases for even dimension 2m and signature (n, 2m-n).
//
// Convention: the metric is diag(+1 x n, -1 x (2m-n)) — the first n directions
// square to +1. Indices are 0-based throughout (gamma^(0) ... gamma^(2m-1)).
// The Euclidean partner basis ê_a (all squares +1) is related by a Wick
// rotation: gamma^(a) = ê_a for a < n and gamma^(a) = -i ê_a for a >= n, so
// each gamma is unitary with (gamma^(a))^dagger = g_a gamma^(a).
// ---------------------------------------------------------------------------

#include "spectriple/core.hpp"

#include <vector>

namespace spectriple {

struct Signature {
  int m = 0;  // half-dimension; space dim = 2m, spinor dim = 2^m
  int n = 0;  // number of +1 metric directions (listed first)

  int space_dim() const { return 2 * m; }
  int spinor_dim() const { return 1 << m; }
  // Metric sign g_a of direction a (0-based): +1 for a < n, -1 otherwise.
  double metric_sign(int a) const { return a < n ? 1.0 : -1.0; }
  void validate() const;
};

struct CliffordBasis {
  Signature sig;
  std::vector<CMat> gammas;         // gamma^(a), signature (n, 2m-n)
  std::vector<CMat> euclid_gammas;  // ê_a, Hermitian unitary, ê_a ê_b + ê_b ê_a = 2 delta_ab
  int index_origin = 0;

  double metric_sign(int a) const { return sig.metric_sign(a); }
};

// 2m Hermitian unitary anticommuting matrices via the Pauli ladder:
//   slot k (1-based) contributes  s3^(k-1) x s1 x I^(m-k)  and
//                                 s3^(k-1) x s2 x I^(m-k).
// Supported range 1 <= m <= 4 (desk scale); outside -> UnsupportedDimension.
std::vector<CMat> build_euclidean_gammas(int m);

// Wick-rotate a Euclidean basis into signature (n, 2m-n). Validates the input
// Clifford relation (InvalidBasis on failure) and the signature range.
CliffordBasis wick_rotate(const std::vector<CMat>& euclid, Signature sig);

// Convenience: ladder basis for the given signature.
CliffordBasis build_basis(Signature sig);

// The 4D Lorentzian basis (m = 2, n = 1): gamma^0 Hermitian squaring to +1,
// gamma^1..3 anti-Hermitian squaring to -1.
CliffordBasis chiral_gammas_4d();

// max_{a,b} || gamma^a gamma^b + gamma^b gamma^a - 2 g^{ab} I ||_F
double verify_clifford(const CliffordBasis& basis);

// gamma^mu = e^mu_a gamma^a for a real frame matrix e; SingularVielbein if e
// is not invertible.
std::vector<CMat> vielbein_apply(const RMat& e, const CliffordBasis& basis);

// Dimension of the commutant {X : X gamma^a = gamma^a X for all a} computed
// as an exact nullspace dimension by SVD (irreducibility check: expect 1).
int commutant_dimension(const std::vector<CMat>& gammas);

}  // namespace spectriple

#endif  // SPECTRIPLE_CLIFFORD_HPP
