#ifndef SPECTRIPLE_SIGSOLVER_HPP
#define SPECTRIPLE_SIGSOLVER_HPP

// Brute-force classification of fundamental symmetries in four dimensions.
//
// Setting: the Euclidean Clifford algebra on C^4, generated by four Hermitian
// anticommuting unitaries gt^0..gt^3 (the "gamma-tilde" frame), with grading
// Gamma and real structure J built from that same frame.  A fundamental
// symmetry is a Hermitian involution K (K = K^dag, K^2 = 1) that anticommutes
// with the grading, intertwines J up to a prescribed sign eps
// (K o J = eps J o K), and acts diagonally on the frame under the induced
// automorphism rho(x) = K x K:
//
//     rho(gt^a) = s(a) gt^a,        s(a) in {+1, -1}.
//
// The signs s(a) are exactly the diagonal of the induced Krein metric
// g_K^{ab} = s(a) delta^{ab} (cross-checked through induced_metric_gK), so
// each solution K selects a metric signature on the frame.  The machine-
// checked classification: for eps = -1 every solution is +-gt^(a) -- exactly
// one time direction, signature (+,-,-,-) up to axis naming -- while for
// eps = +1 every solution is +-i gt^(a) gt^(b) gt^(c), with three time
// directions.  Time is one-dimensional precisely in the eps = -1 branch.
//
// Two independent engines are provided and must agree solution-for-solution:
//   * monomial enumeration: all 2^4 subsets x 4 quarter phases = 64
//     candidates K = phase * prod gt^(i), filtered by the constraints;
//   * a dense-nullspace oracle: for each of the 2^4 sign patterns s the
//     linear constraints K Gamma + Gamma K = 0 and K gt^a = s(a) gt^a K are
//     solved over all of M_4(C) by SVD, and the nonlinear constraints
//     (Hermiticity, K^2 = 1, the J sign) are imposed on the nullspace.

#include <vector>

#include "spectriple/clifford.hpp"
#include "spectriple/core.hpp"

namespace spectriple {

// One monomial ansatz K = phase * prod_{i in subset} gt^(i), factors in
// increasing index order, phase in {1, i, -1, -i}.
struct KCandidate {
  std::vector<int> subset;
  cplx phase{1.0, 0.0};
  CMat matrix;
};

// One admissible fundamental symmetry together with the signature it induces.
struct SignatureSolution {
  KCandidate candidate;
  std::vector<int> s;   // rho(gt^a) = s(a) gt^a
  int time_directions;  // #{a : s(a) = +1}
};

struct SignatureReport {
  int eps = 0;
  std::vector<SignatureSolution> solutions;
};

// One solution produced by the dense-nullspace oracle.
struct DenseSolution {
  std::vector<int> s;
  CMat K;
};

// All subsets of the Hermitian frame basis.euclid_gammas crossed with the
// quarter phases {1, i, -1, -i}, in deterministic (bitmask, phase) order.
// The classification statement lives at m = 2 (64 candidates); other m are
// enumerated only when allow_general_m is set, otherwise
// m != 2 -> UnsupportedDimension.
std::vector<KCandidate> enumerate_candidates(const CliffordBasis& basis,
                                             bool allow_general_m = false);

// Keeps the candidates satisfying, each at kAlgebraicTol:
//   K = K^dag,   K^2 = 1,   K Gamma = -Gamma K,
//   K o J = eps J o K   (as matrices: K C = eps C conj(K), C = linear part),
//   rho(gt^a) = +-gt^a for every frame direction a.
std::vector<KCandidate> filter_candidates(const CliffordBasis& basis,
                                          const std::vector<KCandidate>& candidates,
                                          const CMat& Gamma, const AntiUnitary& J,
                                          int eps);

// Reads off s(a) from rho(gt^a) = s(a) gt^a and cross-checks that the induced
// metric equals diag(s) through induced_metric_gK.  A candidate whose rho
// action is not +-diagonal on the frame escaped the filter ->
// InternalFilterBug (as does an induced-metric mismatch).
SignatureSolution classify_signature(const KCandidate& candidate,
                                     const CliffordBasis& basis);

// Full monomial pipeline at the given eps on a Euclidean basis (n = 2m,
// m = 2): builds Gamma and J from the frame, enumerates, filters, classifies,
// and validates the family shape of the classification (8 survivors, subset
// size 1 for eps = -1 and 3 for eps = +1, no even subset sizes) ->
// InternalFilterBug on violation.  eps outside {-1, +1} or a non-Euclidean
// basis -> InvalidInput.
SignatureReport solve_signatures(const CliffordBasis& basis, int eps);

// eps = -1: every solution has exactly one time direction; eps = +1: exactly
// three.  Returns the conjunction over all solutions of the report.
bool uniqueness_of_time(const SignatureReport& report);

// Independent engine: per sign pattern, SVD nullspace of the linear
// constraints over all of M_4(C), then Hermitization, normalization to
// K^2 = 1, and the J-sign filter.  Solutions are deduplicated.  m != 2 ->
// UnsupportedDimension.
std::vector<DenseSolution> dense_nullspace_solutions(const CliffordBasis& basis,
                                                     const CMat& Gamma,
                                                     const AntiUnitary& J, int eps);

// Largest matrix distance between each dense solution and its best-matching
// monomial solution with the same sign pattern.  The two engines must find
// identical pattern sets -> InconsistentStructure otherwise.
double dense_agreement_residual(const std::vector<DenseSolution>& dense,
                                const std::vector<SignatureSolution>& monomial);

}  // namespace spectriple

#endif  // SPECTRIPLE_SIGSOLVER_HPP
