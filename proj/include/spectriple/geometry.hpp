#ifndef SPECTRIPLE_GEOMETRY_HPP
#define SPECTRIPLE_GEOMETRY_HPP

// ---------------------------------------------------------------------------
// geometry: the metric-level face of the signature change.
//
// A spacelike reflection r (constant diagonal, r^2 = I) turns a metric g of
// signature (n, 2m-n) into the Riemannian partner gR = g r.  This module
// realizes, with second-order central finite differences:
//   * the trace metric formula g^{mu nu} = 2^{-m} Tr(gamma^mu gamma^nu) and
//     its twisted counterparts (plain representation c(u) against rho(c(v)),
//     tilde-basis relation, s-matrix form, induced metric g_K);
//   * Christoffel symbols of g, of gR, and in the reflected basis
//     Gamma^{r lambda}_{mu r nu} (index raising through r, derivative
//     reflected through r);
//   * the relation  Gamma^{r l}_{mu r nu} = Gamma^l_{R mu nu}
//       + 1/2 gR^{l k} ( d_{r nu} g_{mu k} - d_nu gR_{mu k} );
//   * the mixed-symbol decomposition GammaTilde^b_{mu a} =
//       Gamma^b_{R mu a} + K^b_{mu a} for diagonal metrics, with the K-term
//     computed independently and reported (no structure is asserted for it).
//
// For metrics whose reflected blocks are reshuffled by r without mixing, the
// three relations above are identities of the finite-difference symbols
// themselves — every difference operator is linear — so their residuals sit
// at roundoff for any h rather than at O(h^2).  Genuine second-order
// convergence is exposed separately by comparing finite-difference symbols
// with the closed form on the conformally flat family e^{2 c.x} eta.
// ---------------------------------------------------------------------------

#include "spectriple/clifford.hpp"
#include "spectriple/core.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace spectriple {

// Three-index real tensor T[l](m, n), index order matching Gamma^l_{mn}.
using Tensor3 = std::vector<RMat>;

double tensor3_max_abs(const Tensor3& t);
double tensor3_max_diff(const Tensor3& a, const Tensor3& b);

// --- metric fields ------------------------------------------------------------

struct MetricField {
  int dim = 0;
  std::function<RMat(const RVec&)> eval;  // x -> g_{mu nu}(x), symmetric
  RVec reflection;                        // diagonal of r, entries +-1, constant
  std::string name;
};

enum class ChristoffelVariant { Plain, Reflected, Riemannian };

struct ChristoffelData {
  RVec point;
  Tensor3 symbols;  // symbols[lambda](mu, nu)
  ChristoffelVariant variant = ChristoffelVariant::Plain;
};

// Named desk families (all carry their spacelike reflection):
MetricField make_flat_lorentzian();                            // eta, r = diag(1,-1,-1,-1)
MetricField make_warped_diagonal(double c1, double c2);        // diag(1, -(1+c1 x0)^2, -(1+c2 x1)^2, -1)
MetricField make_conformal_flat(const RVec& c);                // e^{2 c.x} eta
MetricField make_2d_oracle();                                  // diag(1, -(1+0.1 x0)^2)
// family in {"flat", "warped-diag", "conformal-flat", "2d-oracle"}; params may
// be empty (documented defaults) or the family's full parameter list.
MetricField metric_field_from_family(const std::string& family,
                                     const std::vector<double>& params);

// g evaluated with validation (symmetry, finiteness); InvalidInput on failure.
RMat eval_metric(const MetricField& g, const RVec& x);

// d[nu](mu, kappa) = central difference of g_{mu kappa} along x^nu.
Tensor3 metric_derivatives(const MetricField& g, const RVec& x, double h);

// --- Christoffel symbols --------------------------------------------------------

// Gamma^l_{mu nu} = 1/2 g^{lk} (d_mu g_{nu k} + d_nu g_{mu k} - d_k g_{mu nu});
// SingularMetric if g(x) is not invertible.
ChristoffelData christoffel(const MetricField& g, const RVec& x, double h = 1e-3);

// Christoffel symbols of the Riemannian partner gR = g r.
ChristoffelData riemannian_christoffel(const MetricField& g, const RVec& x, double h = 1e-3);

// Reflected-basis symbols Gamma^{r l}_{mu r nu}: raising through g^{r l k} =
// r_l g^{lk}, metric slots g_{r nu k} = r_nu g_{nu k}, derivative
// d_{r nu} = r_nu d_nu.  For constant diagonal r this collapses to
// r_l r_nu Gamma^l_{mu nu} exactly at the symbol level.
ChristoffelData reflected_christoffel(const MetricField& g, const RVec& x, double h = 1e-3);

// Max-abs residual of the metric-compatibility identity
//   d_nu g_{mu k} = g_{lk} Gamma^l_{mu nu} + g_{mu l} Gamma^l_{k nu}
// on the finite-difference symbols (an exact identity of the symbols).
double metric_compat_residual(const MetricField& g, const RVec& x, double h = 1e-3);

// Max-abs residual of
//  Gamma^{r l}_{mu r nu} - Gamma^l_{R mu nu}
//      - 1/2 gR^{lk} ( d_{r nu} g_{mu k} - d_nu gR_{mu k} ).
// UnsupportedMetric if gR = g r is not positive definite at x.
double verify_christoffel_relation(const MetricField& g, const RVec& x, double h = 1e-3);

// --- spin-connection decomposition ----------------------------------------------

struct SpinConnectionDecomposition {
  Tensor3 gamma_tilde;  // [b](mu, a) = g_a g_b Gamma^b_{mu a} of g
  Tensor3 gamma_R;      // [b](mu, a) mixed symbols of gR
  Tensor3 k_term;       // [b](mu, a) = g_b 1/2 g^{bk}(d_{ra} g_{mu k} - d_a gR_{mu k})
  double residual = 0.0;    // max | gamma_tilde - gamma_R - k_term |
  double k_term_max = 0.0;  // reported, no structure asserted
};

// Diagonal metrics only (diagonal vielbeins e^a_mu = sqrt|g_mumu| delta^a_mu);
// UnsupportedMetric otherwise or when r does not match the metric signs at x;
// InconsistentStructure when the basis signature disagrees with the metric's
// sign pattern.  h as in christoffel.
SpinConnectionDecomposition spin_connection_decomposition(const MetricField& g,
                                                          const CliffordBasis& basis,
                                                          const RVec& x, double h = 1e-3);

// Closed-form symbols of g = e^{2 c.x} eta:
//   Gamma^l_{mu nu} = c_nu delta^l_mu + c_mu delta^l_nu - eta_{mu nu} eta^{ll} c_l,
// the analytic side of the finite-difference convergence oracle.
ChristoffelData conformal_exact_christoffel(const RVec& c, const RVec& x);

// --- trace metrics and twisted Clifford relations --------------------------------

// g^{mu nu} = Tr(gamma^mu gamma^nu) / d with d the spinor dimension.
RMat metric_from_trace(const std::vector<CMat>& gammas);

// res1: max over frame pairs of || c(e_a) rho(c(e_b)) + rho(c(e_b)) c(e_a)
//        - 2 gR^{ab} I || with the plain representation c(u) = u_a gamma^a;
// res2: same with the tilde basis, gammaT^a gammaT^b + rho(gammaT^b gammaT^a).
std::pair<double, double> twisted_clifford_check(const CliffordBasis& basis, const CMat& K);

// Max residual of gammaT^a gammaT^b + s_ab gammaT^b gammaT^a = 2 gR^{ab} I
// with s_ab = g_a g_b.
double twisted_clifford_smatrix_residual(const CliffordBasis& basis, const CMat& K);

// g_K^{mu nu} = Tr(K gammaT^mu K gammaT^nu)/d for self-adjoint gammaT.
// Asserts g_K^{ab} = s(a) gR^{ab} where rho(gammaT^a) = s(a) gammaT^a
// (InconsistentStructure when no clean sign exists).
RMat induced_metric_gK(const std::vector<CMat>& gammas_tilde, const CMat& K);

}  // namespace spectriple

#endif  // SPECTRIPLE_GEOMETRY_HPP
