#include "spectriple/sigsolver.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <set>

#include "spectriple/geometry.hpp"
#include "spectriple/structural.hpp"

namespace spectriple {

namespace {

constexpr double kDenseTol = 1e-8;  // post-SVD residual budget

const std::array<cplx, 4> kQuarterPhases = {cplx(1.0, 0.0), cplx(0.0, 1.0),
                                            cplx(-1.0, 0.0), cplx(0.0, -1.0)};

// Product of the frame matrices selected by the bitmask, increasing index
// order (bit a <-> gt^(a)).
CMat masked_product(const std::vector<CMat>& frame, unsigned mask, Eigen::Index dim) {
  CMat prod = CMat::Identity(dim, dim);
  for (size_t a = 0; a < frame.size(); ++a)
    if (mask & (1u << a)) prod = prod * frame[a];
  return prod;
}

std::vector<int> mask_to_subset(unsigned mask, int count) {
  std::vector<int> subset;
  for (int a = 0; a < count; ++a)
    if (mask & (1u << a)) subset.push_back(a);
  return subset;
}

// rho(g) = K g K with sign readout; returns +1/-1, or 0 if not proportional.
int rho_sign(const CMat& k, const CMat& g, double tol) {
  const CMat r = k * g * k;
  if ((r - g).norm() <= tol) return 1;
  if ((r + g).norm() <= tol) return -1;
  return 0;
}

}  // namespace

std::vector<KCandidate> enumerate_candidates(const CliffordBasis& basis,
                                             bool allow_general_m) {
  const int m = basis.sig.m;
  if (m != 2 && !allow_general_m)
    throw UnsupportedDimension(
        "enumerate_candidates: classification is stated at m = 2; pass "
        "allow_general_m to enumerate anyway");
  const int count = 2 * m;
  const Eigen::Index dim = basis.sig.spinor_dim();
  std::vector<KCandidate> out;
  out.reserve((size_t(1) << count) * kQuarterPhases.size());
  for (unsigned mask = 0; mask < (1u << count); ++mask) {
    const CMat prod = masked_product(basis.euclid_gammas, mask, dim);
    for (const cplx& phase : kQuarterPhases)
      out.push_back({mask_to_subset(mask, count), phase, phase * prod});
  }
  return out;
}

std::vector<KCandidate> filter_candidates(const CliffordBasis& basis,
                                          const std::vector<KCandidate>& candidates,
                                          const CMat& Gamma, const AntiUnitary& J,
                                          int eps) {
  if (eps != 1 && eps != -1)
    throw InvalidInput("filter_candidates: eps must be +1 or -1");
  const Eigen::Index dim = basis.sig.spinor_dim();
  require_square(Gamma, "filter_candidates");
  if (Gamma.rows() != dim || J.dim() != dim)
    throw DimensionError("filter_candidates: Gamma/J dimension mismatch with basis");
  const CMat eye = CMat::Identity(dim, dim);
  const CMat& c = J.linear_part();
  const double sign = static_cast<double>(eps);

  std::vector<KCandidate> kept;
  for (const KCandidate& cand : candidates) {
    const CMat& k = cand.matrix;
    if ((k - k.adjoint()).norm() > kAlgebraicTol) continue;
    if ((k * k - eye).norm() > kAlgebraicTol) continue;
    if ((k * Gamma + Gamma * k).norm() > kAlgebraicTol) continue;
    // K o J = eps J o K on matrices: K C conj(v) = eps C conj(K v) for all v.
    if ((k * c - sign * c * k.conjugate()).norm() > kAlgebraicTol) continue;
    bool diagonal = true;
    for (const CMat& g : basis.euclid_gammas)
      if (rho_sign(k, g, kAlgebraicTol) == 0) {
        diagonal = false;
        break;
      }
    if (diagonal) kept.push_back(cand);
  }
  return kept;
}

SignatureSolution classify_signature(const KCandidate& candidate,
                                     const CliffordBasis& basis) {
  const int count = 2 * basis.sig.m;
  SignatureSolution sol;
  sol.candidate = candidate;
  sol.s.reserve(static_cast<size_t>(count));
  sol.time_directions = 0;
  for (int a = 0; a < count; ++a) {
    const int s =
        rho_sign(candidate.matrix, basis.euclid_gammas[static_cast<size_t>(a)],
                 kAlgebraicTol);
    if (s == 0)
      throw InternalFilterBug(
          "classify_signature: rho(gt^a) is not +-gt^a; candidate escaped the "
          "filter");
    sol.s.push_back(s);
    if (s == 1) ++sol.time_directions;
  }
  // Independent readout: the induced Krein metric must equal diag(s).
  const RMat gk = induced_metric_gK(basis.euclid_gammas, candidate.matrix);
  RMat expected = RMat::Zero(count, count);
  for (int a = 0; a < count; ++a)
    expected(a, a) = static_cast<double>(sol.s[static_cast<size_t>(a)]);
  if ((gk - expected).norm() > kAlgebraicTol * count)
    throw InternalFilterBug(
        "classify_signature: induced metric g_K does not match diag(s)");
  return sol;
}

SignatureReport solve_signatures(const CliffordBasis& basis, int eps) {
  if (eps != 1 && eps != -1)
    throw InvalidInput("solve_signatures: eps must be +1 or -1");
  if (basis.sig.n != 2 * basis.sig.m)
    throw InvalidInput(
        "solve_signatures: classification is run on the Euclidean frame; pass "
        "a basis with n = 2m");
  const std::vector<KCandidate> all = enumerate_candidates(basis);
  const CMat gamma = build_grading(basis);
  const ChargeConjugation cc = build_charge_conjugation(basis);
  const std::vector<KCandidate> kept =
      filter_candidates(basis, all, gamma, cc.J, eps);

  SignatureReport report;
  report.eps = eps;
  report.solutions.reserve(kept.size());
  for (const KCandidate& cand : kept)
    report.solutions.push_back(classify_signature(cand, basis));

  // Family shape of the classification: 8 survivors, all subsets of odd size
  // 1 (eps = -1) or 3 (eps = +1).
  const size_t want_size = (eps == -1) ? 1 : 3;
  if (report.solutions.size() != 8)
    throw InternalFilterBug("solve_signatures: expected exactly 8 solutions");
  for (const SignatureSolution& sol : report.solutions)
    if (sol.candidate.subset.size() != want_size)
      throw InternalFilterBug(
          "solve_signatures: survivor outside the classified monomial family");
  return report;
}

bool uniqueness_of_time(const SignatureReport& report) {
  if (report.solutions.empty()) return false;
  const int want = (report.eps == -1) ? 1 : 3;
  for (const SignatureSolution& sol : report.solutions)
    if (sol.time_directions != want) return false;
  return true;
}

std::vector<DenseSolution> dense_nullspace_solutions(const CliffordBasis& basis,
                                                     const CMat& Gamma,
                                                     const AntiUnitary& J, int eps) {
  if (basis.sig.m != 2)
    throw UnsupportedDimension("dense_nullspace_solutions: oracle is stated at m = 2");
  if (eps != 1 && eps != -1)
    throw InvalidInput("dense_nullspace_solutions: eps must be +1 or -1");
  const Eigen::Index dim = basis.sig.spinor_dim();  // 4
  const Eigen::Index nn = dim * dim;                // 16 unknowns
  const CMat eye = CMat::Identity(dim, dim);
  const CMat& c = J.linear_part();
  const double sign = static_cast<double>(eps);
  const std::vector<CMat>& frame = basis.euclid_gammas;

  std::vector<DenseSolution> solutions;
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<int> s(4);
    for (int a = 0; a < 4; ++a) s[static_cast<size_t>(a)] = (mask >> (3 - a)) & 1u ? -1 : 1;

    // Row-major vec(A X B) = (A (x) B^T) vec(X).  Stack the grading
    // anticommutator with the four frame intertwiners.
    CMat lin(5 * nn, nn);
    lin.topRows(nn) = kron(Gamma, eye) + kron(eye, Gamma.transpose());
    for (int a = 0; a < 4; ++a) {
      const CMat& g = frame[static_cast<size_t>(a)];
      lin.middleRows(nn * (a + 1), nn) =
          kron(g, eye) -
          static_cast<double>(s[static_cast<size_t>(a)]) * kron(eye, g.transpose());
    }

    Eigen::JacobiSVD<CMat> svd(lin, Eigen::ComputeThinU | Eigen::ComputeFullV);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-9) ++rank;

    for (Eigen::Index col = rank; col < nn; ++col) {
      const CVec v = svd.matrixV().col(col);
      CMat kc(dim, dim);
      for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index cidx = 0; cidx < dim; ++cidx) kc(r, cidx) = v(dim * r + cidx);

      const CMat ikc = cplx(0.0, 1.0) * kc;
      for (const CMat& herm : {CMat(kc + kc.adjoint()), CMat(ikc + ikc.adjoint())}) {
        if (herm.norm() < 1e-9) continue;
        // Scale so K^2 = 1 (the square must already be a positive multiple
        // of the identity).
        const CMat sq = herm * herm;
        const double scale = sq.trace().real() / static_cast<double>(dim);
        if (scale <= 1e-9 || (sq - scale * eye).norm() > kDenseTol) continue;
        const CMat k = herm / std::sqrt(scale);
        if ((k * c - sign * c * k.conjugate()).norm() > kDenseTol) continue;
        if ((k * Gamma + Gamma * k).norm() > kDenseTol) continue;
        bool duplicate = false;
        for (const DenseSolution& prev : solutions)
          if (prev.s == s && (prev.K - k).norm() <= kDenseTol) {
            duplicate = true;
            break;
          }
        if (!duplicate) solutions.push_back({s, k});
      }
    }
  }
  return solutions;
}

double dense_agreement_residual(const std::vector<DenseSolution>& dense,
                                const std::vector<SignatureSolution>& monomial) {
  std::set<std::vector<int>> dense_patterns, monomial_patterns;
  for (const DenseSolution& d : dense) dense_patterns.insert(d.s);
  for (const SignatureSolution& m : monomial) monomial_patterns.insert(m.s);
  if (dense_patterns != monomial_patterns)
    throw InconsistentStructure(
        "dense_agreement_residual: the two engines found different sign-pattern "
        "sets");
  double worst = 0.0;
  for (const DenseSolution& d : dense) {
    double best = std::numeric_limits<double>::infinity();
    for (const SignatureSolution& m : monomial)
      if (m.s == d.s) best = std::min(best, (d.K - m.candidate.matrix).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace spectriple
