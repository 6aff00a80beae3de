#ifndef SPECTRIPLE_TEST_SUPPORT_HPP
#define SPECTRIPLE_TEST_SUPPORT_HPP

// ---------------------------------------------------------------------------
// Shared helpers for the test executables: Pauli matrices, a tiny dense
// matrix exponential (Taylor series with scaling and squaring; ample for the
// well-conditioned generators used here), and K-unitary "boosts"
//     U_K = exp(i (X + K X^dag K) / 2),
// K-unitary for any X because the exponent H satisfies K H^dag K = H, so
// K U_K^dag K = exp(-i K H^dag K) = U_K^{-1}.
// ---------------------------------------------------------------------------

#include <cmath>
#include <random>

#include "spectriple/core.hpp"

namespace testsupport {

using spectriple::CMat;
using spectriple::cplx;
using spectriple::CVec;

inline CMat pauli(int k) {
  CMat s(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

// Dense matrix exponential: 12-term Taylor series after scaling by 2^6.
inline CMat expm(const CMat& a) {
  constexpr int squarings = 6;
  const CMat b = a / static_cast<double>(1 << squarings);
  CMat term = CMat::Identity(a.rows(), a.cols());
  CMat sum = term;
  for (int k = 1; k <= 12; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// K-unitary element generated by an arbitrary complex matrix X.
inline CMat boost_k_unitary(const CMat& K, const CMat& X) {
  const CMat H = (X + K * X.adjoint() * K) / 2.0;
  return expm(cplx(0.0, 1.0) * H);
}

// Seeded Gaussian complex vector (tests only; the library has its own RNG
// plumbing for matrices).
inline CVec random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(dist(rng), dist(rng));
  return v;
}

}  // namespace testsupport

#endif  // SPECTRIPLE_TEST_SUPPORT_HPP
