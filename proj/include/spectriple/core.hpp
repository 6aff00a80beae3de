#ifndef SPECTRIPLE_CORE_HPP
#define SPECTRIPLE_CORE_HPP

// ---------------------------------------------------------------------------
// core: dense complex-matrix kernel shared by every module.
//
// All operators in this library (gamma matrices, fundamental symmetries K,
// gradings Gamma, charge conjugations C, Dirac operators, gauge elements) are
// small dense complex matrices; the largest objects are lattice Dirac
// operators of dimension 2^m * N. Everything is double precision, and every
// "equality" between operators is the relative Frobenius criterion
//     ||X - Y||_F <= tol * max(1, ||X||_F),   default tol = 1e-10.
// ---------------------------------------------------------------------------

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <random>
#include <stdexcept>
#include <string>

namespace spectriple {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using CRowVec = Eigen::RowVectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kAlgebraicTol = 1e-10;  // exact algebraic identities
inline constexpr double kUnitaryTol = 1e-12;    // unitarity of constructed ops
inline constexpr double kFdTol = 1e-5;          // finite-difference relations
inline constexpr double kFdRoundoffFloor = 1e-11;

// --- error taxonomy ---------------------------------------------------------

struct SpectripleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define SPECTRIPLE_DEFINE_ERROR(NAME)         \
  struct NAME : SpectripleError {             \
    using SpectripleError::SpectripleError;   \
  }

SPECTRIPLE_DEFINE_ERROR(DimensionError);
SPECTRIPLE_DEFINE_ERROR(UnsupportedDimension);
SPECTRIPLE_DEFINE_ERROR(InvalidBasis);
SPECTRIPLE_DEFINE_ERROR(SingularVielbein);
SPECTRIPLE_DEFINE_ERROR(NonRealizableBasis);
SPECTRIPLE_DEFINE_ERROR(InconsistentStructure);
SPECTRIPLE_DEFINE_ERROR(InvalidFactor);
SPECTRIPLE_DEFINE_ERROR(InvalidGaugeElement);
SPECTRIPLE_DEFINE_ERROR(UnsupportedLattice);
SPECTRIPLE_DEFINE_ERROR(SingularMetric);
SPECTRIPLE_DEFINE_ERROR(UnsupportedMetric);
SPECTRIPLE_DEFINE_ERROR(ConstructionError);
SPECTRIPLE_DEFINE_ERROR(InvalidInput);
SPECTRIPLE_DEFINE_ERROR(InternalFilterBug);

#undef SPECTRIPLE_DEFINE_ERROR

// --- validation helpers -----------------------------------------------------

inline void require_square(const CMat& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw DimensionError(std::string(who) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  if (!a.allFinite())
    throw DimensionError(std::string(who) + ": matrix has non-finite entries");
}

inline void require_same_dim(const CMat& a, const CMat& b, const char* who) {
  require_square(a, who);
  require_square(b, who);
  if (a.rows() != b.rows())
    throw DimensionError(std::string(who) + ": dimension mismatch " +
                         std::to_string(a.rows()) + " vs " + std::to_string(b.rows()));
}

// --- elementary operations --------------------------------------------------

inline CMat mat_mul(const CMat& a, const CMat& b) {
  require_same_dim(a, b, "mat_mul");
  return a * b;
}

inline CMat adjoint(const CMat& a) { return a.adjoint(); }

inline CMat conj(const CMat& a) { return a.conjugate(); }

inline CMat kron(const CMat& a, const CMat& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

inline CMat commutator(const CMat& a, const CMat& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

inline CMat anticommutator(const CMat& a, const CMat& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

inline double frobenius_norm(const CMat& a) { return a.norm(); }

// Largest singular value by power iteration on A^dagger A; relative accuracy
// ~1e-6 is ample for norm *estimates* used in reports (never in pass/fail
// algebraic checks, which use Frobenius norms).
double op_2norm_estimate(const CMat& a, double rel_tol = 1e-6, int max_iter = 2000);

inline bool approx_equal(const CMat& x, const CMat& y, double tol = kAlgebraicTol) {
  require_same_dim(x, y, "approx_equal");
  return (x - y).norm() <= tol * std::max(1.0, x.norm());
}

// Relative residual in the same normalization approx_equal uses.
inline double rel_residual(const CMat& x, const CMat& y) {
  require_same_dim(x, y, "rel_residual");
  return (x - y).norm() / std::max(1.0, x.norm());
}

inline CMat identity(Eigen::Index n) { return CMat::Identity(n, n); }

// --- anti-unitary operators -------------------------------------------------

// J = U o cc with U unitary. Applying J to a vector conjugates first, then
// applies the linear part; conjugating an operator gives J X J^{-1}.
class AntiUnitary {
 public:
  explicit AntiUnitary(CMat linear_part) : u_(std::move(linear_part)) {
    require_square(u_, "AntiUnitary");
    const Eigen::Index n = u_.rows();
    if ((u_.adjoint() * u_ - CMat::Identity(n, n)).norm() > kUnitaryTol * n)
      throw InvalidInput("AntiUnitary: linear part is not unitary within 1e-12");
  }

  const CMat& linear_part() const { return u_; }
  Eigen::Index dim() const { return u_.rows(); }

  CVec apply(const CVec& v) const {
    if (v.size() != u_.rows()) throw DimensionError("AntiUnitary::apply: dim mismatch");
    return u_ * v.conjugate();
  }

  // J X J^{-1} = U conj(X) U^dagger (U unitary so J^{-1} = cc o U^dagger).
  CMat conjugate_op(const CMat& x) const {
    require_square(x, "AntiUnitary::conjugate_op");
    if (x.rows() != u_.rows()) throw DimensionError("AntiUnitary::conjugate_op: dim mismatch");
    return u_ * x.conjugate() * u_.adjoint();
  }

  // J^2 = U conj(U) = s * I with s = +-1; returns s.
  int square_sign() const;

 private:
  CMat u_;
};

inline CVec apply_antiunitary(const AntiUnitary& j, const CVec& v) { return j.apply(v); }

// Sign of J X = s X' J relations: returns +1 if J X J^{-1} == X', -1 if == -X',
// throws InconsistentStructure otherwise.
int commutation_sign(const CMat& lhs, const CMat& rhs, double tol = kAlgebraicTol);

// --- seeded random matrices (test/report plumbing) --------------------------

CMat random_complex_matrix(Eigen::Index n, std::mt19937_64& rng);
CMat random_unitary(Eigen::Index n, std::mt19937_64& rng);

}  // namespace spectriple

#endif  // SPECTRIPLE_CORE_HPP
