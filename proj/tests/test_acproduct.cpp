// ---------------------------------------------------------------------------
// acproduct: the finite KO-6 triple, the symbol-level twisted Dirac, the
// almost-commutative product, its derivation/fluctuation/pairing
// propositions, and the monomial constraints forcing O = K.
// ---------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "spectriple/acproduct.hpp"
#include "spectriple/clifford.hpp"
#include "spectriple/kmorphism.hpp"
#include "spectriple/structural.hpp"
#include "test_support.hpp"

using namespace spectriple;
using testsupport::pauli;

namespace {

struct ProductFixture {
  CliffordBasis basis = chiral_gammas_4d();
  StructuralSet ops = build_structural(basis);
  FiniteTriple finite = build_finite_triple_ko6(1.0);
  TripleSide manifold =
      make_twisted_side(build_symbol_dirac(basis, ops, {0.35, -0.2, 0.45, 0.15}), ops);
  ProductTriple prod = build_product(manifold, finite);

  // Scalar split gauge element r p_+ + r^{-1} p_-: K-unitary because the
  // twist swaps the grading projections in this odd-n signature.
  CMat scalar_split(double r) const {
    const Eigen::Index d = ops.Gamma.rows();
    const CMat pp = (CMat::Identity(d, d) + ops.Gamma) / 2.0;
    const CMat pm = (CMat::Identity(d, d) - ops.Gamma) / 2.0;
    return r * pp + (1.0 / r) * pm;
  }
};

}  // namespace

TEST_SUITE("finite KO-6 triple") {
  TEST_CASE("explicit operator content and measured signs") {
    const FiniteTriple f = build_finite_triple_ko6(2.5);
    CHECK(f.dimF == 2);
    CHECK((f.D_F - 2.5 * pauli(1)).norm() == doctest::Approx(0.0));
    CHECK((f.Gamma_F - pauli(3)).norm() == doctest::Approx(0.0));
    CHECK((f.J_F.linear_part() - pauli(1)).norm() == doctest::Approx(0.0));
    CHECK(f.eps_row == EpsilonRow{1, 1, -1});
    CHECK(f.eps3 == -1);
    CHECK(f.mass == 2.5);
  }

  TEST_CASE("mass must be nonzero") {
    CHECK_THROWS_AS(build_finite_triple_ko6(0.0), InvalidInput);
  }

  TEST_CASE("first-order defect matches the closed form and is generically nonzero") {
    const FiniteTriple f = build_finite_triple_ko6(1.3);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
      const CMat a = finite_algebra_element(cplx(dist(rng), dist(rng)),
                                            cplx(dist(rng), dist(rng)));
      const CMat b = finite_algebra_element(cplx(dist(rng), dist(rng)),
                                            cplx(dist(rng), dist(rng)));
      const CMat direct = finite_first_order(f, a, b);
      const CMat closed = finite_first_order_closed_form(f.mass, a, b);
      CHECK((direct - closed).norm() < 1e-12 * std::max(1.0, closed.norm()));
    }
    const CMat a = finite_algebra_element(1.0, 2.0);
    const CMat b = finite_algebra_element(3.0, -1.0);
    CHECK(finite_first_order(f, a, b).norm() > 0.1);
  }

  TEST_CASE("finite opposite is the pure diagonal swap") {
    // b° = J_F b^dag J_F^{-1}: the adjoint's conjugation cancels against the
    // anti-linearity of J_F, leaving diag(b1, b2) -> diag(b2, b1).
    const FiniteTriple f = build_finite_triple_ko6(1.0);
    const CMat b = finite_algebra_element(cplx(1, 2), cplx(3, -4));
    const CMat want = finite_algebra_element(cplx(3, -4), cplx(1, 2));
    CHECK((finite_opposite(f, b) - want).norm() == doctest::Approx(0.0));
  }
}

TEST_SUITE("symbol-level twisted Dirac") {
  TEST_CASE("construction enforces every advertised symmetry") {
    const ProductFixture f;
    const CMat& D = f.manifold.D;
    CHECK((D - D.adjoint()).norm() < 1e-12);
    CHECK((f.ops.J.conjugate_op(D) + D).norm() < 1e-12);
    CHECK(commutator(f.ops.Gamma, D).norm() < 1e-12);
    const CMat DK = f.ops.K * D;
    CHECK((DK - k_adjoint(f.ops.K, DK)).norm() < 1e-12);
  }

  TEST_CASE("only the 4D Lorentzian basis is supported") {
    const CliffordBasis wrong = build_basis({1, 1});
    const StructuralSet ops = build_structural(wrong);
    CHECK_THROWS_AS(build_symbol_dirac(wrong, ops, {0.1, 0.2, 0.3, 0.4}),
                    UnsupportedDimension);
  }

  TEST_CASE("coefficient count is validated") {
    const ProductFixture f;
    CHECK_THROWS_AS(build_symbol_dirac(f.basis, f.ops, {0.1, 0.2}), DimensionError);
  }
}

TEST_SUITE("product triple") {
  TEST_CASE("assembly verifies the factored form and the sign tuple") {
    const ProductFixture f;
    CHECK((f.prod.D_p - f.prod.D_p.adjoint()).norm() < 1e-12);
    CHECK(f.prod.measured == EpsilonRow{1, f.ops.eps, 1});
    CHECK(f.prod.eps3_p == -f.ops.eps_prime);
    CHECK(f.prod.eps3_p == 1);
    // D_p = D (x) I + K (x) D_F explicitly.
    const CMat want = kron(f.manifold.D, CMat::Identity(2, 2)) +
                      kron(f.ops.K, f.finite.D_F);
    CHECK((f.prod.D_p - want).norm() < 1e-12);
    // Product twisted grading: D_p Gamma_p + rho_p(Gamma_p) D_p = 0.
    const CMat rho_gamma = twist_apply(f.prod.K_p_twist, f.prod.Gamma_p);
    CHECK((f.prod.D_p * f.prod.Gamma_p + rho_gamma * f.prod.D_p).norm() < 1e-12);
  }

  TEST_CASE("the manifold side must be twisted") {
    const ProductFixture f;
    const TripleSide pseudo = phi_K(f.manifold);
    CHECK_THROWS_AS(build_product(pseudo, f.finite), InvalidInput);
  }

  TEST_CASE("derivations split exactly across the factors") {
    const ProductFixture f;
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 10; ++rep) {
      const CMat a1 = random_complex_matrix(4, rng);
      const CMat a2 = finite_algebra_element(cplx(0.3, 0.1) * double(rep + 1),
                                             cplx(-0.2, 0.5));
      const ProductDerivation der = product_derivation(f.prod, a1, a2);
      CHECK(der.residual < 1e-10);
      CHECK(der.factored_residual < 1e-10);
      CHECK((der.lhs - der.rhs).norm() < 1e-10);
    }
  }

  TEST_CASE("fluctuations decompose and leave the finite term invariant") {
    const ProductFixture f;
    const CMat u_K = f.scalar_split(1.7);
    REQUIRE(is_k_unitary(f.ops.K, u_K));
    const CMat u = finite_algebra_element(std::polar(1.0, 0.3), std::polar(1.0, -0.8));
    const ProductFluctuation fl = product_fluctuation(f.prod, u_K, u);
    CHECK(fl.decomposition_residual < 1e-10);
    CHECK(fl.finite_term_invariance < 1e-10);
    CHECK((fl.fluctuated - fl.fluctuated.adjoint()).norm() < 1e-10);
  }

  TEST_CASE("gauge elements are validated on both factors") {
    const ProductFixture f;
    const CMat good_u =
        finite_algebra_element(std::polar(1.0, 0.4), std::polar(1.0, 1.1));
    CHECK_THROWS_AS(
        product_fluctuation(f.prod, 2.0 * CMat::Identity(4, 4), good_u),
        InvalidGaugeElement);
    CHECK_THROWS_AS(
        product_fluctuation(f.prod, f.scalar_split(1.3),
                            finite_algebra_element(2.0, 1.0)),
        InvalidGaugeElement);
  }

  TEST_CASE("the Krein evaluation pairing factorizes") {
    const ProductFixture f;
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 10; ++rep) {
      const CVec psi1 = testsupport::random_vector(4, rng);
      const CVec psi2 = testsupport::random_vector(2, rng);
      const CVec phi1 = testsupport::random_vector(4, rng);
      const CVec phi2 = testsupport::random_vector(2, rng);
      const auto [lhs, rhs] = evaluate_pairing(f.prod, psi1, psi2, phi1, phi2);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_SUITE("constraints forcing O = K") {
  TEST_CASE("the 64-candidate filter keeps exactly the two sign classes") {
    const ProductFixture f;
    const auto candidates = clifford_monomial_candidates(f.basis.gammas);
    CHECK(candidates.size() == 64);
    const auto survivors =
        solve_O_constraints(f.manifold.D, f.ops.J, f.ops.Gamma, f.ops.eps,
                            f.ops.eps_prime, candidates, &f.ops.K);
    REQUIRE(survivors.size() == 4);
    const CMat odd3 = f.basis.gammas[1] * f.basis.gammas[2] * f.basis.gammas[3];
    int n_K = 0, n_odd3 = 0;
    for (const auto& s : survivors) {
      if ((s.matrix - f.ops.K).norm() < 1e-12 ||
          (s.matrix + f.ops.K).norm() < 1e-12)
        ++n_K;
      if ((s.matrix - odd3).norm() < 1e-12 || (s.matrix + odd3).norm() < 1e-12)
        ++n_odd3;
    }
    CHECK(n_K == 2);
    CHECK(n_odd3 == 2);
  }

  TEST_CASE("expected members are asserted") {
    const ProductFixture f;
    const auto candidates = clifford_monomial_candidates(f.basis.gammas);
    // gamma^(1) violates the constraints, so demanding it among the
    // survivors must fail.
    CHECK_THROWS_AS(
        solve_O_constraints(f.manifold.D, f.ops.J, f.ops.Gamma, f.ops.eps,
                            f.ops.eps_prime, candidates, &f.basis.gammas[1]),
        InconsistentStructure);
  }

  TEST_CASE("input validation") {
    const ProductFixture f;
    CHECK_THROWS_AS(clifford_monomial_candidates({}), InvalidInput);
    CHECK_THROWS_AS(solve_O_constraints(f.manifold.D, f.ops.J, f.ops.Gamma,
                                        f.ops.eps, f.ops.eps_prime, {}),
                    InvalidInput);
    const auto candidates = clifford_monomial_candidates(f.basis.gammas);
    CHECK_THROWS_AS(solve_O_constraints(f.manifold.D, f.ops.J, f.ops.Gamma, 0,
                                        f.ops.eps_prime, candidates),
                    InvalidInput);
  }
}

TEST_SUITE("lattice manifold product") {
  TEST_CASE("eps3 is reported unmeasured when the grading relation fails") {
    const CliffordBasis basis = chiral_gammas_4d();
    const StructuralSet ops = build_structural(basis);
    const LatticeModel lat = build_lattice_dirac(basis, 4, {1, 2});
    const StructuralSet ext = extend_structural(ops, lat.lattice_dim());
    const TripleSide manifold = make_twisted_side(lat.D_lat, ext);
    const FiniteTriple finite = build_finite_triple_ko6(1.0);
    const ProductTriple prod = build_product(manifold, finite);
    CHECK(prod.eps3_p == 0);
    CHECK(prod.measured == EpsilonRow{1, ext.eps, 1});
    CHECK((prod.D_p - prod.D_p.adjoint()).norm() < 1e-12);
  }
}
