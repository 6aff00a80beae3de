// ---------------------------------------------------------------------------
// structural: the fundamental symmetry K, grading, charge conjugation, the
// KO sign tables, the Krein-product helpers, and the spin identities.
// ---------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>
#include <vector>

#include "spectriple/clifford.hpp"
#include "spectriple/structural.hpp"
#include "test_support.hpp"

using namespace spectriple;
using testsupport::boost_k_unitary;
using testsupport::pauli;

namespace {

// Random tangent vector with |eta(v, v)| = 1 in signature (n, 2m-n).
RVec random_unit_vector(const Signature& sig, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  for (;;) {
    RVec v(sig.space_dim());
    for (int a = 0; a < sig.space_dim(); ++a) v(a) = dist(rng);
    double q = 0.0;
    for (int a = 0; a < sig.space_dim(); ++a)
      q += sig.metric_sign(a) * v(a) * v(a);
    if (std::abs(q) < 0.1) continue;  // avoid near-null vectors
    return v / std::sqrt(std::abs(q));
  }
}

}  // namespace

TEST_SUITE("explicit 4D Lorentzian operators") {
  TEST_CASE("K = gamma^(0), real C, expected grading") {
    const CliffordBasis basis = chiral_gammas_4d();
    const StructuralSet ops = build_structural(basis);
    CHECK((ops.K - basis.gammas[0]).norm() == doctest::Approx(0.0));
    CHECK((ops.C - kron(pauli(3), pauli(1))).norm() == doctest::Approx(0.0));
    CHECK(ops.C.imag().norm() == doctest::Approx(0.0));
    // Gamma = i^t g0 g1 g2 g3 with t = m(2m-1) + n = 7 = 3 mod 4, i.e. -i.
    const CMat want = cplx(0, -1) * basis.gammas[0] * basis.gammas[1] *
                      basis.gammas[2] * basis.gammas[3];
    CHECK((ops.Gamma - want).norm() == doctest::Approx(0.0));
    CHECK(ops.ko == 6);
    CHECK(ops.eps == -1);
    CHECK(ops.eps_prime == -1);
  }

  TEST_CASE("K = identity in the Euclidean-time signature (1,2)") {
    const StructuralSet ops = build_structural(build_basis({1, 2}));
    CHECK((ops.K - CMat::Identity(2, 2)).norm() == doctest::Approx(0.0));
  }
}

TEST_SUITE("structural invariants across the sweep") {
  TEST_CASE("K, Gamma, C relations for all m <= 4, 0 <= n <= 2m") {
    for (int m = 1; m <= 4; ++m) {
      for (int n = 0; n <= 2 * m; ++n) {
        CAPTURE(m);
        CAPTURE(n);
        const CliffordBasis basis = build_basis({m, n});
        const StructuralSet ops = build_structural(basis);
        const Eigen::Index d = basis.sig.spinor_dim();
        const CMat id = CMat::Identity(d, d);

        CHECK((ops.K - ops.K.adjoint()).norm() < 1e-13);
        CHECK((ops.K * ops.K - id).norm() < 1e-13);
        CHECK((ops.Gamma - ops.Gamma.adjoint()).norm() < 1e-13);
        CHECK((ops.Gamma * ops.Gamma - id).norm() < 1e-13);
        for (int a = 0; a < 2 * m; ++a)
          CHECK((ops.Gamma * basis.gammas[a] + basis.gammas[a] * ops.Gamma).norm() <
                1e-13);

        // Twist acts diagonally on the frame: rho(gamma^a) = g_a gamma^a.
        for (int a = 0; a < 2 * m; ++a)
          CHECK((twist_apply(ops.K, basis.gammas[a]) -
                 basis.metric_sign(a) * basis.gammas[a])
                    .norm() < 1e-12);

        // Sign relations, as measured at construction.
        const auto law = kj_sign_law(m, n);
        CHECK(ops.eps == law.first);
        CHECK(ops.eps_prime == law.second);
        CHECK((ops.K * ops.C -
               static_cast<double>(ops.eps) * ops.C * ops.K.conjugate())
                  .norm() < 1e-12);
        CHECK((ops.K * ops.Gamma -
               static_cast<double>(ops.eps_prime) * ops.Gamma * ops.K)
                  .norm() < 1e-12);

        // C = lambda K C_hat with lambda = (-1)^n.
        const int lambda = (n % 2 == 0) ? 1 : -1;
        CHECK(ops.lambda == lambda);
        CHECK((ops.C - static_cast<double>(lambda) * ops.K * ops.C_hat).norm() <
              1e-12);

        // J^2 sign equals the table row entry eps0.
        CHECK(ops.J.square_sign() == ops.table_row.eps0);
      }
    }
  }

  TEST_CASE("the n-even sign law is nontrivial exactly at k = 2 mod 4") {
    // k = 2m - n: the anti-linearity of J conjugates the i-power in K.
    CHECK(kj_sign_law(2, 2) == std::pair<int, int>{-1, 1});   // k = 2
    CHECK(kj_sign_law(3, 4) == std::pair<int, int>{-1, 1});   // k = 2
    CHECK(kj_sign_law(3, 2) == std::pair<int, int>{1, 1});    // k = 4
    CHECK(kj_sign_law(2, 4) == std::pair<int, int>{1, 1});    // k = 0
    CHECK(kj_sign_law(2, 1) == std::pair<int, int>{-1, -1});  // n odd, 4-periodic in n
    CHECK(kj_sign_law(2, 3) == std::pair<int, int>{1, -1});   // n(3n-1)/2 = 12
    CHECK(kj_sign_law(4, 5) == std::pair<int, int>{-1, -1});  // n(3n-1)/2 = 35
  }

  TEST_CASE("epsilon_parameters agrees with the stored signs") {
    const CliffordBasis basis = build_basis({3, 2});
    const StructuralSet ops = build_structural(basis);
    const auto measured = epsilon_parameters(basis, ops);
    CHECK(measured.first == ops.eps);
    CHECK(measured.second == ops.eps_prime);
  }
}

TEST_SUITE("KO tables") {
  TEST_CASE("table rows for the four even KO dimensions") {
    CHECK(ko_dimension_row(1, 1) == EpsilonRow{1, 1, 1});     // ko 0
    CHECK(ko_dimension_row(2, 1) == EpsilonRow{-1, 1, -1});   // ko 2
    CHECK(ko_dimension_row(3, 1) == EpsilonRow{-1, 1, 1});    // ko 4
    CHECK(ko_dimension_row(1, 2) == EpsilonRow{1, 1, -1});    // ko 6
    CHECK(ko_dimension(1, 2) == 6);
    CHECK(ko_dimension(1, 1) == 0);
  }

  TEST_CASE("measured signs match the table on the mini derivative model") {
    for (int m = 1; m <= 3; ++m) {
      for (int n = 0; n <= 2 * m; ++n) {
        CAPTURE(m);
        CAPTURE(n);
        const CliffordBasis basis = build_basis({m, n});
        const StructuralSet ops = build_structural(basis);
        CHECK(measure_ko_row(basis, ops) == ops.table_row);
      }
    }
  }

  TEST_CASE("mini model operators have the advertised symmetry") {
    const CliffordBasis basis = chiral_gammas_4d();
    const StructuralSet ops = build_structural(basis);
    const MiniModel mini = build_mini_model(basis, ops, {0.3, 0.47, 0.64, 0.81});
    CHECK((mini.D - mini.D.adjoint()).norm() < 1e-12);
    CHECK((mini.DK - k_adjoint(mini.K, mini.DK)).norm() < 1e-12);
    CHECK((mini.D - mini.K * mini.DK).norm() < 1e-12);
  }

  TEST_CASE("twisted rows land in the tabulated columns") {
    {
      const StructuralSet ops = build_structural(chiral_gammas_4d());
      const TwistedRow row = twisted_table_row(ops.table_row, ops.eps, ops.eps_prime);
      CHECK(row == TwistedRow{1, -1, -1, 1});
      CHECK(std::string(row.column) == "(4)");
    }
    {
      const StructuralSet ops = build_structural(build_basis({1, 1}));
      const TwistedRow row = twisted_table_row(ops.table_row, ops.eps, ops.eps_prime);
      CHECK(row == TwistedRow{1, -1, 1, 1});
      CHECK(std::string(row.column) == "(2)");
    }
  }
}

TEST_SUITE("Krein helpers") {
  TEST_CASE("k_product, spinor_dual, and the K-adjoint move") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
      const CVec psi = testsupport::random_vector(4, rng);
      const CVec phi = testsupport::random_vector(4, rng);
      const CMat O = random_complex_matrix(4, rng);
      const cplx lhs = k_product(ops.K, psi, O * phi);
      const cplx rhs = k_product(ops.K, k_adjoint(ops.K, O) * psi, phi);
      CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
      const cplx dual_pairing = (spinor_dual(ops.K, psi) * phi).value();
      CHECK(std::abs(dual_pairing - k_product(ops.K, psi, phi)) < 1e-12);
    }
  }

  TEST_CASE("boosts are K-unitary, plain unitaries generally are not") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(77);
    for (int rep = 0; rep < 5; ++rep) {
      const CMat x = random_complex_matrix(4, rng);
      CHECK(is_k_unitary(ops.K, boost_k_unitary(ops.K, x)));
    }
    // A generic unitary mixes the Krein sectors.
    bool found_non_k_unitary = false;
    for (int rep = 0; rep < 5 && !found_non_k_unitary; ++rep)
      found_non_k_unitary = !is_k_unitary(ops.K, random_unitary(4, rng));
    CHECK(found_non_k_unitary);
  }

  TEST_CASE("the twist is regular on seeded samples") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    CHECK(check_regularity(ops.K, 12, 99));
  }
}

TEST_SUITE("spin identities") {
  TEST_CASE("x^{-1} = (-1)^q rho(x^dag) on seeded unit-vector products") {
    const CliffordBasis basis = chiral_gammas_4d();
    const StructuralSet ops = build_structural(basis);
    std::mt19937_64 rng(421);
    std::uniform_int_distribution<int> length(1, 6);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<RVec> factors;
      const int len = length(rng);
      for (int i = 0; i < len; ++i)
        factors.push_back(random_unit_vector(basis.sig, rng));
      CAPTURE(rep);
      CHECK(spin_identity_check(basis, ops.K, factors));
    }
  }

  TEST_CASE("non-unit factors are rejected") {
    const CliffordBasis basis = chiral_gammas_4d();
    const StructuralSet ops = build_structural(basis);
    RVec v = RVec::Zero(4);
    v(0) = 2.0;  // g(v,v) = 4
    CHECK_THROWS_AS(spin_identity_check(basis, ops.K, {v}), InvalidFactor);
  }
}

TEST_SUITE("structural extension") {
  TEST_CASE("extend_structural tensors with the identity and keeps signs") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    const StructuralSet ext = extend_structural(ops, 3);
    CHECK((ext.K - kron(ops.K, CMat::Identity(3, 3))).norm() == doctest::Approx(0.0));
    CHECK((ext.Gamma - kron(ops.Gamma, CMat::Identity(3, 3))).norm() ==
          doctest::Approx(0.0));
    CHECK((ext.C - kron(ops.C, CMat::Identity(3, 3))).norm() == doctest::Approx(0.0));
    CHECK(ext.eps == ops.eps);
    CHECK(ext.eps_prime == ops.eps_prime);
    CHECK(ext.ko == ops.ko);
    CHECK(ext.table_row == ops.table_row);
    CHECK_THROWS_AS(extend_structural(ops, 0), InvalidInput);
  }
}
