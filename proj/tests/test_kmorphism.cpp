// ---------------------------------------------------------------------------
// kmorphism: the involutive map between the twisted and pseudo-Riemannian
// sides, the derivation bridge, inner fluctuations of both types, and the
// periodic-lattice Dirac model with its split function algebra.
// ---------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "spectriple/clifford.hpp"
#include "spectriple/kmorphism.hpp"
#include "spectriple/structural.hpp"
#include "test_support.hpp"

using namespace spectriple;
using testsupport::boost_k_unitary;

namespace {

CMat random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  const CMat a = random_complex_matrix(d, rng);
  return ((a + a.adjoint()) / 2.0).eval();
}

struct LatticeFixture {
  CliffordBasis basis = chiral_gammas_4d();
  StructuralSet ops = build_structural(basis);
  LatticeModel lat = build_lattice_dirac(basis, 6, {1, 2});
  StructuralSet ext = extend_structural(ops, lat.lattice_dim());

  // Direction-separated split functions: component 1 on the x0 axis,
  // component 2 on the x1 axis (rows are x0, columns x1 in row-major order).
  CVec site_wave(int mode0, int mode1) const {
    const int N = lat.sites;
    CVec v(lat.lattice_dim());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double x0 = static_cast<double>(i / N);
      const double x1 = static_cast<double>(i % N);
      v(i) = std::polar(1.0, 2.0 * std::numbers::pi * (mode0 * x0 + mode1 * x1) / N);
    }
    return v;
  }
};

}  // namespace

TEST_SUITE("the two sides and Phi^K") {
  TEST_CASE("validating constructors accept matching Dirac operators") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(11);
    const CMat D = random_hermitian(4, rng);
    const TripleSide tw = make_twisted_side(D, ops);
    CHECK(tw.kind == TripleKind::Twisted);
    CHECK(tw.inner == InnerKind::Standard);
    const TripleSide ps = make_pseudo_side(ops.K * D, ops);
    CHECK(ps.kind == TripleKind::Pseudo);
    CHECK(ps.inner == InnerKind::Krein);
  }

  TEST_CASE("wrong symmetry class is rejected") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(12);
    const CMat a = random_complex_matrix(4, rng);  // generic, not Hermitian
    CHECK_THROWS_AS(make_twisted_side(a, ops), InconsistentStructure);
    CHECK_THROWS_AS(make_pseudo_side(a, ops), InconsistentStructure);
  }

  TEST_CASE("Phi^K swaps the sides and is involutive") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(13);
    const TripleSide tw = make_twisted_side(random_hermitian(4, rng), ops);
    const TripleSide ps = phi_K(tw);
    CHECK(ps.kind == TripleKind::Pseudo);
    CHECK(ps.inner == InnerKind::Krein);
    CHECK((ps.D - ops.K * tw.D).norm() == doctest::Approx(0.0));
    const TripleSide back = phi_K(ps);
    CHECK(back.kind == TripleKind::Twisted);
    CHECK((back.D - tw.D).norm() < 1e-14);
  }
}

TEST_SUITE("derivation bridge") {
  TEST_CASE("[D,a]_rho = K [D^K, a] for arbitrary a") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(17);
    const CMat D = random_hermitian(4, rng);
    const CMat DK = ops.K * D;
    for (int rep = 0; rep < 25; ++rep) {
      const CMat a = random_complex_matrix(4, rng);
      const CMat lhs = twisted_commutator(D, a, ops.K);
      const CMat rhs = ops.K * (DK * a - a * DK);
      CHECK(rel_residual(lhs, rhs) < kAlgebraicTol);
    }
  }

  TEST_CASE("check_first_order returns the requested side's residual") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(19);
    const CMat D = random_hermitian(4, rng);
    const CMat a = random_complex_matrix(4, rng);
    const CMat b = random_complex_matrix(4, rng);
    const double tw = check_first_order(D, a, b, ops.J, ops.K, true);
    const double plain = check_first_order(D, a, b, ops.J, ops.K, false);
    // The bridge multiplies by the unitary K, so the norms agree.
    CHECK(tw == doctest::Approx(plain).epsilon(1e-10));
    CHECK(tw > 0.0);  // generic matrices violate first order
  }
}

TEST_SUITE("inner fluctuations (matrix model)") {
  TEST_CASE("type-1 rejects non-unitary gauge elements") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(23);
    const CMat D = random_hermitian(4, rng);
    CHECK_THROWS_AS(fluctuate_type1(D, 2.0 * CMat::Identity(4, 4), ops.J, ops.K),
                    InvalidGaugeElement);
  }

  TEST_CASE("type-2 rejects gauge elements that are not K-unitary") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(29);
    // A generic unitary is not K-unitary.
    CMat u;
    do {
      u = random_unitary(4, rng);
    } while (is_k_unitary(ops.K, u));
    CHECK_THROWS_AS(fluctuate_type2(random_hermitian(4, rng), u, ops.J, ops.K),
                    InvalidGaugeElement);
  }

  TEST_CASE("fluctuated_family validates the sign") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(31);
    const CMat D = random_hermitian(4, rng);
    CHECK_THROWS_AS(fluctuated_family(D, D, ops.J, 0), InvalidInput);
    CHECK_THROWS_AS(fluctuated_family(D, D, ops.J, 2), InvalidInput);
  }

  TEST_CASE("type-2 pseudo-side bridge is unconditional machine algebra") {
    const StructuralSet ops = build_structural(chiral_gammas_4d());
    std::mt19937_64 rng(37);
    const CMat D = random_hermitian(4, rng);
    for (int rep = 0; rep < 10; ++rep) {
      const CMat u_K = boost_k_unitary(ops.K, 0.4 * random_complex_matrix(4, rng));
      CHECK(type2_pseudo_bridge_residual(D, u_K, ops.J, ops.K) < 1e-10);
    }
  }
}

TEST_SUITE("periodic-lattice Dirac model") {
  TEST_CASE("construction validates N and the direction set") {
    const CliffordBasis basis = chiral_gammas_4d();
    CHECK_THROWS_AS(build_lattice_dirac(basis, 5, {1}), UnsupportedLattice);
    CHECK_THROWS_AS(build_lattice_dirac(basis, 2, {1}), UnsupportedLattice);
    CHECK_THROWS_AS(build_lattice_dirac(basis, 6, {}), UnsupportedLattice);
    CHECK_THROWS_AS(build_lattice_dirac(basis, 6, {1, 2, 3}), UnsupportedLattice);
    CHECK_THROWS_AS(build_lattice_dirac(basis, 6, {1, 1}), InvalidInput);
    CHECK_THROWS_AS(build_lattice_dirac(basis, 6, {9}), InvalidInput);
  }

  TEST_CASE("plane waves diagonalize the symmetric difference") {
    const int N = 8;
    const double h = 1.0 / N;
    const CMat P = lattice_difference(N, h);
    for (int k = 0; k <= 3; ++k) {
      CAPTURE(k);
      const CVec wave = lattice_plane_wave(N, 1, 0, k);
      const double ev = std::sin(2.0 * std::numbers::pi * k / N) / h;
      CHECK((P * wave - ev * wave).norm() < 1e-12 * std::max(1.0, std::abs(ev)));
    }
  }

  TEST_CASE("commutator norm against the shift oracle, 1D") {
    const int N = 8;
    const double h = 1.0 / N;
    const CMat P = lattice_difference(N, h);
    for (int k = 1; k <= 3; ++k) {
      CAPTURE(k);
      const CVec wave = lattice_plane_wave(N, 1, 0, k);
      const CMat comm = P * wave.asDiagonal().toDenseMatrix() -
                        wave.asDiagonal().toDenseMatrix() * P;
      CHECK(op_2norm_estimate(comm) ==
            doctest::Approx(lattice_comm_norm_oracle(N, h, k)).epsilon(1e-5));
    }
  }

  TEST_CASE("D_lat symmetries on the (2,1) two-direction lattice") {
    const LatticeFixture f;
    const Eigen::Index d = f.lat.total_dim();
    CHECK(f.lat.total_dim() == 4 * 36);
    CHECK((f.lat.D_lat - f.lat.D_lat.adjoint()).norm() < 1e-12);
    // ê_1, ê_2 anticommute with ê_0 = K and with the grading.
    CHECK((f.ext.K * f.lat.D_lat + f.lat.D_lat * f.ext.K).norm() < 1e-12);
    CHECK((f.ext.Gamma * f.lat.D_lat + f.lat.D_lat * f.ext.Gamma).norm() < 1e-12);
    // J D_lat = -D_lat J in this signature (eps1 * eps = -1).
    CHECK((f.ext.J.conjugate_op(f.lat.D_lat) + f.lat.D_lat).norm() < 1e-10);
    CHECK(d == f.lat.D_lat.rows());
  }

  TEST_CASE("plain site functions are twist-trivial") {
    const LatticeFixture f;
    const CMat a = f.lat.multiplication(f.site_wave(1, 2));
    CHECK((twist_apply(f.ext.K, a) - a).norm() < 1e-12);
  }
}

TEST_SUITE("split function algebra") {
  TEST_CASE("twist swaps the components, J swaps and conjugates") {
    const LatticeFixture f;
    const CVec f1 = f.site_wave(1, 0), f2 = f.site_wave(0, 2);
    const CMat u = f.lat.split_multiplication(f.ops.Gamma, f1, f2);
    CHECK((u * u.adjoint() -
           CMat::Identity(f.lat.total_dim(), f.lat.total_dim()))
              .norm() < 1e-12);
    CHECK((twist_apply(f.ext.K, u) -
           f.lat.split_multiplication(f.ops.Gamma, f2, f1))
              .norm() < 1e-12);
    CHECK((f.ext.J.conjugate_op(u) -
           f.lat.split_multiplication(f.ops.Gamma, f2.conjugate(), f1.conjugate()))
              .norm() < 1e-12);
  }

  TEST_CASE("order zero and direction-separated twisted first order") {
    const LatticeFixture f;
    const CMat u = f.lat.split_multiplication(f.ops.Gamma, f.site_wave(1, 0),
                                              f.site_wave(0, 2));
    const CMat b = f.lat.split_multiplication(f.ops.Gamma, f.site_wave(3, 0),
                                              f.site_wave(0, -1));
    const CMat b_opp = f.ext.J.conjugate_op(b.adjoint());
    CHECK(commutator(u, b_opp).norm() < 1e-12);
    const CMat nested = twisted_commutator(
        twisted_commutator(f.lat.D_lat, u, f.ext.K), b_opp, f.ext.K);
    CHECK(nested.norm() < 1e-10);
  }

  TEST_CASE("mixing the axes breaks the vanishing (lattice artifact)") {
    const LatticeFixture f;
    const CMat u = f.lat.split_multiplication(f.ops.Gamma, f.site_wave(1, 0),
                                              f.site_wave(0, 2));
    // b1 depends on both axes: the x1-derivative term no longer commutes.
    const CMat b = f.lat.split_multiplication(f.ops.Gamma, f.site_wave(1, 1),
                                              f.site_wave(0, -1));
    const CMat b_opp = f.ext.J.conjugate_op(b.adjoint());
    const CMat nested = twisted_commutator(
        twisted_commutator(f.lat.D_lat, u, f.ext.K), b_opp, f.ext.K);
    INFO("mixed-axis nested commutator norm: " << nested.norm());
    CHECK(nested.norm() > 1.0);
  }

  TEST_CASE("type-1 fluctuation lands in the twisted one-form family") {
    const LatticeFixture f;
    const TwistedRow trow = twisted_table_row(f.ops.table_row, f.ops.eps,
                                              f.ops.eps_prime);
    const CMat u = f.lat.split_multiplication(f.ops.Gamma, f.site_wave(1, 0),
                                              f.site_wave(0, 2));
    const CMat d1 = fluctuate_type1(f.lat.D_lat, u, f.ext.J, f.ext.K);
    const CMat one_form = type1_one_form(f.lat.D_lat, u, f.ext.K);
    CHECK((d1 - fluctuated_family(f.lat.D_lat, one_form, f.ext.J, trow.eps1))
              .norm() < 1e-9);
    // The Krein symmetry class is preserved: D_lat is K-anti-self-adjoint
    // (K anticommutes with it), and so is the fluctuated operator.
    CHECK((k_adjoint(f.ext.K, d1) + d1).norm() < 1e-10);
  }

  TEST_CASE("type-2 fluctuation is trivial on the commutative split algebra") {
    const LatticeFixture f;
    const int N = f.lat.sites;
    CVec r(f.lat.lattice_dim());
    for (Eigen::Index i = 0; i < r.size(); ++i)
      r(i) = 1.0 + 0.5 * std::cos(2.0 * std::numbers::pi *
                                  static_cast<double>(i / N) / N);
    const CMat u_k = f.lat.split_multiplication(f.ops.Gamma, r, r.cwiseInverse());
    REQUIRE(is_k_unitary(f.ext.K, u_k));
    const CMat d2 = fluctuate_type2(f.lat.D_lat, u_k, f.ext.J, f.ext.K);
    CHECK((d2 - f.lat.D_lat).norm() < 1e-10);
  }
}
