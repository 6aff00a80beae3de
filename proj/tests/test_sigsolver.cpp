// ---------------------------------------------------------------------------
// sigsolver: the exhaustive 4D classification of fundamental symmetries.
// Monomial enumeration/filter/classification on one side, the dense
// SVD-nullspace oracle on the other; the two engines must agree
// solution-for-solution.
// ---------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "spectriple/clifford.hpp"
#include "spectriple/sigsolver.hpp"
#include "spectriple/structural.hpp"

using namespace spectriple;

namespace {

struct SolverFixture {
  CliffordBasis euclid = build_basis({2, 4});
  CMat Gamma = build_grading(euclid);
  ChargeConjugation cc = build_charge_conjugation(euclid);
};

}  // namespace

TEST_SUITE("candidate enumeration") {
  TEST_CASE("64 candidates in deterministic (bitmask, phase) order") {
    const SolverFixture f;
    const auto candidates = enumerate_candidates(f.euclid);
    REQUIRE(candidates.size() == 64);
    // First block: the empty subset with phases 1, i, -1, -i.
    CHECK(candidates[0].subset.empty());
    CHECK((candidates[0].matrix - CMat::Identity(4, 4)).norm() == doctest::Approx(0.0));
    CHECK(std::abs(candidates[1].phase - cplx(0, 1)) == doctest::Approx(0.0));
    // Bitmask 1 = subset {0}.
    CHECK(candidates[4].subset == std::vector<int>{0});
    CHECK((candidates[4].matrix - f.euclid.euclid_gammas[0]).norm() ==
          doctest::Approx(0.0));
    // Last candidate: the full subset with phase -i.
    CHECK(candidates[63].subset == std::vector<int>{0, 1, 2, 3});
  }

  TEST_CASE("other half-dimensions are gated behind allow_general_m") {
    const CliffordBasis small = build_basis({1, 2});
    CHECK_THROWS_AS(enumerate_candidates(small), UnsupportedDimension);
    CHECK_NOTHROW(enumerate_candidates(small, true));
    CHECK(enumerate_candidates(small, true).size() == 16);
  }
}

TEST_SUITE("classification, eps = -1") {
  TEST_CASE("solutions are exactly the eight signed frame directions") {
    const SolverFixture f;
    const SignatureReport report = solve_signatures(f.euclid, -1);
    CHECK(report.eps == -1);
    REQUIRE(report.solutions.size() == 8);
    std::set<std::vector<int>> patterns;
    for (const auto& sol : report.solutions) {
      CHECK(sol.candidate.subset.size() == 1);
      CHECK(sol.time_directions == 1);
      CHECK(std::abs(std::abs(sol.candidate.phase) - 1.0) < 1e-14);
      patterns.insert(sol.s);
    }
    // Four sign patterns (one +1 slot each), each realized by +-gt^(a).
    CHECK(patterns.size() == 4);
    for (int a = 0; a < 4; ++a) {
      std::vector<int> want(4, -1);
      want[a] = 1;
      CHECK(patterns.count(want) == 1);
    }
    CHECK(uniqueness_of_time(report));
  }

  TEST_CASE("the Lorentzian construction output is one of the solutions") {
    const SolverFixture f;
    const SignatureReport report = solve_signatures(f.euclid, -1);
    const StructuralSet lorentz = build_structural(chiral_gammas_4d());
    bool found = false;
    for (const auto& sol : report.solutions)
      found = found || (sol.candidate.matrix - lorentz.K).norm() < 1e-12;
    CHECK(found);
  }
}

TEST_SUITE("classification, eps = +1") {
  TEST_CASE("solutions are exactly the eight signed odd triples") {
    const SolverFixture f;
    const SignatureReport report = solve_signatures(f.euclid, 1);
    REQUIRE(report.solutions.size() == 8);
    for (const auto& sol : report.solutions) {
      CHECK(sol.candidate.subset.size() == 3);
      CHECK(sol.time_directions == 3);
      // The phase must be +-i for a Hermitian involution on a 3-subset.
      CHECK(std::abs(sol.candidate.phase.real()) < 1e-14);
      CHECK(std::abs(std::abs(sol.candidate.phase.imag()) - 1.0) < 1e-14);
    }
    CHECK(uniqueness_of_time(report));
  }
}

TEST_SUITE("filter soundness") {
  TEST_CASE("every survivor satisfies all five constraints") {
    const SolverFixture f;
    for (int eps : {-1, 1}) {
      CAPTURE(eps);
      const auto survivors = filter_candidates(
          f.euclid, enumerate_candidates(f.euclid), f.Gamma, f.cc.J, eps);
      CHECK(survivors.size() == 8);
      for (const auto& k : survivors) {
        const CMat& K = k.matrix;
        CHECK((K - K.adjoint()).norm() < 1e-12);
        CHECK((K * K - CMat::Identity(4, 4)).norm() < 1e-12);
        CHECK((K * f.Gamma + f.Gamma * K).norm() < 1e-12);
        CHECK((K * f.cc.C - static_cast<double>(eps) * f.cc.C * K.conjugate())
                  .norm() < 1e-12);
        for (int a = 0; a < 4; ++a) {
          const CMat rho = K * f.euclid.euclid_gammas[a] * K;
          const double plus = (rho - f.euclid.euclid_gammas[a]).norm();
          const double minus = (rho + f.euclid.euclid_gammas[a]).norm();
          CHECK(std::min(plus, minus) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("no survivor has an even subset size") {
    const SolverFixture f;
    for (int eps : {-1, 1}) {
      const auto survivors = filter_candidates(
          f.euclid, enumerate_candidates(f.euclid), f.Gamma, f.cc.J, eps);
      for (const auto& k : survivors) CHECK(k.subset.size() % 2 == 1);
    }
  }

  TEST_CASE("classify_signature rejects candidates that escaped the filter") {
    const SolverFixture f;
    KCandidate bad;
    bad.subset = {0};
    bad.phase = 1.0;
    // A Hermitian involution whose twist does NOT act diagonally on the frame.
    bad.matrix = (f.euclid.euclid_gammas[0] + f.euclid.euclid_gammas[1]) /
                 std::sqrt(2.0);
    CHECK_THROWS_AS(classify_signature(bad, f.euclid), InternalFilterBug);
  }
}

TEST_SUITE("input validation") {
  TEST_CASE("solve_signatures wants eps in {-1, +1} and a Euclidean basis") {
    const SolverFixture f;
    CHECK_THROWS_AS(solve_signatures(f.euclid, 0), InvalidInput);
    CHECK_THROWS_AS(solve_signatures(f.euclid, 2), InvalidInput);
    CHECK_THROWS_AS(solve_signatures(chiral_gammas_4d(), -1), InvalidInput);
  }

  TEST_CASE("the dense oracle is 4D only") {
    const CliffordBasis small = build_basis({1, 2});
    const CMat gamma = build_grading(small);
    const ChargeConjugation cc = build_charge_conjugation(small);
    CHECK_THROWS_AS(dense_nullspace_solutions(small, gamma, cc.J, -1),
                    UnsupportedDimension);
  }
}

TEST_SUITE("dense-nullspace oracle") {
  TEST_CASE("both engines find the same solutions, both signs of eps") {
    const SolverFixture f;
    for (int eps : {-1, 1}) {
      CAPTURE(eps);
      const SignatureReport monomial = solve_signatures(f.euclid, eps);
      const auto dense = dense_nullspace_solutions(f.euclid, f.Gamma, f.cc.J, eps);
      CHECK(!dense.empty());
      CHECK(dense_agreement_residual(dense, monomial.solutions) < 1e-8);
    }
  }

  TEST_CASE("dense solutions carry valid fundamental symmetries") {
    const SolverFixture f;
    const auto dense = dense_nullspace_solutions(f.euclid, f.Gamma, f.cc.J, -1);
    for (const auto& sol : dense) {
      CHECK((sol.K - sol.K.adjoint()).norm() < 1e-8);
      CHECK((sol.K * sol.K - CMat::Identity(4, 4)).norm() < 1e-8);
      CHECK(std::count(sol.s.begin(), sol.s.end(), 1) == 1);
    }
  }
}
