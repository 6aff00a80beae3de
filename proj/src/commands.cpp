#include "spectriple/commands.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "spectriple/acproduct.hpp"
#include "spectriple/clifford.hpp"
#include "spectriple/geometry.hpp"
#include "spectriple/kmorphism.hpp"
#include "spectriple/sigsolver.hpp"
#include "spectriple/structural.hpp"

namespace spectriple {

namespace {

class Stopwatch {
 public:
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CMat random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const CMat a = random_complex_matrix(n, rng);
  return 0.5 * (a + a.adjoint());
}

CVec random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = dist(rng);
    const double im = dist(rng);
    v(i) = cplx(re, im);
  }
  return v;
}

std::string format_mn(int m, int n) {
  return "(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

// Canonical probe point for the metric families: small, generic, keeps every
// family's warp factors away from zero.
RVec default_probe_point(int dim) {
  const double coords[4] = {0.05, -0.02, 0.03, 0.01};
  RVec x(dim);
  for (int i = 0; i < dim; ++i) x(i) = coords[i % 4];
  return x;
}

std::string json_double_vector(const std::vector<double>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += json_number(v[i]);
  }
  out += "]";
  return out;
}

}  // namespace

// --- gamma -------------------------------------------------------------------

Report run_gamma(const GammaOptions& opt) {
  Stopwatch watch;
  Report rep;
  rep.command = "gamma";
  rep.parameters = {{"m", json_int(opt.m)},
                    {"n", json_int(opt.n)},
                    {"dump", json_bool(opt.dump)},
                    {"seed", json_int(static_cast<long long>(opt.seed))}};

  const CliffordBasis basis = build_basis({opt.m, opt.n});
  const int dim2m = 2 * opt.m;
  const Eigen::Index dim = basis.sig.spinor_dim();
  const CMat eye = CMat::Identity(dim, dim);

  rep.add(residual_check("clifford anticommutation relations", verify_clifford(basis),
                         kAlgebraicTol));

  double adjoint_law = 0.0;
  for (int a = 0; a < dim2m; ++a) {
    const CMat& g = basis.gammas[static_cast<size_t>(a)];
    adjoint_law = std::max(
        adjoint_law,
        (g.adjoint() - static_cast<double>(basis.sig.metric_sign(a)) * g).norm());
  }
  rep.add(residual_check("adjoint law (gamma^a)^dag = g_a gamma^a", adjoint_law,
                         kAlgebraicTol));

  double euclid_herm = 0.0;
  for (const CMat& e : basis.euclid_gammas)
    euclid_herm = std::max(euclid_herm, (e - e.adjoint()).norm());
  rep.add(residual_check("euclidean frame hermitian", euclid_herm, kAlgebraicTol));

  const StructuralSet ops = build_structural(basis);
  rep.add(residual_check("K hermitian involution",
                         (ops.K - ops.K.adjoint()).norm() + (ops.K * ops.K - eye).norm(),
                         kAlgebraicTol));
  rep.add(residual_check(
      "grading hermitian involution",
      (ops.Gamma - ops.Gamma.adjoint()).norm() + (ops.Gamma * ops.Gamma - eye).norm(),
      kAlgebraicTol));

  double grading_anti = 0.0;
  for (const CMat& g : basis.gammas)
    grading_anti = std::max(grading_anti, (ops.Gamma * g + g * ops.Gamma).norm());
  rep.add(residual_check("grading anticommutes with every gamma", grading_anti,
                         kAlgebraicTol));

  double twist_diag = 0.0;
  for (int a = 0; a < dim2m; ++a) {
    const CMat& g = basis.gammas[static_cast<size_t>(a)];
    twist_diag = std::max(
        twist_diag,
        (twist_apply(ops.K, g) - static_cast<double>(basis.sig.metric_sign(a)) * g)
            .norm());
  }
  rep.add(residual_check("twist acts diagonally: rho(gamma^a) = g_a gamma^a",
                         twist_diag, kAlgebraicTol));

  rep.add(residual_check(
      "K-J commutation at the sign law",
      (ops.K * ops.C - static_cast<double>(ops.eps) * ops.C * ops.K.conjugate()).norm(),
      kAlgebraicTol));
  rep.add(residual_check(
      "K-grading commutation at the sign law",
      (ops.K * ops.Gamma -
       static_cast<double>(ops.eps_prime) * ops.Gamma * ops.K)
          .norm(),
      kAlgebraicTol));
  rep.add(residual_check(
      "J-grading commutation at the table sign",
      (ops.C * ops.Gamma.conjugate() -
       static_cast<double>(ops.table_row.eps2) * ops.Gamma * ops.C)
          .norm(),
      kAlgebraicTol));
  rep.add(boolean_check("J squares to the table sign",
                        ops.J.square_sign() == ops.table_row.eps0));
  rep.add(boolean_check("lambda = (-1)^n in C = lambda K C_hat",
                        ops.lambda == ((opt.n % 2 == 0) ? 1 : -1)));
  rep.add(boolean_check("twist regularity on seeded samples",
                        check_regularity(ops.K, 16, opt.seed)));

  std::vector<RVec> factors;
  factors.push_back(RVec::Unit(dim2m, 0));
  factors.push_back(RVec::Unit(dim2m, dim2m - 1));
  rep.add(boolean_check("spin inverse identity on frame vectors",
                        spin_identity_check(basis, ops.K, factors)));

  if (opt.m == 2 && opt.n == 1)
    rep.add(residual_check("K equals gamma^(0)", (ops.K - basis.gammas[0]).norm(),
                           kAlgebraicTol));
  if (opt.m == 1 && opt.n == 2)
    rep.add(residual_check("K equals the identity", (ops.K - eye).norm(), kAlgebraicTol));

  if (opt.dump) {
    for (int a = 0; a < dim2m; ++a)
      rep.extras.push_back({"gamma^(" + std::to_string(a) + ")",
                            json_matrix(basis.gammas[static_cast<size_t>(a)])});
    rep.extras.push_back({"K", json_matrix(ops.K)});
    rep.extras.push_back({"Gamma", json_matrix(ops.Gamma)});
    rep.extras.push_back({"C", json_matrix(ops.C)});
    rep.extras.push_back({"C_hat", json_matrix(ops.C_hat)});
  }

  rep.wall_time_ms = watch.elapsed_ms();
  return rep;
}

// --- ko-table ----------------------------------------------------------------

Report run_ko_table() {
  Stopwatch watch;
  Report rep;
  rep.command = "ko-table";
  rep.parameters = {{"max_m", json_int(4)}};

  // The four even rows of the sign table.
  const std::pair<int, EpsilonRow> table[4] = {
      {0, {1, 1, 1}}, {2, {-1, 1, -1}}, {4, {-1, 1, 1}}, {6, {1, 1, -1}}};
  // Representative (n, m) per row: ko = 2(n - m) mod 8.
  const std::pair<int, int> rep_nm[4] = {{1, 1}, {2, 1}, {3, 1}, {1, 2}};
  for (int i = 0; i < 4; ++i) {
    const auto& [ko, expect] = table[i];
    const auto& [n, m] = rep_nm[i];
    rep.add(boolean_check("table row ko=" + std::to_string(ko) + " equals (" +
                              std::to_string(expect.eps0) + "," +
                              std::to_string(expect.eps1) + "," +
                              std::to_string(expect.eps2) + ")",
                          ko_dimension(n, m) == ko && ko_dimension_row(n, m) == expect));
  }

  for (int m = 1; m <= 4; ++m)
    for (int n = 0; n <= 2 * m; ++n) {
      const CliffordBasis basis = build_basis({m, n});
      const StructuralSet ops = build_structural(basis);
      const EpsilonRow measured = measure_ko_row(basis, ops);
      rep.add(boolean_check(
          "measured (J^2, J vs D^K, J vs grading) matches the table at " +
              format_mn(m, n) + " ko=" + std::to_string(ops.ko),
          measured == ops.table_row));
    }

  // Flagship twisted rows: the Lorentzian 4D case lands in column (4), the
  // Lorentzian 2D case in column (2).
  {
    const CliffordBasis b21 = build_basis({2, 1});
    const StructuralSet o21 = build_structural(b21);
    const TwistedRow t21 = twisted_table_row(o21.table_row, o21.eps, o21.eps_prime);
    const bool ok21 = t21.eps0 == 1 && t21.eps1 == -1 && t21.eps2 == -1 &&
                      t21.eps3 == 1 && std::string(t21.column) == "(4)";
    rep.add(boolean_check("twisted row at (m,n)=(2,1) is (1,-1,-1,1), column (4)", ok21));

    const CliffordBasis b11 = build_basis({1, 1});
    const StructuralSet o11 = build_structural(b11);
    const TwistedRow t11 = twisted_table_row(o11.table_row, o11.eps, o11.eps_prime);
    const bool ok11 = t11.eps0 == 1 && t11.eps1 == -1 && t11.eps2 == 1 &&
                      t11.eps3 == 1 && std::string(t11.column) == "(2)";
    rep.add(boolean_check("twisted row at (m,n)=(1,1) is (1,-1,1,1), column (2)", ok11));
  }

  rep.wall_time_ms = watch.elapsed_ms();
  return rep;
}

// --- morphism ----------------------------------------------------------------

Report run_morphism(const MorphismOptions& opt) {
  Stopwatch watch;
  Report rep;
  rep.command = "morphism";
  rep.parameters = {{"m", json_int(opt.m)},
                    {"n", json_int(opt.n)},
                    {"samples", json_int(opt.samples)},
                    {"lattice", json_int(opt.lattice_sites)},
                    {"seed", json_int(static_cast<long long>(opt.seed))}};

  const CliffordBasis basis = build_basis({opt.m, opt.n});
  const StructuralSet ops = build_structural(basis);
  const Eigen::Index dim = basis.sig.spinor_dim();
  std::mt19937_64 rng(opt.seed);

  const CMat h = random_hermitian(dim, rng);
  const TripleSide twisted = make_twisted_side(h, ops);
  const TripleSide pseudo = phi_K(twisted);
  rep.add(boolean_check("twisted/pseudo side validators accept D and K D",
                        twisted.kind == TripleKind::Twisted &&
                            pseudo.kind == TripleKind::Pseudo &&
                            pseudo.inner == InnerKind::Krein));
  rep.add(residual_check("Phi^K is involutive", (phi_K(pseudo).D - twisted.D).norm(),
                         kAlgebraicTol));
  rep.add(residual_check("pseudo Dirac is K-self-adjoint",
                         (k_adjoint(ops.K, pseudo.D) - pseudo.D).norm(), kAlgebraicTol));

  double bridge = 0.0, pairing = 0.0, adjoint_move = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    const CMat a = random_complex_matrix(dim, rng);
    const CMat b = random_complex_matrix(dim, rng);
    const CMat b_opp = ops.J.conjugate_op(b.adjoint());
    const CMat nested_tw =
        twisted_commutator(twisted_commutator(h, a, ops.K), b_opp, ops.K);
    const CMat nested_plain = commutator(commutator(ops.K * h, a), b_opp);
    bridge = std::max(bridge, rel_residual(nested_tw, ops.K * nested_plain));

    const CVec psi = random_vector(dim, rng);
    const CVec phi = random_vector(dim, rng);
    const cplx standard = psi.dot(h * phi);
    const cplx krein = k_product(ops.K, psi, pseudo.D * phi);
    pairing = std::max(pairing, std::abs(standard - krein) /
                                    std::max(1.0, std::abs(standard)));

    const CMat o = random_complex_matrix(dim, rng);
    const cplx lhs = k_product(ops.K, psi, o * phi);
    const cplx rhs = k_product(ops.K, CVec(k_adjoint(ops.K, o) * psi), phi);
    adjoint_move =
        std::max(adjoint_move, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  rep.add(residual_check("first-order bridge: twisted = K x plain (relative)", bridge,
                         kAlgebraicTol));
  rep.add(residual_check("Krein pairing <psi, D phi> = <psi, D^K phi>_K (relative)",
                         pairing, kAlgebraicTol));
  rep.add(residual_check("Krein adjoint moves across the pairing (relative)",
                         adjoint_move, kAlgebraicTol));

  // The bridge assertion inside check_first_order must hold as well.
  {
    const CMat a = random_complex_matrix(dim, rng);
    const CMat b = random_complex_matrix(dim, rng);
    const double nested = check_first_order(h, a, b, ops.J, ops.K, true);
    rep.add(boolean_check("check_first_order bridge assertion holds",
                          std::isfinite(nested)));
  }

  // Lattice block: split-function algebra at the Lorentzian (2, 1) point.
  if (opt.m == 2 && opt.n == 1 && opt.lattice_sites > 0) {
    const int N = opt.lattice_sites;
    const LatticeModel lat = build_lattice_dirac(basis, N, {1, 2});
    const StructuralSet ext = extend_structural(ops, lat.lattice_dim());
    const Eigen::Index sites = lat.lattice_dim();
    const double two_pi = 2.0 * std::numbers::pi;

    auto x0 = [N](Eigen::Index i) { return static_cast<double>(i / N); };
    auto x1 = [N](Eigen::Index i) { return static_cast<double>(i % N); };

    CVec f1(sites), f2(sites), b1(sites), b2(sites), r_site(sites), gen(sites);
    for (Eigen::Index i = 0; i < sites; ++i) {
      f1(i) = std::polar(1.0, two_pi * x0(i) / N);
      f2(i) = std::polar(1.0, 2.0 * two_pi * x1(i) / N);
      // Direction-separated pattern matching u: first component on the x0
      // axis, second on the x1 axis. The nested twisted commutator pairs
      // conj(b2) with the x0 derivative and conj(b1) with the x1 derivative,
      // so it vanishes exactly when the axes are kept separated this way.
      b1(i) = std::polar(1.0, 3.0 * two_pi * x0(i) / N);
      b2(i) = std::polar(1.0, -two_pi * x1(i) / N);
      r_site(i) = 1.0 + 0.5 * std::cos(two_pi * x0(i) / N);
      gen(i) = std::polar(1.0 + 0.4 * std::sin(two_pi * x1(i) / N),
                          0.3 * x0(i) + 1.1 * x1(i));
    }

    const CMat u = lat.split_multiplication(ops.Gamma, f1, f2);
    const CMat b = lat.split_multiplication(ops.Gamma, b1, b2);
    const CMat b_opp = ext.J.conjugate_op(b.adjoint());

    rep.add(residual_check("lattice split element is unitary",
                           (u * u.adjoint() - CMat::Identity(u.rows(), u.cols())).norm(),
                           kAlgebraicTol));
    rep.add(residual_check(
        "twist swaps split components",
        (twist_apply(ext.K, u) - lat.split_multiplication(ops.Gamma, f2, f1)).norm(),
        kAlgebraicTol));
    rep.add(residual_check(
        "J pi(f1,f2) J^-1 = pi(conj f2, conj f1)",
        (ext.J.conjugate_op(u) -
         lat.split_multiplication(ops.Gamma, f2.conjugate(), f1.conjugate()))
            .norm(),
        kAlgebraicTol));
    rep.add(residual_check("order zero: [a, b_opp] = 0 on the split algebra",
                           commutator(u, b_opp).norm(), kAlgebraicTol));
    rep.add(residual_check(
        "twisted first order vanishes on the split algebra",
        twisted_commutator(twisted_commutator(lat.D_lat, u, ext.K), b_opp, ext.K).norm(),
        kAlgebraicTol));

    // Plane-wave commutator norm against the shift-spectrum oracle.
    {
      const CVec wave = lattice_plane_wave(N, 2, 0, 1);
      const CMat comm = commutator(lat.D_lat, lat.multiplication(wave));
      Eigen::BDCSVD<CMat> svd(comm);
      const double measured = svd.singularValues()(0);
      const double oracle = lattice_comm_norm_oracle(N, lat.spacing, 1);
      rep.add(residual_check("plane-wave commutator norm matches the shift oracle",
                             std::abs(measured - oracle) / std::max(1.0, oracle),
                             1e-9));
    }

    // Type-1 fluctuation lands in the twisted one-form family.
    const TwistedRow trow = twisted_table_row(ops.table_row, ops.eps, ops.eps_prime);
    const CMat d1 = fluctuate_type1(lat.D_lat, u, ext.J, ext.K);
    const CMat one_form = type1_one_form(lat.D_lat, u, ext.K);
    rep.add(residual_check(
        "type-1 fluctuation lands in the twisted one-form family",
        (d1 - fluctuated_family(lat.D_lat, one_form, ext.J, trow.eps1)).norm(), 1e-9));
    rep.add(residual_check("type-1 preserves the Krein symmetry class",
                           (k_adjoint(ext.K, d1) + d1).norm(), kAlgebraicTol));

    // Type-2 fluctuation is trivial on the commutative split algebra.
    const CMat u_k = lat.split_multiplication(ops.Gamma, r_site, r_site.cwiseInverse());
    const CMat d2 = fluctuate_type2(lat.D_lat, u_k, ext.J, ext.K);
    rep.add(residual_check("type-2 fluctuation is trivial on the split algebra",
                           (d2 - lat.D_lat).norm(), kAlgebraicTol));

    // The pseudo-side bridge holds for an arbitrary split conjugator.
    const CMat u_k2 =
        lat.split_multiplication(ops.Gamma, gen, gen.conjugate().cwiseInverse());
    rep.add(residual_check(
        "type-2 pseudo-side bridge",
        type2_pseudo_bridge_residual(lat.D_lat, u_k2, ext.J, ext.K), 1e-9));
  }

  rep.wall_time_ms = watch.elapsed_ms();
  return rep;
}

// --- christoffel ---------------------------------------------------------------

Report run_christoffel(const ChristoffelOptions& opt) {
  Stopwatch watch;
  Report rep;
  rep.command = "christoffel";

  const MetricField g = metric_field_from_family(opt.family, opt.params);
  RVec x;
  if (opt.point.empty()) {
    x = default_probe_point(g.dim);
  } else {
    if (static_cast<int>(opt.point.size()) != g.dim)
      throw InvalidInput("christoffel: point dimension does not match the family");
    x = RVec(g.dim);
    for (int i = 0; i < g.dim; ++i) x(i) = opt.point[static_cast<size_t>(i)];
  }

  std::vector<double> point_list(x.data(), x.data() + x.size());
  rep.parameters = {{"family", json_string(opt.family)},
                    {"params", json_double_vector(opt.params)},
                    {"point", json_double_vector(point_list)},
                    {"h", json_number(opt.h)}};

  const ChristoffelData plain = christoffel(g, x, opt.h);
  double torsion = 0.0;
  for (int lam = 0; lam < g.dim; ++lam)
    torsion = std::max(
        torsion, (plain.symbols[static_cast<size_t>(lam)] -
                  plain.symbols[static_cast<size_t>(lam)].transpose())
                     .cwiseAbs()
                     .maxCoeff());
  rep.add(residual_check("christoffel symbols are torsion-free", torsion, kAlgebraicTol));

  const double relation = verify_christoffel_relation(g, x, opt.h);
  rep.add(residual_check("signature-change relation: reflected = riemannian + K-term",
                         relation, kFdTol));
  const double relation_half = verify_christoffel_relation(g, x, opt.h / 2.0);
  rep.add(boolean_check(
      "relation residual improves under halving or sits at the roundoff floor",
      relation_half <= std::max(relation / 3.5, kFdRoundoffFloor)));

  rep.add(residual_check("riemannian partner is metric-compatible",
                         metric_compat_residual(g, x, opt.h), kFdTol));

  // Genuine second-order probe: finite differences against the closed-form
  // conformally flat symbols.
  {
    RVec c(4);
    c << 0.1, 0.05, -0.07, 0.02;
    const MetricField conf = make_conformal_flat(c);
    const RVec x4 = default_probe_point(4);
    const Tensor3 exact = conformal_exact_christoffel(c, x4).symbols;
    const double err_h = tensor3_max_diff(christoffel(conf, x4, opt.h).symbols, exact);
    const double err_h2 =
        tensor3_max_diff(christoffel(conf, x4, opt.h / 2.0).symbols, exact);
    const double ratio = err_h / std::max(err_h2, 1e-300);
    rep.add(boolean_check("conformal FD error is second order (ratio in [3.5, 4.5])",
                          ratio >= 3.5 && ratio <= 4.5));
  }

  const CliffordBasis basis = build_basis({g.dim / 2, 1});
  const SpinConnectionDecomposition spin =
      spin_connection_decomposition(g, basis, x, opt.h);
  rep.add(residual_check("spin connection splits as riemannian + contorsion",
                         spin.residual, kFdTol));

  const StructuralSet ops = build_structural(basis);
  const auto [tw1, tw2] = twisted_clifford_check(basis, ops.K);
  rep.add(residual_check("twisted clifford relation (plain representation)", tw1,
                         kAlgebraicTol));
  rep.add(residual_check("twisted clifford relation (tilde frame)", tw2, kAlgebraicTol));
  rep.add(residual_check("twisted clifford s-matrix form",
                         twisted_clifford_smatrix_residual(basis, ops.K), kAlgebraicTol));

  std::vector<CMat> tilde;
  for (const CMat& gm : basis.gammas) tilde.push_back(ops.K * gm);
  const RMat gk = induced_metric_gK(tilde, ops.K);
  const RMat gref = metric_from_trace(basis.gammas);
  rep.add(residual_check("induced metric g_K reproduces the flat metric",
                         (gk - gref).cwiseAbs().maxCoeff(), kAlgebraicTol));

  rep.wall_time_ms = watch.elapsed_ms();
  return rep;
}

// --- product -------------------------------------------------------------------

Report run_product(const ProductOptions& opt) {
  Stopwatch watch;
  Report rep;
  rep.command = "product";
  rep.parameters = {{"mass", json_number(opt.mass)},
                    {"lattice", json_int(opt.lattice_sites)},
                    {"samples", json_int(opt.samples)},
                    {"seed", json_int(static_cast<long long>(opt.seed))}};

  const CliffordBasis basis = chiral_gammas_4d();
  const StructuralSet ops = build_structural(basis);
  const FiniteTriple finite = build_finite_triple_ko6(opt.mass);
  std::mt19937_64 rng(opt.seed);

  rep.add(boolean_check("finite triple measures (1,1,-1;-1) at construction",
                        finite.eps_row == EpsilonRow{1, 1, -1} && finite.eps3 == -1));

  // Finite first-order defect: nonzero, with the documented closed form.
  {
    double defect_residual = 0.0;
    for (int s = 0; s < opt.samples; ++s) {
      const CVec za = random_vector(2, rng);
      const CVec zb = random_vector(2, rng);
      const CMat a = finite_algebra_element(za(0), za(1));
      const CMat b = finite_algebra_element(zb(0), zb(1));
      defect_residual = std::max(
          defect_residual, (finite_first_order(finite, a, b) -
                            finite_first_order_closed_form(opt.mass, a, b))
                               .norm());
    }
    rep.add(residual_check("finite first-order defect matches its closed form",
                           defect_residual, kAlgebraicTol));
    const CMat a = finite_algebra_element(1.0, 2.0);
    const CMat b = finite_algebra_element(3.0, -1.0);
    rep.add(boolean_check("finite first-order defect is nonzero for generic elements",
                          finite_first_order(finite, a, b).norm() > 1e-6));
  }

  // Manifold side: symbol-level twisted Dirac, or the lattice Dirac.  The
  // extended operator set must outlive the side, which points into it.
  std::optional<StructuralSet> ext;
  LatticeModel lat;
  TripleSide manifold;
  if (opt.lattice_sites > 0) {
    lat = build_lattice_dirac(basis, opt.lattice_sites, {1, 2});
    ext.emplace(extend_structural(ops, lat.lattice_dim()));
    manifold = make_twisted_side(lat.D_lat, *ext);
  } else {
    const CMat d = build_symbol_dirac(basis, ops, {0.35, -0.2, 0.45, 0.15});
    manifold = make_twisted_side(d, ops);
  }
  const StructuralSet& mops = *manifold.structure;

  const ProductTriple prod = build_product(manifold, finite);
  rep.add(residual_check("product Dirac is self-adjoint",
                         (prod.D_p - prod.D_p.adjoint()).norm(), kAlgebraicTol));
  rep.add(boolean_check("measured product signs are (1, eps, 1)",
                        prod.measured == EpsilonRow{1, mops.eps, 1}));
  if (opt.lattice_sites > 0) {
    rep.add(boolean_check("lattice manifold: eps3 is reported unmeasured",
                          prod.eps3_p == 0));
  } else {
    rep.add(boolean_check("product twisted-grading sign eps3 = -epsPrime",
                          prod.eps3_p == -mops.eps_prime));
    const CMat rho_gamma = twist_apply(prod.K_p_twist, prod.Gamma_p);
    rep.add(residual_check(
        "product twisted grading relation D_p Gamma_p + rho(Gamma_p) D_p = 0",
        (prod.D_p * prod.Gamma_p + rho_gamma * prod.D_p).norm(), kAlgebraicTol));
  }

  // Derivation property and the evaluation pairing over seeded samples.
  const Eigen::Index mdim = manifold.D.rows();
  double derivation = 0.0, pairing = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    const CMat a1 = random_complex_matrix(mdim, rng);
    const CVec za = random_vector(2, rng);
    const CMat a2 = finite_algebra_element(za(0), za(1));
    const ProductDerivation der = product_derivation(prod, a1, a2);
    derivation = std::max(derivation, std::max(der.residual, der.factored_residual));

    const CVec psi1 = random_vector(mdim, rng);
    const CVec psi2 = random_vector(2, rng);
    const CVec phi1 = random_vector(mdim, rng);
    const CVec phi2 = random_vector(2, rng);
    const auto [lhs, rhs] = evaluate_pairing(prod, psi1, psi2, phi1, phi2);
    pairing =
        std::max(pairing, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  rep.add(residual_check("twisted derivation splits across the product", derivation,
                         kAlgebraicTol));
  rep.add(residual_check("Krein evaluation pairing factorizes (relative)", pairing,
                         kAlgebraicTol));

  // Gauge fluctuation: K-unitary split conjugator on the manifold, unitary on
  // the finite side.
  {
    CMat u_k;
    if (opt.lattice_sites > 0) {
      const Eigen::Index sites = lat.lattice_dim();
      CVec r_site(sites);
      for (Eigen::Index i = 0; i < sites; ++i)
        r_site(i) =
            1.0 + 0.5 * std::cos(2.0 * std::numbers::pi *
                                 static_cast<double>(i / opt.lattice_sites) /
                                 opt.lattice_sites);
      u_k = lat.split_multiplication(ops.Gamma, r_site, r_site.cwiseInverse());
    } else {
      const CMat p_plus = 0.5 * (CMat::Identity(4, 4) + ops.Gamma);
      const CMat p_minus = 0.5 * (CMat::Identity(4, 4) - ops.Gamma);
      u_k = 1.7 * p_plus + (1.0 / 1.7) * p_minus;
    }
    const CMat u = finite_algebra_element(std::polar(1.0, 0.3), std::polar(1.0, -0.8));
    const ProductFluctuation fl = product_fluctuation(prod, u_k, u);
    rep.add(residual_check("fluctuated product Dirac decomposes across the factors",
                           fl.decomposition_residual, kAlgebraicTol));
    rep.add(residual_check("finite Dirac term is invariant under the K-unitary",
                           fl.finite_term_invariance, kAlgebraicTol));
  }

  // Constraint solver: the admissible O operators form the monomial family
  // {+-gamma^0, +-gamma^1 gamma^2 gamma^3}, and K is among them.
  if (opt.lattice_sites == 0) {
    const std::vector<OCandidate> cands = clifford_monomial_candidates(basis.gammas);
    const std::vector<OCandidate> survivors = solve_O_constraints(
        manifold.D, ops.J, ops.Gamma, ops.eps, ops.eps_prime, cands, &ops.K);
    const CMat odd3 = basis.gammas[1] * basis.gammas[2] * basis.gammas[3];
    bool family_ok = survivors.size() == 4;
    for (const OCandidate& o : survivors) {
      const bool is_axis = (o.matrix - basis.gammas[0]).norm() <= kAlgebraicTol ||
                           (o.matrix + basis.gammas[0]).norm() <= kAlgebraicTol;
      const bool is_triple = (o.matrix - odd3).norm() <= kAlgebraicTol ||
                             (o.matrix + odd3).norm() <= kAlgebraicTol;
      family_ok = family_ok && (is_axis || is_triple);
    }
    rep.add(boolean_check(
        "O-constraint survivors are {+-gamma^0, +-gamma^1 gamma^2 gamma^3}", family_ok));

    // Cross-module consistency: every survivor appears among the
    // fundamental-symmetry solutions of the brute-force classifier.
    const CliffordBasis euclid = build_basis({2, 4});
    const SignatureReport minus = solve_signatures(euclid, -1);
    const SignatureReport plus = solve_signatures(euclid, +1);
    bool cross = true;
    for (const OCandidate& o : survivors) {
      bool found = false;
      for (const SignatureReport* r : {&minus, &plus})
        for (const SignatureSolution& sol : r->solutions)
          if ((o.matrix - sol.candidate.matrix).norm() <= kAlgebraicTol) found = true;
      cross = cross && found;
    }
    rep.add(boolean_check(
        "every O survivor is a classified fundamental symmetry", cross));
  }

  rep.wall_time_ms = watch.elapsed_ms();
  return rep;
}

// --- sigsolve ------------------------------------------------------------------

Report run_sigsolve(const SigsolveOptions& opt) {
  Stopwatch watch;
  Report rep;
  rep.command = "sigsolve";
  rep.parameters = {{"eps", json_int(opt.eps)}};

  const CliffordBasis euclid = build_basis({2, 4});
  rep.add(boolean_check("enumeration yields 64 candidates",
                        enumerate_candidates(euclid).size() == 64));

  const SignatureReport report = solve_signatures(euclid, opt.eps);
  rep.add(boolean_check("exactly 8 solutions", report.solutions.size() == 8));

  const size_t want_size = (opt.eps == -1) ? 1 : 3;
  bool sizes_ok = true, odd_ok = true;
  for (const SignatureSolution& sol : report.solutions) {
    sizes_ok = sizes_ok && sol.candidate.subset.size() == want_size;
    odd_ok = odd_ok && (sol.candidate.subset.size() % 2 == 1);
  }
  rep.add(boolean_check(opt.eps == -1
                            ? "solutions are the singletons {+-gt^(a)}"
                            : "solutions are the triples {+-i gt^a gt^b gt^c}",
                        sizes_ok));
  rep.add(boolean_check("no survivor has even subset size", odd_ok));
  rep.add(boolean_check("uniqueness of time: every solution has " +
                            std::to_string(opt.eps == -1 ? 1 : 3) +
                            " time direction(s)",
                        uniqueness_of_time(report)));

  // Independent dense-nullspace engine.
  const CMat gamma = build_grading(euclid);
  const ChargeConjugation cc = build_charge_conjugation(euclid);
  const std::vector<DenseSolution> dense =
      dense_nullspace_solutions(euclid, gamma, cc.J, opt.eps);
  rep.add(residual_check("dense-nullspace oracle agrees solution-for-solution",
                         dense_agreement_residual(dense, report.solutions), 1e-8));

  // Cross-module consistency: the product-side O-constraint filter applied to
  // the same monomial candidates returns exactly the classified solutions.
  {
    std::vector<OCandidate> as_o;
    for (const KCandidate& k : enumerate_candidates(euclid))
      as_o.push_back({k.subset, k.phase, k.matrix});
    const std::vector<OCandidate> survivors =
        solve_O_constraints(CMat::Zero(4, 4), cc.J, gamma, opt.eps, -1, as_o);
    bool same = survivors.size() == report.solutions.size();
    for (const OCandidate& o : survivors) {
      bool found = false;
      for (const SignatureSolution& sol : report.solutions)
        if ((o.matrix - sol.candidate.matrix).norm() <= kAlgebraicTol) found = true;
      same = same && found;
    }
    rep.add(boolean_check("product O-constraint filter finds the same survivors", same));
  }

  if (opt.eps == -1) {
    const CliffordBasis lorentz = chiral_gammas_4d();
    const StructuralSet ops = build_structural(lorentz);
    bool found = false;
    for (const SignatureSolution& sol : report.solutions)
      if ((ops.K - sol.candidate.matrix).norm() <= kAlgebraicTol) found = true;
    rep.add(boolean_check("Lorentzian build output K = gamma^(0) is a solution", found));
  }

  // Solution table for the consumer.
  std::string table = "[";
  for (size_t i = 0; i < report.solutions.size(); ++i) {
    const SignatureSolution& sol = report.solutions[i];
    if (i) table += ",";
    table += "{\"subset\": " + json_int_vector(sol.candidate.subset) +
             ", \"phase\": " + json_complex(sol.candidate.phase) +
             ", \"s\": " + json_int_vector(sol.s) +
             ", \"time_directions\": " + json_int(sol.time_directions) + "}";
  }
  table += "]";
  rep.extras.push_back({"solutions", table});

  rep.wall_time_ms = watch.elapsed_ms();
  return rep;
}

}  // namespace spectriple
