#include "spectriple/geometry.hpp"

#include "spectriple/structural.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>

namespace spectriple {

namespace {

RMat reflection_matrix(const MetricField& g) {
  if (g.reflection.size() != g.dim)
    throw InvalidInput("MetricField: reflection diagonal size != dim");
  for (int a = 0; a < g.dim; ++a)
    if (g.reflection(a) != 1.0 && g.reflection(a) != -1.0)
      throw InvalidInput("MetricField: reflection entries must be +-1");
  return RMat(g.reflection.asDiagonal());
}

// Riemannian partner field gR = g r sharing g's evaluation machinery.
MetricField riemannian_partner(const MetricField& g) {
  const RMat r = reflection_matrix(g);
  MetricField gR;
  gR.dim = g.dim;
  gR.reflection = RVec::Ones(g.dim);
  gR.name = g.name + "-riemannian";
  gR.eval = [inner = g.eval, r](const RVec& x) { return RMat(inner(x) * r); };
  return gR;
}

RMat inverse_at(const RMat& g, const char* who) {
  Eigen::FullPivLU<RMat> lu(g);
  if (!lu.isInvertible())
    throw SingularMetric(std::string(who) + ": metric not invertible at sample point");
  return lu.inverse();
}

void require_point(const MetricField& g, const RVec& x, const char* who) {
  if (g.dim < 1 || !g.eval) throw InvalidInput(std::string(who) + ": metric field is empty");
  if (x.size() != g.dim)
    throw DimensionError(std::string(who) + ": point dimension != metric dimension");
}

Tensor3 zero_tensor(int d) { return Tensor3(static_cast<size_t>(d), RMat::Zero(d, d)); }

// Raw Christoffel kernel: symbols from an inverse metric and a derivative
// stack, with optional reflected decorations (r = nullptr means plain).
Tensor3 christoffel_from(const RMat& gi, const Tensor3& d, const RVec* r) {
  const int dim = static_cast<int>(gi.rows());
  Tensor3 sym = zero_tensor(dim);
  for (int l = 0; l < dim; ++l)
    for (int mu = 0; mu < dim; ++mu)
      for (int nu = 0; nu < dim; ++nu) {
        double acc = 0.0;
        for (int k = 0; k < dim; ++k) {
          double term = d[static_cast<size_t>(mu)](nu, k) + d[static_cast<size_t>(nu)](mu, k) -
                        d[static_cast<size_t>(k)](mu, nu);
          if (r != nullptr) term *= (*r)(nu);
          acc += 0.5 * gi(l, k) * term;
        }
        if (r != nullptr) acc *= (*r)(l);
        sym[static_cast<size_t>(l)](mu, nu) = acc;
      }
  return sym;
}

void check_torsion_free(const Tensor3& sym, const char* who) {
  for (const RMat& s : sym)
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-6)
      throw InconsistentStructure(std::string(who) + ": symbols are not symmetric in mu nu");
}

}  // namespace

double tensor3_max_abs(const Tensor3& t) {
  double worst = 0.0;
  for (const RMat& m : t) worst = std::max(worst, m.cwiseAbs().maxCoeff());
  return worst;
}

double tensor3_max_diff(const Tensor3& a, const Tensor3& b) {
  if (a.size() != b.size()) throw DimensionError("tensor3_max_diff: rank mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return worst;
}

// --- metric families -------------------------------------------------------------

MetricField make_flat_lorentzian() {
  MetricField g;
  g.dim = 4;
  g.reflection = (RVec(4) << 1, -1, -1, -1).finished();
  g.name = "flat";
  g.eval = [](const RVec&) {
    return RMat((RVec(4) << 1, -1, -1, -1).finished().asDiagonal());
  };
  return g;
}

MetricField make_warped_diagonal(double c1, double c2) {
  MetricField g;
  g.dim = 4;
  g.reflection = (RVec(4) << 1, -1, -1, -1).finished();
  g.name = "warped-diag";
  g.eval = [c1, c2](const RVec& x) {
    RVec d(4);
    const double w1 = 1.0 + c1 * x(0);
    const double w2 = 1.0 + c2 * x(1);
    d << 1.0, -w1 * w1, -w2 * w2, -1.0;
    return RMat(d.asDiagonal());
  };
  return g;
}

MetricField make_conformal_flat(const RVec& c) {
  if (c.size() != 4) throw InvalidInput("make_conformal_flat: need 4 coefficients");
  MetricField g;
  g.dim = 4;
  g.reflection = (RVec(4) << 1, -1, -1, -1).finished();
  g.name = "conformal-flat";
  const RVec coeff = c;
  g.eval = [coeff](const RVec& x) {
    const double scale = std::exp(2.0 * coeff.dot(x));
    RVec d(4);
    d << scale, -scale, -scale, -scale;
    return RMat(d.asDiagonal());
  };
  return g;
}

MetricField make_2d_oracle() {
  MetricField g;
  g.dim = 2;
  g.reflection = (RVec(2) << 1, -1).finished();
  g.name = "2d-oracle";
  g.eval = [](const RVec& x) {
    const double f = 1.0 + 0.1 * x(0);
    RVec d(2);
    d << 1.0, -f * f;
    return RMat(d.asDiagonal());
  };
  return g;
}

MetricField metric_field_from_family(const std::string& family,
                                     const std::vector<double>& params) {
  if (family == "flat") {
    if (!params.empty()) throw InvalidInput("flat family takes no parameters");
    return make_flat_lorentzian();
  }
  if (family == "warped-diag") {
    if (params.empty()) return make_warped_diagonal(0.1, 0.05);
    if (params.size() != 2) throw InvalidInput("warped-diag family takes 2 parameters");
    return make_warped_diagonal(params[0], params[1]);
  }
  if (family == "conformal-flat") {
    RVec c(4);
    if (params.empty())
      c << 0.1, 0.05, -0.07, 0.02;
    else if (params.size() == 4)
      for (int i = 0; i < 4; ++i) c(i) = params[static_cast<size_t>(i)];
    else
      throw InvalidInput("conformal-flat family takes 4 parameters");
    return make_conformal_flat(c);
  }
  if (family == "2d-oracle") {
    if (!params.empty()) throw InvalidInput("2d-oracle family takes no parameters");
    return make_2d_oracle();
  }
  throw InvalidInput("unknown metric family: " + family);
}

RMat eval_metric(const MetricField& g, const RVec& x) {
  require_point(g, x, "eval_metric");
  RMat m = g.eval(x);
  if (m.rows() != g.dim || m.cols() != g.dim)
    throw InvalidInput("eval_metric: evaluation has wrong shape");
  if (!m.allFinite()) throw InvalidInput("eval_metric: non-finite metric entries");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, m.norm()))
    throw InvalidInput("eval_metric: metric not symmetric");
  return m;
}

Tensor3 metric_derivatives(const MetricField& g, const RVec& x, double h) {
  require_point(g, x, "metric_derivatives");
  if (h <= 0.0) throw InvalidInput("metric_derivatives: step must be positive");
  Tensor3 d(static_cast<size_t>(g.dim));
  for (int nu = 0; nu < g.dim; ++nu) {
    RVec xp = x, xm = x;
    xp(nu) += h;
    xm(nu) -= h;
    d[static_cast<size_t>(nu)] = (eval_metric(g, xp) - eval_metric(g, xm)) / (2.0 * h);
  }
  return d;
}

// --- Christoffel symbols ----------------------------------------------------------

ChristoffelData christoffel(const MetricField& g, const RVec& x, double h) {
  require_point(g, x, "christoffel");
  const RMat gi = inverse_at(eval_metric(g, x), "christoffel");
  const Tensor3 d = metric_derivatives(g, x, h);
  ChristoffelData out{x, christoffel_from(gi, d, nullptr), ChristoffelVariant::Plain};
  check_torsion_free(out.symbols, "christoffel");
  return out;
}

ChristoffelData riemannian_christoffel(const MetricField& g, const RVec& x, double h) {
  ChristoffelData out = christoffel(riemannian_partner(g), x, h);
  out.variant = ChristoffelVariant::Riemannian;
  return out;
}

ChristoffelData reflected_christoffel(const MetricField& g, const RVec& x, double h) {
  require_point(g, x, "reflected_christoffel");
  reflection_matrix(g);  // validates r
  const RMat gi = inverse_at(eval_metric(g, x), "reflected_christoffel");
  const Tensor3 d = metric_derivatives(g, x, h);
  const RVec r = g.reflection;
  return ChristoffelData{x, christoffel_from(gi, d, &r), ChristoffelVariant::Reflected};
}

double metric_compat_residual(const MetricField& g, const RVec& x, double h) {
  const RMat gm = eval_metric(g, x);
  const Tensor3 d = metric_derivatives(g, x, h);
  const Tensor3 sym = christoffel(g, x, h).symbols;
  const int dim = g.dim;
  double worst = 0.0;
  for (int nu = 0; nu < dim; ++nu)
    for (int mu = 0; mu < dim; ++mu)
      for (int k = 0; k < dim; ++k) {
        double acc = d[static_cast<size_t>(nu)](mu, k);
        for (int l = 0; l < dim; ++l)
          acc -= gm(l, k) * sym[static_cast<size_t>(l)](mu, nu) +
                 gm(mu, l) * sym[static_cast<size_t>(l)](k, nu);
        worst = std::max(worst, std::abs(acc));
      }
  return worst;
}

double verify_christoffel_relation(const MetricField& g, const RVec& x, double h) {
  require_point(g, x, "verify_christoffel_relation");
  const MetricField gR = riemannian_partner(g);
  const RMat gR_at = eval_metric(gR, x);
  {
    Eigen::LLT<RMat> llt(gR_at);
    if (llt.info() != Eigen::Success)
      throw UnsupportedMetric(
          "verify_christoffel_relation: reflection is not spacelike at sample point");
  }
  const Tensor3 refl = reflected_christoffel(g, x, h).symbols;
  const Tensor3 riem = riemannian_christoffel(g, x, h).symbols;
  const RMat gRi = inverse_at(gR_at, "verify_christoffel_relation");
  const Tensor3 dgm = metric_derivatives(g, x, h);
  const Tensor3 dgR = metric_derivatives(gR, x, h);
  const RVec& r = g.reflection;
  const int dim = g.dim;
  double worst = 0.0;
  for (int l = 0; l < dim; ++l)
    for (int mu = 0; mu < dim; ++mu)
      for (int nu = 0; nu < dim; ++nu) {
        double corr = 0.0;
        for (int k = 0; k < dim; ++k)
          corr += 0.5 * gRi(l, k) *
                  (r(nu) * dgm[static_cast<size_t>(nu)](mu, k) -
                   dgR[static_cast<size_t>(nu)](mu, k));
        const double res = refl[static_cast<size_t>(l)](mu, nu) -
                           riem[static_cast<size_t>(l)](mu, nu) - corr;
        worst = std::max(worst, std::abs(res));
      }
  return worst;
}

// --- spin-connection decomposition ------------------------------------------------

namespace {

// Diagonal vielbein stack: E(y) = diag(sqrt|g_aa(y)|) (co-frame e^b_nu) and
// its inverse (frame e_a^nu); SingularMetric on vanishing diagonal.
RVec diagonal_of_checked(const MetricField& g, const RVec& y) {
  const RMat m = eval_metric(g, y);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      if (i != j && std::abs(m(i, j)) > 1e-10)
        throw UnsupportedMetric("spin_connection_decomposition: metric must be diagonal");
  RVec d = m.diagonal();
  for (int i = 0; i < g.dim; ++i)
    if (std::abs(d(i)) < 1e-12)
      throw SingularMetric("spin_connection_decomposition: vanishing metric diagonal");
  return d;
}

RMat coframe_at(const MetricField& g, const RVec& y) {
  const RVec d = diagonal_of_checked(g, y);
  return RMat(d.cwiseAbs().cwiseSqrt().asDiagonal());
}

// Mixed symbols Gamma^b_{mu a} = e_a^nu Gamma^l_{mu nu} e^b_l - e_a^nu d_mu e^b_nu
// from the field's own (diagonal) vielbeins; returned as out[b](mu, a).
Tensor3 mixed_symbols(const MetricField& g, const RVec& x, double h) {
  const int dim = g.dim;
  const Tensor3 sym = christoffel(g, x, h).symbols;
  const RMat e = coframe_at(g, x);
  const RMat ei = RMat(e.diagonal().cwiseInverse().asDiagonal());
  Tensor3 de(static_cast<size_t>(dim));
  for (int mu = 0; mu < dim; ++mu) {
    RVec xp = x, xm = x;
    xp(mu) += h;
    xm(mu) -= h;
    de[static_cast<size_t>(mu)] = (coframe_at(g, xp) - coframe_at(g, xm)) / (2.0 * h);
  }
  Tensor3 out = zero_tensor(dim);
  for (int b = 0; b < dim; ++b)
    for (int mu = 0; mu < dim; ++mu)
      for (int a = 0; a < dim; ++a) {
        double s1 = 0.0;
        for (int nu = 0; nu < dim; ++nu)
          for (int l = 0; l < dim; ++l)
            s1 += ei(a, nu) * sym[static_cast<size_t>(l)](mu, nu) * e(b, l);
        double s2 = 0.0;
        for (int nu = 0; nu < dim; ++nu) s2 += ei(a, nu) * de[static_cast<size_t>(mu)](b, nu);
        out[static_cast<size_t>(b)](mu, a) = s1 - s2;
      }
  return out;
}

}  // namespace

SpinConnectionDecomposition spin_connection_decomposition(const MetricField& g,
                                                          const CliffordBasis& basis,
                                                          const RVec& x, double h) {
  require_point(g, x, "spin_connection_decomposition");
  if (basis.sig.space_dim() != g.dim)
    throw DimensionError("spin_connection_decomposition: basis dimension != metric dimension");
  const RVec diag = diagonal_of_checked(g, x);
  RVec gsign(g.dim);
  for (int a = 0; a < g.dim; ++a) {
    gsign(a) = diag(a) > 0.0 ? 1.0 : -1.0;
    if (gsign(a) != basis.metric_sign(a))
      throw InconsistentStructure(
          "spin_connection_decomposition: metric sign pattern disagrees with basis signature");
    if (gsign(a) != g.reflection(a))
      throw UnsupportedMetric(
          "spin_connection_decomposition: reflection does not match the metric signs");
  }

  const MetricField gR = riemannian_partner(g);
  const int dim = g.dim;

  SpinConnectionDecomposition out;
  // GammaTilde^b_{mu a} = g_a g_b Gamma^b_{mu a} built from g itself.
  out.gamma_tilde = mixed_symbols(g, x, h);
  for (int b = 0; b < dim; ++b)
    for (int mu = 0; mu < dim; ++mu)
      for (int a = 0; a < dim; ++a)
        out.gamma_tilde[static_cast<size_t>(b)](mu, a) *= gsign(a) * gsign(b);
  out.gamma_R = mixed_symbols(gR, x, h);

  // K^b_{mu a} = g_b 1/2 g^{bk} ( d_{ra} g_{mu k} - d_a gR_{mu k} ), with the
  // frame derivative d_a = e_a^nu d_nu and d_{ra} = g_a d_a (constant frame
  // signs, so the d_mu g_a term of the general formula vanishes).
  const RMat gi = inverse_at(eval_metric(g, x), "spin_connection_decomposition");
  const RMat e = coframe_at(g, x);
  const RMat ei = RMat(e.diagonal().cwiseInverse().asDiagonal());
  const Tensor3 dgm = metric_derivatives(g, x, h);
  const Tensor3 dgR = metric_derivatives(gR, x, h);
  out.k_term = zero_tensor(dim);
  for (int b = 0; b < dim; ++b)
    for (int mu = 0; mu < dim; ++mu)
      for (int a = 0; a < dim; ++a) {
        double acc = 0.0;
        for (int k = 0; k < dim; ++k) {
          double gbk = 0.0;
          for (int l = 0; l < dim; ++l) gbk += gi(l, k) * e(b, l);
          double da_g = 0.0, da_gR = 0.0;
          for (int nu = 0; nu < dim; ++nu) {
            da_g += ei(a, nu) * dgm[static_cast<size_t>(nu)](mu, k);
            da_gR += ei(a, nu) * dgR[static_cast<size_t>(nu)](mu, k);
          }
          acc += 0.5 * gbk * (gsign(a) * da_g - da_gR);
        }
        out.k_term[static_cast<size_t>(b)](mu, a) = gsign(b) * acc;
      }

  Tensor3 delta = out.gamma_tilde;
  for (size_t b = 0; b < delta.size(); ++b) delta[b] -= out.gamma_R[b] + out.k_term[b];
  out.residual = tensor3_max_abs(delta);
  out.k_term_max = tensor3_max_abs(out.k_term);
  return out;
}

ChristoffelData conformal_exact_christoffel(const RVec& c, const RVec& x) {
  if (c.size() != 4 || x.size() != 4)
    throw DimensionError("conformal_exact_christoffel: four-dimensional family");
  RVec eta(4);
  eta << 1, -1, -1, -1;
  Tensor3 sym = zero_tensor(4);
  for (int l = 0; l < 4; ++l)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        double v = 0.0;
        if (l == mu) v += c(nu);
        if (l == nu) v += c(mu);
        if (mu == nu) v -= eta(mu) * eta(l) * c(l);
        sym[static_cast<size_t>(l)](mu, nu) = v;
      }
  return ChristoffelData{x, std::move(sym), ChristoffelVariant::Plain};
}

// --- trace metrics and twisted Clifford relations -----------------------------------

RMat metric_from_trace(const std::vector<CMat>& gammas) {
  if (gammas.empty()) throw InvalidInput("metric_from_trace: empty basis");
  const Eigen::Index d = gammas.front().rows();
  const int dim = static_cast<int>(gammas.size());
  RMat g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    require_square(gammas[static_cast<size_t>(i)], "metric_from_trace");
    if (gammas[static_cast<size_t>(i)].rows() != d)
      throw DimensionError("metric_from_trace: mismatched gamma dimensions");
    for (int j = 0; j < dim; ++j) {
      const cplx tr =
          (gammas[static_cast<size_t>(i)] * gammas[static_cast<size_t>(j)]).trace() /
          static_cast<double>(d);
      if (std::abs(tr.imag()) > 1e-10)
        throw InconsistentStructure("metric_from_trace: trace has an imaginary part");
      g(i, j) = tr.real();
    }
  }
  return g;
}

std::pair<double, double> twisted_clifford_check(const CliffordBasis& basis, const CMat& K) {
  const int d2m = basis.sig.space_dim();
  const Eigen::Index d = basis.sig.spinor_dim();
  require_square(K, "twisted_clifford_check");
  if (K.rows() != d) throw DimensionError("twisted_clifford_check: K has wrong dimension");
  const CMat id = CMat::Identity(d, d);
  // gR on the orthonormal frame is the identity.
  double res1 = 0.0, res2 = 0.0;
  std::vector<CMat> tilde(static_cast<size_t>(d2m));
  for (int a = 0; a < d2m; ++a) tilde[static_cast<size_t>(a)] = K * basis.gammas[a];
  for (int a = 0; a < d2m; ++a)
    for (int b = 0; b < d2m; ++b) {
      const double gr = (a == b) ? 1.0 : 0.0;
      const CMat rc = twist_apply(K, basis.gammas[b]);
      res1 = std::max(res1,
                      (basis.gammas[a] * rc + rc * basis.gammas[a] - 2.0 * gr * id).norm());
      const CMat prod = tilde[static_cast<size_t>(b)] * tilde[static_cast<size_t>(a)];
      res2 = std::max(
          res2, (tilde[static_cast<size_t>(a)] * tilde[static_cast<size_t>(b)] +
                 twist_apply(K, prod) - 2.0 * gr * id)
                    .norm());
    }
  return {res1, res2};
}

double twisted_clifford_smatrix_residual(const CliffordBasis& basis, const CMat& K) {
  const int d2m = basis.sig.space_dim();
  const Eigen::Index d = basis.sig.spinor_dim();
  const CMat id = CMat::Identity(d, d);
  std::vector<CMat> tilde(static_cast<size_t>(d2m));
  for (int a = 0; a < d2m; ++a) tilde[static_cast<size_t>(a)] = K * basis.gammas[a];
  double worst = 0.0;
  for (int a = 0; a < d2m; ++a)
    for (int b = 0; b < d2m; ++b) {
      const double gr = (a == b) ? 1.0 : 0.0;
      const double s_ab = basis.metric_sign(a) * basis.metric_sign(b);
      worst = std::max(worst, (tilde[static_cast<size_t>(a)] * tilde[static_cast<size_t>(b)] +
                               s_ab * tilde[static_cast<size_t>(b)] * tilde[static_cast<size_t>(a)] -
                               2.0 * gr * id)
                                  .norm());
    }
  return worst;
}

RMat induced_metric_gK(const std::vector<CMat>& gammas_tilde, const CMat& K) {
  if (gammas_tilde.empty()) throw InvalidInput("induced_metric_gK: empty basis");
  require_square(K, "induced_metric_gK");
  for (const CMat& gt : gammas_tilde) {
    require_square(gt, "induced_metric_gK");
    if (gt.rows() != K.rows()) throw DimensionError("induced_metric_gK: dim mismatch");
    if ((gt - gt.adjoint()).norm() > kAlgebraicTol * std::max(1.0, gt.norm()))
      throw InvalidInput("induced_metric_gK: tilde gammas must be self-adjoint");
  }
  std::vector<CMat> gk(gammas_tilde.size());
  for (size_t a = 0; a < gammas_tilde.size(); ++a) gk[a] = K * gammas_tilde[a];
  const RMat g_K = metric_from_trace(gk);
  const RMat gR = metric_from_trace(gammas_tilde);
  // Sign readout rho(gammaT^a) = s(a) gammaT^a; then g_K^{ab} = s(a) gR^{ab}.
  const int dim = static_cast<int>(gammas_tilde.size());
  for (int a = 0; a < dim; ++a) {
    const int s = commutation_sign(twist_apply(K, gammas_tilde[static_cast<size_t>(a)]),
                                   gammas_tilde[static_cast<size_t>(a)]);
    for (int b = 0; b < dim; ++b)
      if (std::abs(g_K(a, b) - s * gR(a, b)) > 1e-9)
        throw InconsistentStructure("induced_metric_gK: g_K != s(a) gR row-wise");
  }
  return g_K;
}

}  // namespace spectriple
