// Command-line front end: runs the verification suites and emits either an
// aligned text table or deterministic JSON.
//
// Exit codes: 0 every check passed, 1 at least one check failed (or a
// verification invariant threw), 2 usage error (bad flag, bad range, bad
// family, unusable lattice size).
//
// Seed resolution: --seed flag, else the SPECTRIPLE_SEED environment
// variable, else 12345.  Two runs with equal flags and seed produce
// byte-identical JSON.

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "spectriple/commands.hpp"
#include "spectriple/core.hpp"

namespace {

std::uint64_t resolve_seed(bool seed_given, std::uint64_t flag_value) {
  if (seed_given) return flag_value;
  if (const char* env = std::getenv("SPECTRIPLE_SEED")) {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return parsed;
    std::cerr << "spectriple: SPECTRIPLE_SEED is not an integer: " << env << "\n";
    std::exit(2);
  }
  return spectriple::kDefaultSeed;
}

int emit(const spectriple::Report& rep, bool json, const std::string& out_path) {
  const std::string rendered = json ? to_json(rep) : to_text(rep);
  if (out_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "spectriple: cannot open " << out_path << " for writing\n";
      return 2;
    }
    out << rendered;
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spectriple: machine checks for twisted spectral triples, fundamental "
      "symmetries, and the emergent-signature classification"};
  app.require_subcommand(1);

  bool json = false;
  std::string out_path;
  std::uint64_t seed_flag = spectriple::kDefaultSeed;
  app.add_flag("--json", json, "emit machine-readable JSON instead of text");
  app.add_option("--out", out_path, "write the report to this file instead of stdout");
  CLI::Option* seed_opt =
      app.add_option("--seed", seed_flag, "seed for sampled checks (default 12345)");

  spectriple::GammaOptions gamma_opt;
  CLI::App* gamma = app.add_subcommand(
      "gamma", "Clifford basis and structural operators at one (m, n)");
  gamma->add_option("--m", gamma_opt.m, "half-dimension, 1..4")
      ->check(CLI::Range(1, 4));
  gamma->add_option("--n", gamma_opt.n, "number of +1 metric directions, 0..2m")
      ->check(CLI::Range(0, 8));
  gamma->add_flag("--dump", gamma_opt.dump, "dump the operator matrices");

  CLI::App* ko_table =
      app.add_subcommand("ko-table", "sign table and its twisted extension");

  spectriple::MorphismOptions morphism_opt;
  CLI::App* morphism = app.add_subcommand(
      "morphism", "twisted <-> pseudo-Riemannian morphism and Krein calculus");
  morphism->add_option("--m", morphism_opt.m, "half-dimension, 1..4")
      ->check(CLI::Range(1, 4));
  morphism->add_option("--n", morphism_opt.n, "number of +1 metric directions")
      ->check(CLI::Range(0, 8));
  morphism->add_option("--samples", morphism_opt.samples, "random samples per check")
      ->check(CLI::Range(1, 10000));
  morphism->add_option("--lattice", morphism_opt.lattice_sites,
                       "lattice sites per direction for the split-algebra block "
                       "(even, >= 4; 0 disables)");

  spectriple::ChristoffelOptions christoffel_opt;
  CLI::App* christoffel = app.add_subcommand(
      "christoffel", "signature-change relation on Christoffel symbols");
  // --h (the finite-difference step) collides with the default -h short help
  // flag, so help is long-only on this subcommand.
  christoffel->set_help_flag("--help", "print this help message and exit");
  christoffel->add_option("--family", christoffel_opt.family,
                          "metric family: flat | warped-diag | conformal-flat | "
                          "2d-oracle");
  christoffel->add_option("--params", christoffel_opt.params,
                          "family parameters, comma separated")
      ->delimiter(',');
  christoffel->add_option("--point", christoffel_opt.point,
                          "evaluation point, comma separated")
      ->delimiter(',');
  christoffel->add_option("--h", christoffel_opt.h, "finite-difference step")
      ->check(CLI::PositiveNumber);

  spectriple::ProductOptions product_opt;
  CLI::App* product = app.add_subcommand(
      "product", "almost-commutative product triple and its propositions");
  product->add_option("--mass", product_opt.mass, "finite-triple mass (nonzero)");
  product->add_option("--lattice", product_opt.lattice_sites,
                      "manifold side on an N-site lattice instead of the symbol "
                      "Dirac (even, >= 4; 0 = symbol level)");
  product->add_option("--samples", product_opt.samples, "random samples per check")
      ->check(CLI::Range(1, 10000));

  spectriple::SigsolveOptions sigsolve_opt;
  CLI::App* sigsolve = app.add_subcommand(
      "sigsolve", "brute-force fundamental-symmetry classification in 4D");
  sigsolve->add_option("--eps", sigsolve_opt.eps, "sign in K o J = eps J o K")
      ->check(CLI::IsMember({-1, 1}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::uint64_t seed = resolve_seed(seed_opt->count() > 0, seed_flag);
  gamma_opt.seed = seed;
  morphism_opt.seed = seed;
  product_opt.seed = seed;

  if (gamma_opt.n > 2 * gamma_opt.m || morphism_opt.n > 2 * morphism_opt.m) {
    std::cerr << "spectriple: --n must satisfy 0 <= n <= 2m\n";
    return 2;
  }

  try {
    spectriple::Report rep;
    if (gamma->parsed()) {
      rep = spectriple::run_gamma(gamma_opt);
    } else if (ko_table->parsed()) {
      rep = spectriple::run_ko_table();
    } else if (morphism->parsed()) {
      rep = spectriple::run_morphism(morphism_opt);
    } else if (christoffel->parsed()) {
      rep = spectriple::run_christoffel(christoffel_opt);
    } else if (product->parsed()) {
      rep = spectriple::run_product(product_opt);
    } else {
      rep = spectriple::run_sigsolve(sigsolve_opt);
    }
    return emit(rep, json, out_path);
  } catch (const spectriple::InvalidInput& e) {
    std::cerr << "spectriple: " << e.what() << "\n";
    return 2;
  } catch (const spectriple::UnsupportedDimension& e) {
    std::cerr << "spectriple: " << e.what() << "\n";
    return 2;
  } catch (const spectriple::UnsupportedLattice& e) {
    std::cerr << "spectriple: " << e.what() << "\n";
    return 2;
  } catch (const spectriple::UnsupportedMetric& e) {
    std::cerr << "spectriple: " << e.what() << "\n";
    return 2;
  } catch (const spectriple::InvalidBasis& e) {
    std::cerr << "spectriple: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "spectriple: verification failure: " << e.what() << "\n";
    return 1;
  }
}
