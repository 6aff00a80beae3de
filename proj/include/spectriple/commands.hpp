#ifndef SPECTRIPLE_COMMANDS_HPP
#define SPECTRIPLE_COMMANDS_HPP

// The verification suites behind the CLI subcommands.  Each run_* builds the
// requested objects, measures every identity of its module family, and
// returns a Report; nothing here prints or exits.  All randomness is drawn
// from the seed recorded in the options struct, so equal options produce
// byte-identical JSON reports.

#include <cstdint>
#include <string>
#include <vector>

#include "spectriple/report.hpp"

namespace spectriple {

inline constexpr std::uint64_t kDefaultSeed = 12345;

struct GammaOptions {
  int m = 2;
  int n = 1;
  bool dump = false;
  std::uint64_t seed = kDefaultSeed;
};

struct MorphismOptions {
  int m = 2;
  int n = 1;
  int samples = 25;
  int lattice_sites = 8;  // 0 disables the lattice block (runs at (m,n)=(2,1))
  std::uint64_t seed = kDefaultSeed;
};

struct ChristoffelOptions {
  std::string family = "warped-diag";
  std::vector<double> params;  // empty -> family defaults
  std::vector<double> point;   // empty -> canonical probe point
  double h = 1e-3;
};

struct ProductOptions {
  double mass = 1.0;
  int lattice_sites = 0;  // 0 -> symbol-level manifold side; else N
  int samples = 20;
  std::uint64_t seed = kDefaultSeed;
};

struct SigsolveOptions {
  int eps = -1;
};

// Clifford basis + structural operator invariants at one (m, n).
Report run_gamma(const GammaOptions& opt);
// KO sign table and its twisted extension, measured across the (m, n) sweep.
Report run_ko_table();
// K-morphism, Krein calculus, fluctuations; lattice block at (2, 1).
Report run_morphism(const MorphismOptions& opt);
// Signature-change relation on Christoffel symbols + spin-connection split.
Report run_christoffel(const ChristoffelOptions& opt);
// Almost-commutative product triple and its propositions.
Report run_product(const ProductOptions& opt);
// Brute-force fundamental-symmetry classification in 4D.
Report run_sigsolve(const SigsolveOptions& opt);

}  // namespace spectriple

#endif  // SPECTRIPLE_COMMANDS_HPP
