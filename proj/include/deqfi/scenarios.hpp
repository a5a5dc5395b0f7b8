#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "deqfi/channels.hpp"
#include "deqfi/states.hpp"

namespace deqfi::scenarios {

struct Check {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string name;
  std::vector<Check> checks;
  void add(std::string label, bool pass, std::string detail = "");
  bool all_pass() const;
};

struct Params {
  double theta = 0.5;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

// Named reproduction scenarios; each runs its battery of checks and
// returns a machine-readable report.
Report free_states(const Params& p);
Report psi1_psi2(const Params& p);
Report golden(const Params& p);
Report cone(const Params& p);
Report hierarchy(const Params& p);
Report prop8(const Params& p, const std::vector<cd>& amplitudes, double epsilon);
Report merge_demo(const Params& p);
Report appendix_a(const Params& p);
Report appendix_b(const Params& p);
Report appendix_c(const Params& p);
Report properties(const Params& p);

const std::vector<std::string>& scenario_names();
Report run(const std::string& name, const Params& p);

std::string report_to_text(const Report& r);

// Seeded generators shared by scenarios and tests.
DensityMatrix random_density(int n_qubits, std::mt19937_64& rng,
                             double mix_floor = 0.1);
DensityMatrix random_pure(int n_qubits, std::mt19937_64& rng);
DensityMatrix random_diagonal(int n_qubits, std::mt19937_64& rng);
ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng);
/// Ginibre Kraus list renormalized to trace preservation.
KrausChannel random_cptp(int n_qubits, int num_kraus, std::mt19937_64& rng);
/// Convex mixture of two seeded pattern channels.
KrausChannel random_shp_mixture(int n_qubits, std::mt19937_64& rng);

}  // namespace deqfi::scenarios
