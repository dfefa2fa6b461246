#pragma once

#include <optional>

#include "w2n/report.hpp"

namespace w2n {

struct SuiteOptions {
  int n_max = 4;
  int depth = 2;
  int fock_cutoff = 4;
  int jobs = 1;
  std::optional<BigRat> k_value;  // additionally rerun structural scalars at a numeric level
  unsigned seed = 2024;
};

std::vector<std::string> suite_names();  // structure screenings appendix-bp appendix-w4 duality oracle all

// Runs every check of the named suite on a work-stealing pool; results are
// aggregated in task order, so reports are deterministic for any job count.
Report run_suite(const std::string& name, const SuiteOptions& opt);

} // namespace w2n
