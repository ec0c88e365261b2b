#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cover14::props {

struct SuiteResult {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  bool pass = false;
  double seconds = 0;
  std::string detail;
};

// Fourteen-point lower bound: 91 pairwise margin programs, every margin <= 0.
SuiteResult run_lower_bound();

// Q_P subset of O_p for random grid-descendant boxes and random p inside.
SuiteResult run_lemma_inclusion(int samples, std::uint64_t seed, unsigned workers = 0);

// Strict interior translate with positive rational margin for random boxes.
SuiteResult run_lemma_strict(int samples, std::uint64_t seed, unsigned workers = 0);

// O_q intersect O_r inside O_p for axis-parallel configuration segments.
SuiteResult run_segment_fact(int samples, std::uint64_t seed);

// reduce_to_D lands in D and preserves the configured point set.
SuiteResult run_symmetry(int samples, std::uint64_t seed);

// Every random p in D lies in some enumerated grid box, M in {1,2,10}.
SuiteResult run_coverage(int samples, std::uint64_t seed);

// hull3 against the supporting-plane oracle plus the hull/vertex round-trip.
SuiteResult run_hull_oracle(int samples, std::uint64_t seed);

// feasible_exact against Fourier-Motzkin on random small systems; every
// feasible verdict's witness re-checked by substitution.
SuiteResult run_lp_oracle(int samples, std::uint64_t seed);

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, int samples, std::uint64_t seed, unsigned workers = 0);

}  // namespace cover14::props
