#ifndef NPBO_EXPERIMENTS_HPP
#define NPBO_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "npbo/report.hpp"

namespace npbo {

// The quantitative verification suite.  Each experiment is deterministic
// given the seed and returns a report with a pass/fail verdict.
EstimateReport exp_semigroup_growth(uint64_t seed);
EstimateReport exp_smoothing_exponents();
EstimateReport exp_picard_etd_agreement(uint64_t seed);
EstimateReport exp_global_energy_bound();
EstimateReport exp_existence_time_scaling();
EstimateReport exp_norm_inflation();
EstimateReport exp_mean_and_moment_identities();
EstimateReport exp_weighted_persistence();
EstimateReport exp_hilbert_weight_dichotomy();
EstimateReport exp_jump_criterion();

struct SuiteEntry {
    std::string suite;    // semigroup | solver | inflation | weighted
    std::string name;
    EstimateReport (*run_seeded)(uint64_t);
    EstimateReport (*run)();
};

const std::vector<SuiteEntry>& experiment_registry();

}  // namespace npbo

#endif
