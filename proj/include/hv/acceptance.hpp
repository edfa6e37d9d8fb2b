#pragma once
#include <string>
#include <vector>

#include "hv/config.hpp"

namespace hv {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string message;
};

// Runs the eleven numbered checks twice (out_dir/runA, out_dir/runB), each
// criterion writing its artifacts under criterion_NN/, then compares the two
// trees byte for byte as the twelfth. Prints one line per criterion, writes
// summary.json, returns the number of failures. HVLAB_THREADS (cfg.threads)
// > 1 runs the checks of each pass concurrently with a fixed-order gather.
int run_suite(const RunConfig& cfg, const std::string& out_dir,
              std::vector<CriterionResult>* results = nullptr);

} // namespace hv
