#include <cstdio>

#include "hv/acceptance.hpp"

int main() {
    hv::RunConfig cfg;
    cfg.threads = hv::RunConfig::env_threads();
    const int failures = hv::run_suite(cfg, "acceptance_out");
    if (failures) std::printf("%d criteria failed\n", failures);
    return failures ? 1 : 0;
}
