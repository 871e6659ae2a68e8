#include <algorithm>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "dioph/acceptance.hpp"

// One PASS/FAIL line per criterion. A criterion fails when any of its checks
// fails or when it exceeds its time limit.
int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    dioph::AcceptanceOptions opt;
    app.add_option("--precision", opt.bits, "working precision in bits");
    app.add_option("--seed", opt.seed, "fuzz seed");
    app.add_option("--only", opt.only, "criterion ids to run")->check(CLI::Range(1, dioph::kCriterionCount));
    CLI11_PARSE(app, argc, argv);

    int failures = 0;
    for (int id = 1; id <= dioph::kCriterionCount; ++id) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
        dioph::CriterionResult r = dioph::run_criterion(id, opt);
        bool in_time = r.seconds < r.time_limit;
        bool ok = r.passed && in_time;
        failures += !ok;
        std::printf("%s criterion %2d (%s): %.2fs of %.0fs; %s%s\n", ok ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.time_limit, r.summary.c_str(), in_time ? "" : "; time limit exceeded");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
