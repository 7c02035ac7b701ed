#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "voltfrac/config.hpp"
#include "voltfrac/verify.hpp"

namespace voltfrac {

// Exit-status contract: 0 all monitors/checks pass, 1 check failures,
// 2 config errors, 3 blow-up, 4 non-convergence.
enum ExitCode {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitConfigError = 2,
    kExitBlowup = 3,
    kExitNonConvergence = 4,
};

// run <config>: solve and write trajectory.csv, diagnostics.csv, summary.txt
// under the output directory. Flushes the partial trajectory on blow-up.
int cmd_run(const RunConfig& cfg, std::ostream& log);

// verify <suite>: machine-readable report, one line per check.
int cmd_verify(const std::string& suite, std::uint64_t seed, std::ostream& log,
               const std::string& report_dir = "");

// converge <config> --levels k: refinement study at N, 2N, 4N, ... with
// Richardson order estimates against the finest level.
struct ConvergenceLevel {
    int time_intervals = 0;
    double error_vs_finest = 0.0;  // NaN for the finest level itself
    double observed_order = 0.0;   // NaN where undefined
    bool exact_regime = false;     // error at special-function tolerance
};
std::vector<ConvergenceLevel> converge_study(const RunConfig& cfg, int levels);
int cmd_converge(const RunConfig& cfg, int levels, std::ostream& log);

}  // namespace voltfrac
