#pragma once

#include "vex/cli/commands.hpp"

namespace vex::cli {

/// `vex corpus`: runs corpus/cases.json, compares each case against its
/// expectations and, with --out, writes one result file per case plus
/// report.json. `result["text"]` holds the human-readable report.
Outcome run_corpus(const Options& o, const NormalFn& normal);

}  // namespace vex::cli
