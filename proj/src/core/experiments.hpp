#ifndef HEATSHAPE_EXPERIMENTS_HPP
#define HEATSHAPE_EXPERIMENTS_HPP

#include <string>

#include "json_io.hpp"

namespace heatshape {

// Batch experiment front door shared by the C API and the CLI.
//
// `command` is one of: stability | thresholds | modes | translate-check |
// fem-compare | counterexample | rearrange-check | insulation | sweep.
// `config` is the command's JSON object (strict: unknown fields rejected).
// When `out_dir` is nonempty, reports are written there atomically
// (tmp file + rename).
//
// The returned summary always carries "command", "passed" (mathematical
// assertions), and "outputs" (files written).
struct ExperimentResult {
  json summary;
  bool passed = false;
};

ExperimentResult run_experiment(const std::string& command, const json& config,
                                const std::string& out_dir, int jobs = 1);

// Atomic text write used by the experiment runners.
void write_text_atomic(const std::string& path, const std::string& contents);

}  // namespace heatshape

#endif
