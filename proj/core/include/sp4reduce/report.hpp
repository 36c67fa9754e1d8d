// Report serialization (JSON and text) and replay verification of stored
// reports.
//
// This file is part of sp4reduce, released under the MIT license.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sp4reduce/pipeline.hpp"

namespace sp4reduce {

enum class ReportFormat { Json, Text };

// Serialize a pipeline result. The JSON form is deterministic except for
// the elapsed_ms field.
std::string emit_report(const PipelineResult& result, ReportFormat format);

// Re-run the pipeline for the problem and verify a stored JSON report
// against it: the verdict and classification must match, the stored gauges
// must reproduce the stored matrices exactly, and every certified identity
// (symplecticity, span membership, abelianity, the fundamental matrix) is
// recomputed.
struct ReplayResult {
  bool ok = true;
  std::vector<std::pair<std::string, bool>> checks;
};
ReplayResult replay(const ProblemSpec& spec, const std::string& report_json);

}  // namespace sp4reduce
