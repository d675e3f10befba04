#pragma once

// The release checklist: eleven numbered criteria, each run in isolation and
// reported as a pass/fail line.

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tmcf::acceptance {

struct Options {
    /// Precision for the quality criterion; unset means "enough".
    std::optional<unsigned long> precision_bits;
    /// Fault injection: beta_n is replaced by beta_n + 1 in a private table.
    std::optional<long> corrupt_beta;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

using Observer = std::function<void(const CriterionResult&)>;

/// Runs every criterion in order; the observer sees each result as soon as
/// it is known.
std::vector<CriterionResult> run(const Options& opts, const Observer& observer = {});

std::string format_line(const CriterionResult& r);

}  // namespace tmcf::acceptance
