#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specreg/app/commands.hpp"

namespace specreg::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;      // numerical verdict
  bool within_time = true;  // runtime limit, only enforced in optimized builds
  std::string detail;
  std::string supplementary;  // non-gating diagnostics
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::vector<OutputFile> files;

  bool ok() const noexcept { return passed && within_time; }
  std::string line() const;
};

int criterion_count() noexcept;

/// Runs criterion id in [1, criterion_count()].
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Criteria 1..8 plus their artifacts, without the determinism check.
std::vector<CriterionResult> run_numeric_criteria(std::uint64_t seed);

}  // namespace specreg::app
