#pragma once

#include <optional>
#include <string>
#include <vector>

#include "resfront/core.hpp"
#include "resfront/mechanism.hpp"
#include "resfront/oracle.hpp"

namespace resfront {

enum class Suite { kFrontier, kCycles, kLemmas, kMechanism };

std::optional<Suite> parse_suite(const std::string& name);
const char* suite_name(Suite s);

struct SuiteResult {
  Suite suite;
  std::vector<std::string> failures;
  bool sampled = false;

  bool passed() const { return failures.empty(); }
};

struct VerifyOptions {
  EnumerationBudget budget;
  // Share targets tried by the mechanism suite when the instance has none.
  std::vector<Rational> fallback_targets{{0, 1}, {1, 5}, {1, 3}, {1, 2}, {7, 10}, {1, 1}};
  // Negative control: perturbs one frontier point before comparing.
  bool inject_corruption = false;
};

// Sweep frontier against the oracle: identical points and kinks, valid
// shape, half bound, endpoint and kink iterations.
SuiteResult verify_frontier(const SeatInstance& si, const VerifyOptions& opts);
// Minimal-cycle walk against the oracle frontier, and the minimal-cycle step
// from every (sampled) non-dominated matching.
SuiteResult verify_cycles(const SeatInstance& si, const VerifyOptions& opts);
// Disjoint-cycle and matched-preservation lemmas.
SuiteResult verify_lemmas(const SeatInstance& si, const VerifyOptions& opts);
// Selection, exact-share domination and priority repair.
SuiteResult verify_mechanism(const Instance& inst, std::optional<Rational> beta_star,
                             const VerifyOptions& opts);

std::vector<SuiteResult> run_suites(const Instance& inst, std::optional<Rational> beta_star,
                                    const std::vector<Suite>& suites, const VerifyOptions& opts);

}  // namespace resfront
