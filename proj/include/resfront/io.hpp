#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "resfront/core.hpp"
#include "resfront/generator.hpp"
#include "resfront/rha.hpp"

namespace resfront {

// Instance JSON:
//   {"categories": [{"id", "quota", "eligible": [...], "beneficiary": [...]}],
//    "patients": [...], "beta_star": "num/den", "priority": {cat: [...]}}
// beta_star and priority are optional; an optional "meta" object is ignored
// except for "seed". Throws InputError with the offending location.
InstanceDocument parse_instance_json(const std::string& text);
InstanceDocument load_instance_file(const std::string& path);
nlohmann::json instance_to_json(const InstanceDocument& doc);
std::string dump_json(const nlohmann::json& j);

// Resolves a comma-separated patient list; "a..b" expands to every patient
// from a to b in file order.
std::vector<int> parse_patient_subset(const Instance& inst, const std::string& text);

// Category-level view of a matching: {"assignment": {patient: category}, "e", "b"}.
nlohmann::json matching_to_json(const SeatInstance& si, const Matching& m);

// CSV with header e,b,beta_num,beta_den,is_kink; beta fields read
// "undefined" at e = 0.
std::string frontier_csv(const Frontier& f);
nlohmann::json frontier_json(const SeatInstance& si, const Frontier& f, bool witnesses);
nlohmann::json witnesses_json(const SeatInstance& si, const Frontier& f);

}  // namespace resfront
