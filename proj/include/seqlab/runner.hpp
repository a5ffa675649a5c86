#pragma once
//
// Executes the certificate suite for a scenario and assembles the report:
// one record per check (name, claim, status, numbers), checks sorted by
// name, overall verdict certified only when every check is certified.
//
// Report documents are deterministic given the scenario and seed; timing is
// deliberately kept out of the rendered document so runs can be diffed.
//

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "seqlab/scenario.hpp"

namespace seqlab::cli {

struct CheckRecord {
    std::string name;
    std::string claim;
    std::string status;  // certified | failed | undecided
    nlohmann::ordered_json data;
};

struct Report {
    nlohmann::ordered_json scenario_echo;
    std::vector<CheckRecord> checks;
    std::string verdict;  // certified | failed | undecided
    double wall_clock_ms = 0.0;  // not serialized; stderr summary only

    int counts(const std::string& status) const;
};

Report run_scenario(const Scenario& s);

// Canonical report document (stable schema, stable ordering, 2-space indent).
std::string render_report(const Report& report);

// certified -> 0, failed -> 1, undecided -> 2
int exit_code_for(const Report& report);

// CSV rows t,u,bound for the decoupled scalar problem at block position j.
// For a negative leading coefficient the rows come from the time-reversed
// problem. Requires a peano scenario.
void write_trajectory_csv(const Scenario& s, Index block_position, std::ostream& out);

}  // namespace seqlab::cli
