#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace erasim {

enum class CriterionStatus { pass, fail, inconclusive };

const char* to_string(CriterionStatus status);

struct CriterionResult {
    std::string id;
    CriterionStatus status = CriterionStatus::inconclusive;
    std::string detail;    // headline numbers behind the status
    std::string records;   // persisted JSONL payload, byte-compared by the
                           // reproducibility criterion
    double seconds = 0.0;
};

struct AcceptanceOptions {
    bool quick = false;               // restrict to the fast subset (a1, a4, a6)
    int workers = 0;                  // 0 = OpenMP default
    std::uint64_t master_seed = 20260816;
    std::vector<std::string> only;    // run only these ids (case-insensitive)
    std::string out_path;             // optional JSONL dump of all records
};

struct AcceptanceOutcome {
    std::vector<CriterionResult> results;
    bool all_pass = false;
};

// Runs the self-check suite, printing one PASS/FAIL/INCONCLUSIVE line per
// criterion to `out` as it goes. The final criterion re-runs every record
// producer with a different worker count and byte-compares the payloads.
AcceptanceOutcome run_acceptance(const AcceptanceOptions& options, std::ostream& out);

}  // namespace erasim
