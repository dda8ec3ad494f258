#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lenskt/jcalc.hpp"
#include "lenskt/kqcalc.hpp"

namespace lenskt::cli {

// One fully evaluated grid cell: both pipelines plus a check tally.
// Serialization keeps every integer as a decimal string; orders like 3^40
// overflow native widths in downstream tools.
struct RunRecord {
    unsigned long p = 3;
    unsigned r = 1;
    unsigned long k = 0;
    unsigned long q = 2;
    std::string timestamp;
    jcalc::JGroupResult j;
    kqcalc::KQResult kq;
    unsigned checks_passed = 0;
    unsigned checks_failed = 0;
    unsigned checks_report_only = 0;
};

RunRecord compute_record(unsigned long p, unsigned r, unsigned long k, unsigned long q,
                         const std::string& timestamp);

nlohmann::json record_to_json(const RunRecord& rec);
RunRecord record_from_json(const nlohmann::json& j);

std::string render_text(const RunRecord& rec);
std::string csv_header();
std::string csv_row(const RunRecord& rec);

// ISO-8601 UTC; the LENSKT_TIMESTAMP environment variable overrides the
// clock so cache byte-identity is testable.
std::string current_timestamp();

struct GridSpec {
    std::vector<unsigned long> p_list;
    unsigned r_max = 1;
    unsigned long k_max = 0;
    unsigned long q_override = 0; // 0 = pick per cell
};

struct ScanStats {
    std::size_t computed = 0;
    std::size_t skipped = 0;
    std::size_t corrupt_lines = 0;
    std::size_t total_records = 0;
};

// Computes missing grid cells with up to `jobs` workers, appends them to the
// line-delimited JSON cache, and rewrites it in canonical (p,r,k,q) order.
// Corrupt lines are reported to `err` with their line number and dropped.
ScanStats scan_grid(const GridSpec& grid, unsigned jobs, const std::string& cache_path,
                    std::ostream& err);

// Entry point used by both the binary and the tests. Returns the process
// exit code: 0 success, 1 hard check failure, 2 invalid arguments.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace lenskt::cli
