#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ospcert/serialize.hpp"
#include "ospcert/verdicts.hpp"

namespace ospcert {

inline constexpr const char* kDataDirEnv = "OSPCERT_DATA_DIR";
inline constexpr std::size_t kDefaultRowCap = 1000000;

// flag > $OSPCERT_DATA_DIR > ./data
std::filesystem::path resolve_data_dir(const std::optional<std::string>& flag);

// "3", "2..5" or "2-5"; throws UsageError on malformed or empty ranges.
std::vector<int> parse_n_range(const std::string& s);

struct CommonOptions {
    std::filesystem::path data_dir = "data";
    int jobs = 1;
    std::size_t row_cap = kDefaultRowCap;
    CartanFrame frame = CartanFrame::Orthonormal;
    bool tables = false;  // print per-certificate contribution tables
};

// Machine part: {"command", "inputs", "results", "pass", "exit_code", "timing"}.
// Everything except "timing" is a function of the inputs alone.
struct Report {
    Json data;
    std::string text;
    int exit_code = 0;
};

Json strip_timing(const Json& report);
std::string report_text(const Report& r);  // canonical_dump of r.data

// Loads structures from the data directory when both files exist
// (their frame must match), otherwise builds them in memory.
struct ObtainedStructures {
    std::shared_ptr<const Structures> s;
    StructureHashes hashes;
    std::string source;  // "file" or "computed"
};
ObtainedStructures obtain_structures(const CommonOptions& opt, int m, int n);

Report cmd_generate(const CommonOptions& opt, int m, const std::vector<int>& ns);
Report cmd_dim_check(const CommonOptions& opt, const std::vector<int>& ns);
Report cmd_rank(const CommonOptions& opt, int m, const std::vector<int>& ns, const std::optional<std::string>& sector);
Report cmd_verify_certs(const CommonOptions& opt, const std::vector<int>& ns);
Report cmd_verify_b01(const CommonOptions& opt);
Report cmd_verify_bmn(const CommonOptions& opt, const std::vector<std::pair<int, int>>& targets);

// Grid 1..max_m x 1..max_n in (m, n) order.
std::vector<std::pair<int, int>> bmn_grid(int max_m, int max_n);

}  // namespace ospcert
