#pragma once

// End-to-end run: PD code in, report out.

#include "treefloer/complex.hpp"
#include "treefloer/homology.hpp"
#include "treefloer/marking.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace treefloer {

enum class CheckLevel { None, Fast, Full };

struct RunConfig {
    std::string name;
    std::string pd;
    std::optional<std::vector<long>> omega;
    std::optional<std::string> marking_json;
    /// Same number of points on every arc; 0 means automatic marking.
    int points_per_arc = 0;
    std::optional<int> outer_face;
    EdgeOrientation orientation = EdgeOrientation::SmallerTail;
    CheckLevel check = CheckLevel::Fast;
    bool mirror = false;
    int threads = 1;
    bool keep_complex = false;
};

struct CheckResult {
    std::string name;
    bool passed = false;
};

struct Report {
    std::string name;
    std::string pd; // after mirroring, if requested
    InvariantReport invariants;
    GradedRanks graded;
    std::vector<long> omega;
    GenericityMode genericity = GenericityMode::Verified;
    int unbounded_face = 0;
    long successor_pairs = 0;
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, double>> timings; // seconds per stage
    std::vector<TreeResolution> trees;
    std::vector<int> tree_gradings; // doubled
    std::shared_ptr<const ChainComplex> complex; // only with keep_complex

    bool checks_passed() const;
};

/// Throws Error for invalid input or non-generic weights. Failed checks are
/// reported, not thrown.
Report run(const RunConfig& cfg);

inline constexpr int kReportSchemaVersion = 1;

std::string report_to_json(const Report& r, bool include_timings = true);
std::string report_to_table(const Report& r);
std::string trees_to_json(const Report& r);

CheckLevel parse_check_level(const std::string& s);
std::string to_string(CheckLevel level);

} // namespace treefloer
