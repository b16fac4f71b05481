#ifndef QOSC_VERIFY_HPP
#define QOSC_VERIFY_HPP

#include <string>
#include <vector>

#include "qcore.hpp"

namespace qosc {

/// One verification record: the identity checked (as a formula), the observed
/// residual and the tolerance it must meet. Checks whose parameter domain
/// excludes the requested configuration are reported as skipped, with a note.
struct CheckRecord {
    std::string name;
    std::string relation;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    bool skipped = false;
    std::string note;
};

enum class Suite { all, algebra, exponentials, measure, hermite, states };

const char* suite_name(Suite s) noexcept;

struct VerifyConfig {
    QParams params;
    long dim = 32;
    SeriesPolicy policy;
};

std::vector<CheckRecord> run_suite(Suite suite, const VerifyConfig& config);

inline bool all_passed(const std::vector<CheckRecord>& records) {
    for (const auto& r : records)
        if (!r.skipped && !r.pass) return false;
    return true;
}

}  // namespace qosc

#endif
