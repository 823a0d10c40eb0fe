#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace modlie {

/// One verification step.  Verdicts: "pass" | "fail" | "inconclusive" for
/// asserted checks, "present" | "absent" for the descriptive form check.
/// "fail" and "inconclusive" are the only verdicts that break the overall
/// conjunction.
struct CheckRecord {
    std::string check_name;
    std::string verdict;
    nlohmann::json data; // witnesses, dimensions, counts; null when empty
    std::int64_t elapsed_ms = 0;
    std::optional<std::uint64_t> seed;

    bool counts_as_pass() const {
        return verdict == "pass" || verdict == "present" || verdict == "absent";
    }
    bool operator==(const CheckRecord& o) const = default;
};

/// Machine-readable certificate of a verification run.
struct VerificationReport {
    std::string tool_version;
    unsigned p = 5;
    std::string algebra;
    std::uint64_t seed = 1;
    unsigned coeff_phi = 1;
    unsigned coeff_psi = 2;
    bool exploratory = false; // non-default deformation coefficients
    std::string timestamp;    // ISO-8601 UTC
    std::vector<CheckRecord> checks;
    bool overall = false;
    std::int64_t total_elapsed_ms = 0;
    std::optional<std::string> conclusion;

    bool any_inconclusive() const;
    void finalize_overall(); // overall = conjunction of the check verdicts

    bool operator==(const VerificationReport& o) const = default;
};

nlohmann::json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::json& j);

std::string render_text(const VerificationReport& r);

/// Current time as an ISO-8601 UTC string.
std::string utc_timestamp();

} // namespace modlie
