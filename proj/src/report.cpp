#include "modlie/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace modlie {

bool VerificationReport::any_inconclusive() const {
    for (const CheckRecord& c : checks)
        if (c.verdict == "inconclusive")
            return true;
    return false;
}

void VerificationReport::finalize_overall() {
    overall = true;
    for (const CheckRecord& c : checks)
        overall = overall && c.counts_as_pass();
}

nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckRecord& c : r.checks) {
        nlohmann::json jc{{"check_name", c.check_name},
                          {"verdict", c.verdict},
                          {"data", c.data},
                          {"elapsed_ms", c.elapsed_ms}};
        if (c.seed)
            jc["seed"] = *c.seed;
        checks.push_back(std::move(jc));
    }
    nlohmann::json j{{"tool_version", r.tool_version},
                     {"p", r.p},
                     {"algebra", r.algebra},
                     {"seed", r.seed},
                     {"coeff_phi", r.coeff_phi},
                     {"coeff_psi", r.coeff_psi},
                     {"exploratory", r.exploratory},
                     {"timestamp", r.timestamp},
                     {"checks", std::move(checks)},
                     {"overall", r.overall},
                     {"total_elapsed_ms", r.total_elapsed_ms}};
    if (r.conclusion)
        j["conclusion"] = *r.conclusion;
    return j;
}

VerificationReport report_from_json(const nlohmann::json& j) {
    VerificationReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.p = j.at("p").get<unsigned>();
    r.algebra = j.at("algebra").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.coeff_phi = j.at("coeff_phi").get<unsigned>();
    r.coeff_psi = j.at("coeff_psi").get<unsigned>();
    r.exploratory = j.at("exploratory").get<bool>();
    r.timestamp = j.at("timestamp").get<std::string>();
    for (const nlohmann::json& jc : j.at("checks")) {
        CheckRecord c;
        c.check_name = jc.at("check_name").get<std::string>();
        c.verdict = jc.at("verdict").get<std::string>();
        c.data = jc.at("data");
        c.elapsed_ms = jc.at("elapsed_ms").get<std::int64_t>();
        if (jc.contains("seed"))
            c.seed = jc.at("seed").get<std::uint64_t>();
        r.checks.push_back(std::move(c));
    }
    r.overall = j.at("overall").get<bool>();
    r.total_elapsed_ms = j.at("total_elapsed_ms").get<std::int64_t>();
    if (j.contains("conclusion"))
        r.conclusion = j.at("conclusion").get<std::string>();
    return r;
}

std::string render_text(const VerificationReport& r) {
    std::ostringstream out;
    out << "modlie " << r.tool_version << "  p=" << r.p << "  algebra=" << r.algebra
        << "  seed=" << r.seed;
    if (r.coeff_phi != 1 || r.coeff_psi != 2)
        out << "  coeffs=(" << r.coeff_phi << "," << r.coeff_psi << ") [exploratory]";
    out << '\n';
    for (const CheckRecord& c : r.checks) {
        out << "  [" << c.verdict << "] " << c.check_name;
        if (!c.data.is_null() && !c.data.empty()) {
            out << "  ";
            if (c.data.contains("detail"))
                out << c.data.at("detail").get<std::string>();
            else
                out << c.data.dump();
        }
        out << "  (" << c.elapsed_ms << " ms";
        if (c.seed)
            out << ", seed " << *c.seed;
        out << ")\n";
    }
    if (r.conclusion)
        out << "  => " << *r.conclusion << '\n';
    out << "overall: " << (r.overall ? "PASS" : "FAIL") << "  (total " << r.total_elapsed_ms
        << " ms)\n";
    return out.str();
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace modlie
