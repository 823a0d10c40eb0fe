#include "modlie/pipeline.hpp"
#include "modlie/version.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace modlie;

namespace {

struct TempFile {
    std::filesystem::path path;
    explicit TempFile(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {}
    ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

} // namespace

TEST_CASE("build_named_algebra") {
    CHECK(build_named_algebra("P").dim() == 125);
    CHECK(build_named_algebra("W13").dim() == 125);
    CHECK(build_named_algebra("O(2,1)").dim() == 125);
    CHECK(build_named_algebra("O(1)").dim() == 5);
    CHECK_THROWS_AS(build_named_algebra("Q"), UsageError);
    CHECK_THROWS_AS(build_named_algebra("O()"), UsageError);
    CHECK_THROWS_AS(build_named_algebra("O(0)"), UsageError);
    CHECK_THROWS_AS(build_named_algebra("O(2,2,2)"), UsageError);
    CHECK_THROWS_AS(build_named_algebra("O(x)"), UsageError);
}

TEST_CASE("parse_checks") {
    const auto kinds = parse_checks("lie,simple,form");
    REQUIRE(kinds.size() == 3);
    CHECK(kinds[0] == CheckKind::Lie);
    CHECK(kinds[1] == CheckKind::Simple);
    CHECK(kinds[2] == CheckKind::Form);
    CHECK_THROWS_AS(parse_checks("lie,bogus"), UsageError);
    CHECK_THROWS_AS(parse_checks(""), UsageError);
}

TEST_CASE("non-default deformation coefficients are marked exploratory") {
    VerifyOptions options;
    options.algebra = "O(1)";
    options.checks = {CheckKind::Lie};
    CHECK_FALSE(run_verify(options).exploratory);
    options.coeff_psi = 3;
    const VerificationReport report = run_verify(options);
    CHECK(report.exploratory);
    CHECK(to_json(report).at("exploratory").get<bool>());
}

TEST_CASE("verify on O(1,1) reports a lie failure honestly") {
    VerifyOptions options;
    options.algebra = "O(1,1)";
    options.checks = {CheckKind::Lie};
    const VerificationReport report = run_verify(options);
    CHECK_FALSE(report.overall);
    REQUIRE(report.checks.size() == 1);
    CHECK(report.checks[0].verdict == "fail");
    CHECK(exit_code_for(report) == 1);
}

TEST_CASE("JSON report round trip") {
    VerifyOptions options;
    options.algebra = "O(2,1)";
    options.checks = {CheckKind::Lie};
    options.seed = 9;
    VerificationReport report = run_verify(options);
    report.conclusion = "demo";
    const nlohmann::json j = to_json(report);
    const VerificationReport back = report_from_json(j);
    CHECK(back == report);
    CHECK(to_json(back) == j);
    // and through an actual string
    const VerificationReport back2 = report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back2 == report);
}

TEST_CASE("from-dump verification matches the built-in construction") {
    TempFile tmp("modlie_test_p25.sc");
    // the 25-dimensional Poisson algebra, dumped and reloaded
    const unsigned hs[2] = {1, 1};
    const AlgebraStructure a = divided_powers_multi(PrimeField(5), hs);
    DividedPowersShape shape{5, {1, 1}};
    const AlgebraStructure p25 = poisson_bracket(
        a, partial_derivative(shape, 0), partial_derivative(shape, 1), "P25");
    p25.write_dump(tmp.path);

    VerifyOptions options;
    options.from_dump = tmp.path.string();
    options.checks = {CheckKind::Lie, CheckKind::Simple};
    options.seed = 2;
    const VerificationReport loaded = run_verify(options);
    CHECK(loaded.algebra == "P25");

    // identical verdicts from the in-memory construction
    CHECK(loaded.checks[0].verdict == "pass");
    CHECK(loaded.checks[1].verdict == "fail"); // P25 has a center
    const SimplicityReport direct = is_simple(p25, 2);
    CHECK(direct.verdict == SimplicityReport::Verdict::NotSimple);
}

TEST_CASE("load_algebra_dump failures are IO errors") {
    CHECK_THROWS_AS(load_algebra_dump("/nonexistent/path/x.sc"), IoError);
}

TEST_CASE("the form check can dump FORM-tagged matrices") {
    TempFile dump("modlie_test_cross.sc");
    TempFile form("modlie_test_cross.form");
    // cross-product algebra via the from-dump path
    AlgebraStructure cross(PrimeField(5), 3, true, "cross");
    cross.set_product(0, 1, Vec{0, 0, 1});
    cross.set_product(1, 2, Vec{1, 0, 0});
    cross.set_product(0, 2, Vec{0, 4, 0});
    cross.write_dump(dump.path);

    VerifyOptions options;
    options.from_dump = dump.path.string();
    options.checks = {CheckKind::Form};
    options.dump_form_path = form.path.string();
    const VerificationReport report = run_verify(options);
    CHECK(report.checks[0].verdict == "present");

    std::ifstream in(form.path);
    REQUIRE(bool(in));
    std::string header;
    std::getline(in, header);
    CHECK(header == "FORM p=5 dim=3 name=cross_form0");
}

TEST_CASE("report text rendering mentions the essentials") {
    VerifyOptions options;
    options.algebra = "O(1)";
    options.checks = {CheckKind::Lie};
    const VerificationReport report = run_verify(options);
    const std::string text = render_text(report);
    CHECK(text.find("modlie " + std::string(kToolVersion)) != std::string::npos);
    CHECK(text.find("algebra=O(1)") != std::string::npos);
    CHECK(text.find("overall: FAIL") != std::string::npos);
}

TEST_CASE("exit codes") {
    VerificationReport report;
    report.checks.push_back(CheckRecord{"a", "pass", nullptr, 0, std::nullopt});
    report.finalize_overall();
    CHECK(exit_code_for(report) == 0);

    report.checks.push_back(CheckRecord{"b", "fail", nullptr, 0, std::nullopt});
    report.finalize_overall();
    CHECK(exit_code_for(report) == 1);

    report.checks.push_back(CheckRecord{"c", "inconclusive", nullptr, 0, std::nullopt});
    report.finalize_overall();
    CHECK(exit_code_for(report) == 4);

    VerificationReport absent;
    absent.checks.push_back(CheckRecord{"form", "absent", nullptr, 0, std::nullopt});
    absent.finalize_overall();
    CHECK(absent.overall);
    CHECK(exit_code_for(absent) == 0);
}
