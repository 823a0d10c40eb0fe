#pragma once

#include "modlie/meataxe.hpp"
#include "modlie/poisson.hpp"
#include "modlie/report.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace modlie {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// P | D | W13 | O(m1,m2,...); throws UsageError on anything else.
/// The deformation coefficients only affect D.
AlgebraStructure build_named_algebra(const std::string& name, Scalar coeff_phi = 1,
                                     Scalar coeff_psi = 2);

AlgebraStructure load_algebra_dump(const std::filesystem::path& path);

enum class CheckKind { Lie, Cocycles, Prolong, Simple, Central, Form };

/// Parses a comma-separated checks list; throws UsageError on unknown names.
std::vector<CheckKind> parse_checks(const std::string& csv);

struct VerifyOptions {
    std::string algebra;                  // named algebra, unless from_dump is set
    std::optional<std::string> from_dump; // dump file path
    std::vector<CheckKind> checks;
    std::uint64_t seed = 1;
    Scalar coeff_phi = 1;
    Scalar coeff_psi = 2;
    std::optional<std::string> dump_form_path; // write FORM-tagged matrices here
};

VerificationReport run_verify(const VerifyOptions& options);

/// The full certification pipeline: construct P and check its invariants,
/// verify phi and psi are cocycles, verify the trivial prolongation, build D
/// and check Jacobi, certify central simplicity and the unique nondegenerate
/// symmetric invariant form, and confirm W_1(3) lacks such a form.
VerificationReport run_theorem(std::uint64_t seed = 1, Scalar coeff_phi = 1,
                               Scalar coeff_psi = 2);

/// 0 pass, 1 check failure, 4 inconclusive randomized verdict.
int exit_code_for(const VerificationReport& report);

} // namespace modlie
