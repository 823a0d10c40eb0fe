#include "modlie/pipeline.hpp"
#include "modlie/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace modlie;

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out)
        throw IoError("write failed for " + path);
}

void emit_report(const VerificationReport& report, const std::string& format,
                 const std::string& out_path) {
    const std::string rendered =
        format == "json" ? to_json(report).dump(2) + "\n" : render_text(report);
    if (out_path.empty())
        std::cout << rendered;
    else
        write_text_file(out_path, rendered);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modlie: exact verification that the deformed Poisson algebra over GF(5) "
                 "is the 125-dimensional Melikyan algebra"};
    app.set_version_flag("--version", std::string("modlie ") + kToolVersion);
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "construct an algebra and write its "
                                              "structure-constant dump");
    std::string build_algebra;
    std::string build_out;
    unsigned build_cphi = 1, build_cpsi = 2;
    build->add_option("algebra", build_algebra, "P | D | W13 | O(m1,m2,...)")->required();
    build->add_option("--out", build_out, "output path")->required();
    build->add_option("--coeff-phi", build_cphi, "phi coefficient for D (default 1)");
    build->add_option("--coeff-psi", build_cpsi, "psi coefficient for D (default 2)");

    // verify
    auto* verify = app.add_subcommand("verify", "run selected checks and print a report");
    std::string verify_algebra;
    std::string verify_algebra_flag;
    std::string verify_checks = "lie,cocycles,prolong,simple,central,form";
    std::string verify_from_dump;
    std::string verify_format = "text";
    std::string verify_out;
    std::uint64_t verify_seed = 1;
    unsigned verify_cphi = 1, verify_cpsi = 2;
    verify->add_option("ALGEBRA", verify_algebra, "P | D | W13 | O(m1,m2,...)");
    verify->add_option("--algebra", verify_algebra_flag, "algebra name (alternative to the "
                                                         "positional)");
    verify->add_option("--checks", verify_checks,
                       "comma-separated subset of lie,cocycles,prolong,simple,central,form");
    verify->add_option("--from-dump", verify_from_dump, "load the algebra from a dump file");
    verify->add_option("--seed", verify_seed, "seed for randomized checks (default 1)");
    verify->add_option("--format", verify_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--out", verify_out, "write the report to a file instead of stdout");
    verify->add_option("--coeff-phi", verify_cphi, "phi coefficient (default 1)");
    verify->add_option("--coeff-psi", verify_cpsi, "psi coefficient (default 2)");
    std::string verify_dump_form;
    verify->add_option("--dump-form", verify_dump_form,
                       "write the invariant form matrices found by the form check "
                       "(FORM-tagged dense dumps)");

    // theorem
    auto* theorem = app.add_subcommand("theorem", "run the full certification pipeline");
    std::string theorem_format = "text";
    std::string theorem_out;
    std::uint64_t theorem_seed = 1;
    unsigned theorem_cphi = 1, theorem_cpsi = 2;
    theorem->add_option("--seed", theorem_seed, "seed for randomized checks (default 1)");
    theorem->add_option("--format", theorem_format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    theorem->add_option("--out", theorem_out, "write the report to a file instead of stdout");
    theorem->add_option("--coeff-phi", theorem_cphi, "phi coefficient (default 1)");
    theorem->add_option("--coeff-psi", theorem_cpsi, "psi coefficient (default 2)");

    // dump-cochain
    auto* dump_cochain = app.add_subcommand("dump-cochain", "write phi or psi in the cochain "
                                                            "dump format");
    std::string cochain_name;
    std::string cochain_out;
    dump_cochain->add_option("cochain", cochain_name, "phi | psi")->required();
    dump_cochain->add_option("--out", cochain_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*build) {
            if (build_cphi > 4 || build_cpsi > 4)
                throw UsageError("deformation coefficients must lie in 0..4");
            const AlgebraStructure alg = build_named_algebra(
                build_algebra, static_cast<Scalar>(build_cphi), static_cast<Scalar>(build_cpsi));
            try {
                alg.write_dump(build_out);
            } catch (const std::exception& e) {
                throw IoError(e.what());
            }
            return 0;
        }
        if (*verify) {
            if (verify_cphi > 4 || verify_cpsi > 4)
                throw UsageError("deformation coefficients must lie in 0..4");
            VerifyOptions options;
            if (!verify_algebra.empty())
                options.algebra = verify_algebra;
            else if (!verify_algebra_flag.empty())
                options.algebra = verify_algebra_flag;
            if (!verify_from_dump.empty())
                options.from_dump = verify_from_dump;
            if (options.algebra.empty() && !options.from_dump)
                throw UsageError("verify needs an algebra name or --from-dump");
            options.checks = parse_checks(verify_checks);
            options.seed = verify_seed;
            options.coeff_phi = static_cast<Scalar>(verify_cphi);
            options.coeff_psi = static_cast<Scalar>(verify_cpsi);
            if (!verify_dump_form.empty())
                options.dump_form_path = verify_dump_form;
            const VerificationReport report = run_verify(options);
            emit_report(report, verify_format, verify_out);
            return exit_code_for(report);
        }
        if (*theorem) {
            if (theorem_cphi > 4 || theorem_cpsi > 4)
                throw UsageError("deformation coefficients must lie in 0..4");
            const VerificationReport report =
                run_theorem(theorem_seed, static_cast<Scalar>(theorem_cphi),
                            static_cast<Scalar>(theorem_cpsi));
            emit_report(report, theorem_format, theorem_out);
            return exit_code_for(report);
        }
        if (*dump_cochain) {
            Cochain2 cochain = [&] {
                if (cochain_name == "phi")
                    return build_phi();
                if (cochain_name == "psi")
                    return build_psi();
                throw UsageError("unknown cochain '" + cochain_name + "' (expected phi or psi)");
            }();
            try {
                cochain.write_dump(cochain_out, "COCHAIN");
            } catch (const std::exception& e) {
                throw IoError(e.what());
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
