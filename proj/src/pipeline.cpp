#include "modlie/pipeline.hpp"

#include "modlie/version.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace modlie {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

nlohmann::json pair_json(const AlgebraStructure& alg, const PairWitness& w) {
    return {{"i", w.i}, {"j", w.j}, {"labels", {alg.labels()[w.i], alg.labels()[w.j]}}};
}

nlohmann::json triple_json(const AlgebraStructure& alg, const TripleWitness& w) {
    return {{"i", w.i},
            {"j", w.j},
            {"k", w.k},
            {"labels", {alg.labels()[w.i], alg.labels()[w.j], alg.labels()[w.k]}}};
}

nlohmann::json subspace_json(const Subspace& s) {
    Vec e0(s.ambient_dim(), 0);
    if (!e0.empty())
        e0[0] = 1;
    return {{"dimension", s.dim()}, {"contains_e0", s.contains(e0)}};
}

// Builds P/phi/psi once per verify run; several checks share them.
struct DeformationParts {
    AlgebraStructure p;
    Cochain2 phi;
    Cochain2 psi;
};

const DeformationParts& deformation_parts() {
    static const DeformationParts parts{build_P(), build_phi(), build_psi()};
    return parts;
}

CheckRecord check_lie(const AlgebraStructure& alg) {
    const auto start = Clock::now();
    CheckRecord rec;
    rec.check_name = "lie";
    const AnticommReport anti = alg.check_anticommutative();
    if (!anti.ok) {
        rec.verdict = "fail";
        rec.data = {{"anticommutative", false}, {"witness", pair_json(alg, *anti.witness)}};
        rec.elapsed_ms = ms_since(start);
        return rec;
    }
    const JacobiReport jac = alg.check_jacobi();
    rec.verdict = jac.ok ? "pass" : "fail";
    rec.data = {{"anticommutative", true},
                {"jacobi", jac.ok},
                {"triples_checked", jac.triples_checked}};
    if (jac.witness)
        rec.data["witness"] = triple_json(alg, *jac.witness);
    else
        rec.data["detail"] = "anticommutative; Jacobi holds on " +
                             std::to_string(jac.triples_checked) + " triples";
    rec.elapsed_ms = ms_since(start);
    return rec;
}

CheckRecord check_cocycles() {
    const auto start = Clock::now();
    const DeformationParts& parts = deformation_parts();
    CheckRecord rec;
    rec.check_name = "cocycles";
    const CocycleReport cphi = cocycle_check(parts.p, parts.phi);
    const CocycleReport cpsi = cocycle_check(parts.p, parts.psi);
    rec.verdict = (cphi.ok && cpsi.ok) ? "pass" : "fail";
    rec.data = {{"phi_cocycle", cphi.ok}, {"psi_cocycle", cpsi.ok}};
    if (cphi.witness)
        rec.data["phi_witness"] = triple_json(parts.p, *cphi.witness);
    if (cpsi.witness)
        rec.data["psi_witness"] = triple_json(parts.p, *cpsi.witness);
    if (cphi.ok && cpsi.ok)
        rec.data["detail"] = "d(phi) = d(psi) = 0 over P";
    rec.elapsed_ms = ms_since(start);
    return rec;
}

CheckRecord check_prolong(Scalar coeff_phi, Scalar coeff_psi) {
    const auto start = Clock::now();
    const DeformationParts& parts = deformation_parts();
    CheckRecord rec;
    rec.check_name = "prolong";
    const AlgebraStructure* cochains[2] = {&parts.phi, &parts.psi};
    const Scalar coeffs[2] = {coeff_phi, coeff_psi};
    Cochain2 combo = AlgebraStructure::sum_of_structures(cochains, coeffs);
    combo.rename("phi+psi");
    const JacobiReport jac = jacobiator(combo);
    rec.verdict = jac.ok ? "pass" : "fail";
    rec.data = {{"jacobiator_zero", jac.ok}, {"coeff_phi", coeff_phi}, {"coeff_psi", coeff_psi}};
    if (jac.witness)
        rec.data["witness"] = triple_json(parts.p, *jac.witness);
    else
        rec.data["detail"] = "jacobiator(" + std::to_string(unsigned(coeff_phi)) + "*phi + " +
                             std::to_string(unsigned(coeff_psi)) + "*psi) = 0";
    rec.elapsed_ms = ms_since(start);
    return rec;
}

CheckRecord check_simple(const AlgebraStructure& alg, std::uint64_t seed) {
    const auto start = Clock::now();
    CheckRecord rec;
    rec.check_name = "simple";
    rec.seed = seed;
    const SimplicityReport rep = is_simple(alg, seed);
    switch (rep.verdict) {
    case SimplicityReport::Verdict::Simple:
        rec.verdict = "pass";
        rec.data = {{"simple", true}, {"derived_full", rep.derived_full}};
        rec.data["detail"] = "derived subalgebra is everything; adjoint module irreducible";
        break;
    case SimplicityReport::Verdict::NotSimple:
        rec.verdict = "fail";
        rec.data = {{"simple", false}, {"derived_full", rep.derived_full}};
        if (rep.ideal_witness)
            rec.data["ideal_witness"] = subspace_json(*rep.ideal_witness);
        break;
    case SimplicityReport::Verdict::Inconclusive:
        rec.verdict = "inconclusive";
        rec.data = {{"detail", "meataxe iteration cap exceeded"}};
        break;
    }
    rec.elapsed_ms = ms_since(start);
    return rec;
}

CheckRecord check_central(const AlgebraStructure& alg, std::uint64_t seed) {
    const auto start = Clock::now();
    CheckRecord rec;
    rec.check_name = "central";
    rec.seed = seed;
    const DimensionReport rep = centralizer_dimension(adjoint_rep(alg), seed);
    if (!rep.dimension) {
        rec.verdict = "inconclusive";
        rec.data = {{"detail", rep.note}};
    } else {
        rec.verdict = (*rep.dimension == 1) ? "pass" : "fail";
        rec.data = {{"centralizer_dimension", *rep.dimension},
                    {"detail", "centralizer dimension " + std::to_string(*rep.dimension)}};
    }
    rec.elapsed_ms = ms_since(start);
    return rec;
}

CheckRecord check_form(const AlgebraStructure& alg, std::uint64_t seed,
                       const std::optional<std::string>& dump_path = std::nullopt) {
    const auto start = Clock::now();
    CheckRecord rec;
    rec.check_name = "form";
    rec.seed = seed;
    const FormSpaceReport rep = invariant_symmetric_forms(alg, seed);
    if (!rep.forms) {
        rec.verdict = "inconclusive";
        rec.data = {{"detail", rep.note}};
    } else {
        const FormSpace& forms = *rep.forms;
        rec.verdict = forms.dim() > 0 ? "present" : "absent";
        rec.data = {{"form_space_dimension", forms.dim()}, {"ranks", forms.ranks}};
        std::string detail = "symmetric invariant form space has dimension " +
                             std::to_string(forms.dim());
        if (forms.dim() == 1)
            detail += ", rank " + std::to_string(forms.ranks[0]) +
                      (forms.ranks[0] == alg.dim() ? " (nondegenerate)" : " (degenerate)");
        rec.data["detail"] = detail;
        if (dump_path) {
            std::ofstream out(*dump_path, std::ios::binary);
            if (!out)
                throw IoError("cannot open " + *dump_path + " for writing");
            for (std::size_t i = 0; i < forms.basis.size(); ++i)
                out << forms.basis[i].dump("FORM", alg.name() + "_form" + std::to_string(i));
            if (!out)
                throw IoError("write failed for " + *dump_path);
        }
    }
    rec.elapsed_ms = ms_since(start);
    return rec;
}

} // namespace

AlgebraStructure build_named_algebra(const std::string& name, Scalar coeff_phi, Scalar coeff_psi) {
    if (name == "P")
        return build_P();
    if (name == "D")
        return build_D(coeff_phi, coeff_psi);
    if (name == "W13")
        return build_W13();
    if (name.size() > 3 && name.rfind("O(", 0) == 0 && name.back() == ')') {
        std::vector<unsigned> heights;
        std::istringstream in(name.substr(2, name.size() - 3));
        std::string part;
        while (std::getline(in, part, ',')) {
            try {
                const unsigned long m = std::stoul(part);
                if (m == 0 || m > 5)
                    throw UsageError("height out of range in '" + name + "'");
                heights.push_back(static_cast<unsigned>(m));
            } catch (const UsageError&) {
                throw;
            } catch (const std::exception&) {
                throw UsageError("cannot parse heights in '" + name + "'");
            }
        }
        if (heights.empty())
            throw UsageError("empty height list in '" + name + "'");
        unsigned total = 0;
        for (unsigned m : heights)
            total += m;
        if (total > 5)
            throw UsageError("divided powers algebra too large (p^" + std::to_string(total) +
                             " > 3125)");
        return divided_powers_multi(PrimeField(5), heights);
    }
    throw UsageError("unknown algebra '" + name + "' (expected P, D, W13 or O(m1,m2,...))");
}

AlgebraStructure load_algebra_dump(const std::filesystem::path& path) {
    try {
        return AlgebraStructure::load_dump(path);
    } catch (const std::exception& e) {
        throw IoError(e.what());
    }
}

std::vector<CheckKind> parse_checks(const std::string& csv) {
    std::vector<CheckKind> kinds;
    std::istringstream in(csv);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (part == "lie")
            kinds.push_back(CheckKind::Lie);
        else if (part == "cocycles")
            kinds.push_back(CheckKind::Cocycles);
        else if (part == "prolong")
            kinds.push_back(CheckKind::Prolong);
        else if (part == "simple")
            kinds.push_back(CheckKind::Simple);
        else if (part == "central")
            kinds.push_back(CheckKind::Central);
        else if (part == "form")
            kinds.push_back(CheckKind::Form);
        else
            throw UsageError("unknown check '" + part + "'");
    }
    if (kinds.empty())
        throw UsageError("empty checks list");
    return kinds;
}

VerificationReport run_verify(const VerifyOptions& options) {
    const auto start = Clock::now();
    VerificationReport report;
    report.tool_version = kToolVersion;
    report.p = 5;
    report.seed = options.seed;
    report.coeff_phi = options.coeff_phi;
    report.coeff_psi = options.coeff_psi;
    report.exploratory = !(options.coeff_phi == 1 && options.coeff_psi == 2);
    report.timestamp = utc_timestamp();

    const AlgebraStructure alg =
        options.from_dump ? load_algebra_dump(*options.from_dump)
                          : build_named_algebra(options.algebra, options.coeff_phi,
                                                options.coeff_psi);
    report.algebra = alg.name();

    for (CheckKind kind : options.checks) {
        switch (kind) {
        case CheckKind::Lie:
            report.checks.push_back(check_lie(alg));
            break;
        case CheckKind::Cocycles:
            report.checks.push_back(check_cocycles());
            break;
        case CheckKind::Prolong:
            report.checks.push_back(check_prolong(options.coeff_phi, options.coeff_psi));
            break;
        case CheckKind::Simple:
            report.checks.push_back(check_simple(alg, options.seed));
            break;
        case CheckKind::Central:
            report.checks.push_back(check_central(alg, options.seed));
            break;
        case CheckKind::Form:
            report.checks.push_back(check_form(alg, options.seed, options.dump_form_path));
            break;
        }
    }
    report.finalize_overall();
    report.total_elapsed_ms = ms_since(start);
    return report;
}

VerificationReport run_theorem(std::uint64_t seed, Scalar coeff_phi, Scalar coeff_psi) {
    const auto start = Clock::now();
    VerificationReport report;
    report.tool_version = kToolVersion;
    report.p = 5;
    report.algebra = "D";
    report.seed = seed;
    report.coeff_phi = coeff_phi;
    report.coeff_psi = coeff_psi;
    report.exploratory = !(coeff_phi == 1 && coeff_psi == 2);
    report.timestamp = utc_timestamp();

    const DeformationParts& parts = deformation_parts();

    // 1. construction invariants of P
    {
        const auto t0 = Clock::now();
        CheckRecord rec;
        rec.check_name = "construct_p";
        const Subspace center = parts.p.center();
        const AlgebraStructure quotient = parts.p.quotient(center);
        const Subspace derived = quotient.derived_subalgebra();
        const bool ok = parts.p.dim() == 125 && center.dim() == 1 && derived.dim() == 123;
        rec.verdict = ok ? "pass" : "fail";
        rec.data = {{"dim", parts.p.dim()},
                    {"center_dim", center.dim()},
                    {"derived_of_quotient_dim", derived.dim()},
                    {"detail", "dim 125, center dim 1, derived(P/center) dim 123"}};
        rec.elapsed_ms = ms_since(t0);
        report.checks.push_back(std::move(rec));
    }

    // 2. P is a Lie algebra
    {
        CheckRecord rec = check_lie(parts.p);
        rec.check_name = "lie_p";
        report.checks.push_back(std::move(rec));
    }

    // 3. phi and psi are cocycles over P
    {
        CheckRecord rec = check_cocycles();
        rec.check_name = "cocycles_p";
        report.checks.push_back(std::move(rec));
    }

    // 4. trivial prolongation
    report.checks.push_back(check_prolong(coeff_phi, coeff_psi));

    // 5. D is a Lie algebra
    AlgebraStructure d = [&] {
        const AlgebraStructure* summands[3] = {&parts.p, &parts.phi, &parts.psi};
        const Scalar coeffs[3] = {1, coeff_phi, coeff_psi};
        AlgebraStructure out = AlgebraStructure::sum_of_structures(summands, coeffs);
        out.rename("D");
        return out;
    }();
    {
        CheckRecord rec = check_lie(d);
        rec.check_name = "lie_d";
        report.checks.push_back(std::move(rec));
    }

    // 6-7. central simplicity
    {
        CheckRecord rec = check_simple(d, seed);
        rec.check_name = "simple_d";
        report.checks.push_back(std::move(rec));
    }
    {
        CheckRecord rec = check_central(d, seed);
        rec.check_name = "central_d";
        report.checks.push_back(std::move(rec));
    }

    // 8. unique nondegenerate symmetric invariant form on D
    {
        const auto t0 = Clock::now();
        CheckRecord rec;
        rec.check_name = "form_d";
        rec.seed = seed;
        const FormSpaceReport rep = invariant_symmetric_forms(d, seed);
        if (!rep.forms) {
            rec.verdict = "inconclusive";
            rec.data = {{"detail", rep.note}};
        } else {
            const bool ok = rep.forms->dim() == 1 && rep.forms->ranks[0] == d.dim();
            rec.verdict = ok ? "pass" : "fail";
            rec.data = {{"form_space_dimension", rep.forms->dim()},
                        {"ranks", rep.forms->ranks},
                        {"detail", "form space dim 1, rank 125 (nondegenerate, unique up to scalar)"}};
        }
        rec.elapsed_ms = ms_since(t0);
        report.checks.push_back(std::move(rec));
    }

    // 9. control: W_1(3) has no symmetric invariant form
    {
        const auto t0 = Clock::now();
        CheckRecord rec;
        rec.check_name = "form_w13_control";
        rec.seed = seed;
        const AlgebraStructure w13 = build_W13();
        const FormSpaceReport rep = invariant_symmetric_forms(w13, seed);
        if (!rep.forms) {
            rec.verdict = "inconclusive";
            rec.data = {{"detail", rep.note}};
        } else {
            rec.verdict = rep.forms->dim() == 0 ? "pass" : "fail";
            rec.data = {{"form_space_dimension", rep.forms->dim()},
                        {"detail", "W13 symmetric invariant form space has dimension 0"}};
        }
        rec.elapsed_ms = ms_since(t0);
        report.checks.push_back(std::move(rec));
    }

    report.finalize_overall();
    report.total_elapsed_ms = ms_since(start);
    if (report.overall) {
        report.conclusion =
            "D is a simple 125-dimensional Lie algebra over GF(5) carrying a nonzero symmetric "
            "invariant bilinear form (unique up to scalar, nondegenerate); by the classification "
            "of 125-dimensional simple Lie algebras in characteristic 5 it is isomorphic to the "
            "Melikyan algebra M(1,1).";
    }
    return report;
}

int exit_code_for(const VerificationReport& report) {
    if (report.any_inconclusive())
        return 4;
    return report.overall ? 0 : 1;
}

} // namespace modlie
