#include "modlie/meataxe.hpp"

#include <algorithm>
#include <deque>

namespace modlie {

MatrixRep adjoint_rep(const AlgebraStructure& lie) {
    const std::size_t n = lie.dim();
    MatrixRep rep{lie.field(), n, {}};
    rep.generators.reserve(n);
    Vec col;
    for (std::size_t i = 0; i < n; ++i) {
        Matrix g(lie.field(), n, n);
        for (std::size_t j = 0; j < n; ++j) {
            lie.product_into(i, j, col); // [e_i, e_j]
            for (std::size_t k = 0; k < n; ++k)
                g(k, j) = col[k];
        }
        rep.generators.push_back(std::move(g));
    }
    return rep;
}

MatrixRep transposed_rep(const MatrixRep& rep) {
    MatrixRep out{rep.field, rep.dim, {}};
    out.generators.reserve(rep.generators.size());
    for (const Matrix& g : rep.generators)
        out.generators.push_back(g.transposed());
    return out;
}

MatrixRep dual_rep(const MatrixRep& rep) {
    MatrixRep out{rep.field, rep.dim, {}};
    out.generators.reserve(rep.generators.size());
    const Scalar minus_one = static_cast<Scalar>(rep.field.p() - 1);
    for (const Matrix& g : rep.generators) {
        Matrix t(rep.field, rep.dim, rep.dim);
        t.add_scaled(g.transposed(), minus_one);
        out.generators.push_back(std::move(t));
    }
    return out;
}

Subspace spin(const MatrixRep& rep, std::span<const Vec> seeds) {
    RowSpace rs(rep.field, rep.dim);
    std::deque<Vec> queue;
    for (const Vec& s : seeds) {
        if (s.size() != rep.dim)
            throw std::invalid_argument("spin: seed dimension mismatch");
        if (rs.insert(s))
            queue.push_back(s);
    }
    while (!queue.empty() && !rs.full()) {
        const Vec v = std::move(queue.front());
        queue.pop_front();
        for (const Matrix& g : rep.generators) {
            Vec w = g.apply(v);
            if (rs.insert(w))
                queue.push_back(std::move(w));
            if (rs.full())
                break;
        }
    }
    return Subspace::from_rowspace(rs);
}

namespace {

struct WordUnit {
    Scalar coeff;
    std::vector<unsigned> letters; // generator indices, applied left to right
};

std::vector<WordUnit> random_words(SplitMix64& rng, std::size_t gen_count,
                                   const MeataxeOptions& opts, unsigned p) {
    std::vector<WordUnit> words;
    // empty word: a scalar shift, which keeps random elements generic enough
    // to have small nullity (coefficient may be zero)
    words.push_back(WordUnit{static_cast<Scalar>(rng.below(p)), {}});
    // pool of distinct generator indices
    const std::size_t pool_size = std::min<std::size_t>(opts.generator_pool, gen_count);
    std::vector<unsigned> pool;
    while (pool.size() < pool_size) {
        const unsigned c = static_cast<unsigned>(rng.below(gen_count));
        if (std::find(pool.begin(), pool.end(), c) == pool.end())
            pool.push_back(c);
    }
    for (unsigned u = 0; u < opts.words_per_element; ++u) {
        WordUnit w;
        w.coeff = static_cast<Scalar>(1 + rng.below(p - 1));
        const std::size_t len = 1 + rng.below(opts.max_word_length);
        w.letters.resize(len);
        for (unsigned& l : w.letters)
            l = pool[rng.below(pool.size())];
        words.push_back(std::move(w));
    }
    return words;
}

Matrix evaluate_words(const MatrixRep& rep, const std::vector<WordUnit>& words) {
    Matrix sum(rep.field, rep.dim, rep.dim);
    for (const WordUnit& w : words) {
        if (w.coeff == 0)
            continue;
        if (w.letters.empty()) {
            sum.add_scaled(Matrix::identity(rep.field, rep.dim), w.coeff);
            continue;
        }
        Matrix prod = rep.generators[w.letters[0]];
        for (std::size_t t = 1; t < w.letters.size(); ++t)
            prod = prod * rep.generators[w.letters[t]];
        sum.add_scaled(prod, w.coeff);
    }
    return sum;
}

/// All 1-dimensional subspaces of span(basis): combinations whose first
/// nonzero coefficient is 1, enumerated deterministically.
std::vector<Vec> kernel_rays(const PrimeField& f, const std::vector<Vec>& basis) {
    const std::size_t d = basis.size();
    const std::size_t n = basis.empty() ? 0 : basis[0].size();
    std::vector<Vec> rays;
    std::vector<Scalar> coeff(d, 0);
    for (std::size_t lead = 0; lead < d; ++lead) {
        // coeff[lead] = 1, coeff[<lead] = 0, tail ranges over GF(p)^(d-lead-1)
        std::fill(coeff.begin(), coeff.end(), Scalar{0});
        coeff[lead] = 1;
        const std::size_t tail = d - lead - 1;
        std::size_t total = 1;
        for (std::size_t t = 0; t < tail; ++t)
            total *= f.p();
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rem = idx;
            for (std::size_t t = 0; t < tail; ++t) {
                coeff[lead + 1 + t] = static_cast<Scalar>(rem % f.p());
                rem /= f.p();
            }
            Vec v(n, 0);
            for (std::size_t m = 0; m < d; ++m)
                if (coeff[m] != 0)
                    axpy(f, v, coeff[m], basis[m]);
            rays.push_back(std::move(v));
        }
    }
    return rays;
}

Subspace annihilator(const PrimeField& f, const Subspace& s) {
    RowSpace rows(f, s.ambient_dim());
    for (const Vec& b : s.basis())
        rows.insert(b);
    RowSpace result(f, s.ambient_dim());
    for (const Vec& v : rows.kernel_of_rows())
        result.insert(v);
    return Subspace::from_rowspace(result);
}

bool all_generators_zero(const MatrixRep& rep) {
    for (const Matrix& g : rep.generators)
        if (!g.is_zero())
            return false;
    return true;
}

} // namespace

IrreducibilityReport is_irreducible(const MatrixRep& rep, std::uint64_t seed,
                                    const MeataxeOptions& opts) {
    if (rep.dim == 0)
        throw std::invalid_argument("is_irreducible: module dimension must be positive");
    IrreducibilityReport rep_out;
    rep_out.seed = seed;
    if (rep.dim == 1) {
        rep_out.verdict = IrreducibilityReport::Verdict::Irreducible;
        return rep_out;
    }
    if (rep.generators.empty() || all_generators_zero(rep)) {
        // every subspace is invariant
        Vec e0(rep.dim, 0);
        e0[0] = 1;
        const Vec seeds[1] = {e0};
        rep_out.verdict = IrreducibilityReport::Verdict::Reducible;
        rep_out.witness = spin(rep, seeds);
        return rep_out;
    }

    SplitMix64 rng(seed);
    const MatrixRep trep = transposed_rep(rep);
    unsigned oversized_probes = 0;
    for (unsigned iter = 1; iter <= opts.max_random_elements; ++iter) {
        rep_out.elements_tried = iter;
        const std::vector<WordUnit> words =
            random_words(rng, rep.generators.size(), opts, rep.field.p());
        const Matrix theta = evaluate_words(rep, words);
        const std::vector<Vec> ker = kernel(theta);
        if (ker.empty())
            continue;
        if (ker.size() > opts.max_kernel_rays) {
            // Too many rays to certify irreducibility from this element, but a
            // proper spin of any kernel vector still proves reducibility.
            // Oversized kernels are common precisely on reducible modules
            // whose singular elements cluster at high nullity.
            if (iter <= opts.oversized_probe_delay || oversized_probes >= opts.max_oversized_probes)
                continue;
            ++oversized_probes;
            for (std::size_t probe = 0; probe < std::min<std::size_t>(2, ker.size()); ++probe) {
                const Vec seeds[1] = {ker[probe]};
                Subspace s = spin(rep, seeds);
                if (s.dim() < rep.dim) {
                    rep_out.verdict = IrreducibilityReport::Verdict::Reducible;
                    rep_out.witness = std::move(s);
                    return rep_out;
                }
            }
            continue;
        }
        bool proper_found = false;
        for (const Vec& v : kernel_rays(rep.field, ker)) {
            const Vec seeds[1] = {v};
            Subspace s = spin(rep, seeds);
            if (s.dim() < rep.dim) {
                rep_out.verdict = IrreducibilityReport::Verdict::Reducible;
                rep_out.witness = std::move(s);
                proper_found = true;
                break;
            }
        }
        if (proper_found)
            return rep_out;
        // Norton: every kernel ray generates the whole module; check the dual
        const std::vector<Vec> kerT = kernel(theta.transposed());
        const Vec seeds[1] = {kerT.front()};
        Subspace dual_span = spin(trep, seeds);
        if (dual_span.dim() == rep.dim) {
            rep_out.verdict = IrreducibilityReport::Verdict::Irreducible;
            return rep_out;
        }
        rep_out.verdict = IrreducibilityReport::Verdict::Reducible;
        rep_out.witness = annihilator(rep.field, dual_span);
        return rep_out;
    }
    rep_out.verdict = IrreducibilityReport::Verdict::Inconclusive;
    return rep_out;
}

namespace {

/// Standard basis spun from a single seed vector: basis_matrix columns are
/// b_0 = v, b_t = g(schedule[t].second) b_(schedule[t].first).
struct StandardBasis {
    Matrix basis_matrix;
    std::vector<std::pair<std::size_t, std::size_t>> schedule; // (parent, generator)
    bool full = false;
};

StandardBasis spin_standard_basis(const MatrixRep& rep, const Vec& seed_vec) {
    RowSpace rs(rep.field, rep.dim);
    std::vector<Vec> basis;
    StandardBasis out{Matrix(rep.field, rep.dim, rep.dim), {}, false};
    if (!rs.insert(seed_vec))
        return out;
    basis.push_back(seed_vec);
    out.schedule.emplace_back(0, 0); // placeholder for the seed
    for (std::size_t t = 0; t < basis.size() && !rs.full(); ++t) {
        for (std::size_t g = 0; g < rep.generators.size(); ++g) {
            Vec w = rep.generators[g].apply(basis[t]);
            if (rs.insert(w)) {
                basis.push_back(std::move(w));
                out.schedule.emplace_back(t, g);
                if (rs.full())
                    break;
            }
        }
    }
    if (basis.size() != rep.dim)
        return out;
    for (std::size_t t = 0; t < basis.size(); ++t)
        for (std::size_t r = 0; r < rep.dim; ++r)
            out.basis_matrix(r, t) = basis[t][r];
    out.full = true;
    return out;
}

struct HomSpaceResult {
    std::optional<std::vector<Matrix>> basis;
    std::string note;
};

/// Basis of { Phi : Phi rho(g) = sigma(g) Phi for all g }, where rho acts on
/// an irreducible module.  A singular envelope element theta pins the image
/// of a cyclic vector v (Phi v lies in ker theta_sigma); transporting each
/// kernel vector along the spin schedule turns equivariance into a small
/// linear system over the kernel coordinates.
HomSpaceResult hom_space(const MatrixRep& rho, const MatrixRep& sigma, std::uint64_t seed,
                         const MeataxeOptions& opts) {
    HomSpaceResult result;
    if (rho.dim != sigma.dim || rho.generators.size() != sigma.generators.size()) {
        result.note = "shape mismatch between the two modules";
        return result;
    }
    if (rho.generators.empty()) {
        result.note = "module has no acting generators";
        return result;
    }
    const std::size_t n = rho.dim;
    const unsigned p = rho.field.p();
    SplitMix64 rng(seed);
    for (unsigned iter = 1; iter <= opts.max_random_elements; ++iter) {
        const std::vector<WordUnit> words = random_words(rng, rho.generators.size(), opts, p);
        const Matrix theta = evaluate_words(rho, words);
        const std::vector<Vec> ker = kernel(theta);
        if (ker.empty() || ker.size() > 6)
            continue;
        const StandardBasis sb = spin_standard_basis(rho, ker.front());
        if (!sb.full) {
            result.note = "module is not irreducible (cyclic vector failed to spin)";
            return result;
        }
        const std::optional<Matrix> binv = inverse(sb.basis_matrix);
        if (!binv)
            return result; // cannot happen for a full spin; defensive
        const Matrix theta_sigma = evaluate_words(sigma, words);
        const std::vector<Vec> ker_sigma = kernel(theta_sigma);
        if (ker_sigma.empty()) {
            result.basis = std::vector<Matrix>{};
            return result;
        }
        // transport each candidate image along the schedule
        const std::size_t m = ker_sigma.size();
        std::vector<Matrix> candidates;
        candidates.reserve(m);
        for (const Vec& u : ker_sigma) {
            std::vector<Vec> imgs(n);
            imgs[0] = u;
            for (std::size_t t = 1; t < n; ++t)
                imgs[t] = sigma.generators[sb.schedule[t].second].apply(imgs[sb.schedule[t].first]);
            Matrix img(rho.field, n, n);
            for (std::size_t t = 0; t < n; ++t)
                for (std::size_t r = 0; r < n; ++r)
                    img(r, t) = imgs[t][r];
            candidates.push_back(img * *binv);
        }
        // solve sum_m alpha_m Phi_m equivariant over alpha
        RowSpace alpha_rows(rho.field, m);
        Vec row(m);
        for (std::size_t g = 0; g < rho.generators.size() && alpha_rows.rank() < m; ++g) {
            std::vector<Matrix> residues;
            residues.reserve(m);
            for (const Matrix& phi : candidates)
                residues.push_back(phi * rho.generators[g] - sigma.generators[g] * phi);
            for (std::size_t a = 0; a < n && alpha_rows.rank() < m; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    bool nonzero = false;
                    for (std::size_t c = 0; c < m; ++c) {
                        row[c] = residues[c](a, b);
                        nonzero = nonzero || row[c] != 0;
                    }
                    if (nonzero)
                        alpha_rows.insert(row);
                    if (alpha_rows.rank() == m)
                        break;
                }
        }
        std::vector<Matrix> basis;
        for (const Vec& alpha : alpha_rows.kernel_of_rows()) {
            Matrix phi(rho.field, n, n);
            for (std::size_t c = 0; c < m; ++c)
                if (alpha[c] != 0)
                    phi.add_scaled(candidates[c], alpha[c]);
            basis.push_back(std::move(phi));
        }
        result.basis = std::move(basis);
        return result;
    }
    result.note = "no singular element of small nullity found within the iteration cap";
    return result;
}

/// Scales the matrix so its first nonzero entry (row-major) is 1.
void normalize_leading(Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0) {
                const Scalar inv = m.field().inv(m(r, c));
                if (inv != 1) {
                    Matrix scaled(m.field(), m.rows(), m.cols());
                    scaled.add_scaled(m, inv);
                    m = std::move(scaled);
                }
                return;
            }
}

std::size_t matrix_rank(const Matrix& m) { return rref(m).rank; }

} // namespace

DimensionReport centralizer_dimension(const MatrixRep& rep, std::uint64_t seed,
                                      const MeataxeOptions& opts) {
    DimensionReport out;
    out.seed = seed;
    const std::size_t n = rep.dim;
    const std::size_t unknowns = n * n;
    if (unknowns <= opts.dense_unknown_limit) {
        // rows of (g M - M g)(a,b) = 0 over the n^2 unknowns M(l,c)
        RowSpace rows(rep.field, unknowns);
        Vec row(unknowns);
        for (const Matrix& g : rep.generators) {
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    std::fill(row.begin(), row.end(), Scalar{0});
                    bool nonzero = false;
                    for (std::size_t l = 0; l < n; ++l) {
                        if (g(a, l) != 0) {
                            row[l * n + b] = rep.field.add(row[l * n + b], g(a, l));
                            nonzero = true;
                        }
                        if (g(l, b) != 0) {
                            row[a * n + l] = rep.field.sub(row[a * n + l], g(l, b));
                            nonzero = true;
                        }
                    }
                    if (nonzero)
                        rows.insert(row);
                }
        }
        out.dimension = unknowns - rows.rank();
        return out;
    }
    const IrreducibilityReport irr = is_irreducible(rep, seed, opts);
    if (irr.verdict == IrreducibilityReport::Verdict::Inconclusive) {
        out.note = "irreducibility test inconclusive";
        return out;
    }
    if (irr.verdict == IrreducibilityReport::Verdict::Reducible) {
        out.note = "module is reducible and too large for the dense centralizer solver";
        return out;
    }
    const HomSpaceResult hom = hom_space(rep, rep, seed, opts);
    if (!hom.basis) {
        out.note = hom.note;
        return out;
    }
    out.dimension = hom.basis->size();
    return out;
}

SimplicityReport is_simple(const AlgebraStructure& lie, std::uint64_t seed,
                           const MeataxeOptions& opts) {
    if (lie.dim() < 2)
        throw std::invalid_argument("is_simple: dimension must be at least 2");
    SimplicityReport out;
    out.seed = seed;
    const Subspace derived = lie.derived_subalgebra();
    out.derived_full = derived.dim() == lie.dim();
    if (!out.derived_full) {
        out.verdict = SimplicityReport::Verdict::NotSimple;
        if (derived.dim() > 0) {
            out.ideal_witness = derived; // [L, [L,L]] lies in [L,L]
        } else {
            // abelian: any line is an ideal
            Vec e0(lie.dim(), 0);
            e0[0] = 1;
            const Vec seeds[1] = {e0};
            out.ideal_witness = spin(adjoint_rep(lie), seeds);
        }
        return out;
    }
    const IrreducibilityReport irr = is_irreducible(adjoint_rep(lie), seed, opts);
    switch (irr.verdict) {
    case IrreducibilityReport::Verdict::Irreducible:
        out.verdict = SimplicityReport::Verdict::Simple;
        break;
    case IrreducibilityReport::Verdict::Reducible:
        out.verdict = SimplicityReport::Verdict::NotSimple;
        out.ideal_witness = irr.witness;
        break;
    case IrreducibilityReport::Verdict::Inconclusive:
        out.verdict = SimplicityReport::Verdict::Inconclusive;
        break;
    }
    return out;
}

FormSpaceReport invariant_symmetric_forms(const AlgebraStructure& lie, std::uint64_t seed,
                                          const MeataxeOptions& opts) {
    FormSpaceReport out;
    out.seed = seed;
    if (!lie.check_anticommutative().ok)
        throw std::invalid_argument("invariant_symmetric_forms: structure is not anticommutative");
    const std::size_t n = lie.dim();
    const MatrixRep rep = adjoint_rep(lie);
    const std::size_t unknowns = n * (n + 1) / 2;

    const auto tri_index = [n](std::size_t i, std::size_t j) {
        // i <= j; row-major upper triangle
        return i * n - i * (i - 1) / 2 + (j - i);
    };

    if (unknowns <= opts.dense_unknown_limit) {
        RowSpace rows(lie.field(), unknowns);
        Vec row(unknowns);
        for (const Matrix& g : rep.generators) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    // (g^T G + G g)(i,j) = sum_l g(l,i) G(l,j) + g(l,j) G(i,l)
                    std::fill(row.begin(), row.end(), Scalar{0});
                    bool nonzero = false;
                    for (std::size_t l = 0; l < n; ++l) {
                        if (g(l, i) != 0) {
                            const std::size_t v = tri_index(std::min(l, j), std::max(l, j));
                            row[v] = lie.field().add(row[v], g(l, i));
                            nonzero = true;
                        }
                        if (g(l, j) != 0) {
                            const std::size_t v = tri_index(std::min(i, l), std::max(i, l));
                            row[v] = lie.field().add(row[v], g(l, j));
                            nonzero = true;
                        }
                    }
                    if (nonzero)
                        rows.insert(row);
                }
        }
        FormSpace forms;
        for (const Vec& sol : rows.kernel_of_rows()) {
            Matrix form(lie.field(), n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    form(i, j) = sol[tri_index(i, j)];
                    form(j, i) = form(i, j);
                }
            normalize_leading(form);
            forms.ranks.push_back(matrix_rank(form));
            forms.basis.push_back(std::move(form));
        }
        out.forms = std::move(forms);
        return out;
    }

    const IrreducibilityReport irr = is_irreducible(rep, seed, opts);
    if (irr.verdict == IrreducibilityReport::Verdict::Inconclusive) {
        out.note = "irreducibility test inconclusive";
        return out;
    }
    if (irr.verdict == IrreducibilityReport::Verdict::Reducible) {
        out.note = "adjoint module is reducible and too large for the dense form solver";
        return out;
    }
    const HomSpaceResult hom = hom_space(rep, dual_rep(rep), seed, opts);
    if (!hom.basis) {
        out.note = hom.note;
        return out;
    }
    // symmetric part of the hom space: solve over the hom coordinates
    const std::vector<Matrix>& homs = *hom.basis;
    const std::size_t m = homs.size();
    FormSpace forms;
    if (m > 0) {
        RowSpace rows(lie.field(), m);
        Vec row(m);
        for (std::size_t a = 0; a < n && rows.rank() < m; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                bool nonzero = false;
                for (std::size_t c = 0; c < m; ++c) {
                    row[c] = lie.field().sub(homs[c](a, b), homs[c](b, a));
                    nonzero = nonzero || row[c] != 0;
                }
                if (nonzero)
                    rows.insert(row);
                if (rows.rank() == m)
                    break;
            }
        for (const Vec& alpha : rows.kernel_of_rows()) {
            Matrix form(lie.field(), n, n);
            for (std::size_t c = 0; c < m; ++c)
                if (alpha[c] != 0)
                    form.add_scaled(homs[c], alpha[c]);
            normalize_leading(form);
            forms.ranks.push_back(matrix_rank(form));
            forms.basis.push_back(std::move(form));
        }
    }
    out.forms = std::move(forms);
    return out;
}

} // namespace modlie
