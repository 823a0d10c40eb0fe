#include "modlie/algebra.hpp"

#include "modlie/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

namespace modlie {

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(PrimeField field, std::size_t ambient) : field_(field), ambient_(ambient) {}

Subspace Subspace::from_vectors(PrimeField field, std::size_t ambient, std::span<const Vec> vectors) {
    RowSpace rs(field, ambient);
    for (const Vec& v : vectors)
        rs.insert(v);
    return from_rowspace(rs);
}

Subspace Subspace::from_rowspace(const RowSpace& rs) {
    Subspace s(rs.field(), rs.ambient());
    s.basis_ = rs.basis();
    s.pivots_ = rs.pivots();
    return s;
}

Vec Subspace::reduce(const Vec& v) const {
    if (v.size() != ambient_)
        throw std::invalid_argument("Subspace::reduce: dimension mismatch");
    Vec w = v;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
        const Scalar coef = w[pivots_[r]];
        if (coef == 0)
            continue;
        const Scalar nc = field_.neg(coef);
        for (std::size_t c = 0; c < ambient_; ++c)
            w[c] = field_.add(w[c], field_.mul(nc, basis_[r][c]));
    }
    return w;
}

bool Subspace::contains(const Vec& v) const { return is_zero(reduce(v)); }

// ---------------------------------------------------------------------------
// AlgebraStructure basics

AlgebraStructure::AlgebraStructure(PrimeField field, std::size_t dim, bool skew_storage,
                                   std::string name, std::vector<std::string> labels)
    : field_(field),
      dim_(dim),
      skew_(skew_storage),
      name_(std::move(name)),
      labels_(std::move(labels)),
      slot_(dim * dim, -1) {
    if (dim == 0)
        throw std::invalid_argument("AlgebraStructure: dimension must be positive");
    if (labels_.empty()) {
        labels_.reserve(dim);
        for (std::size_t i = 0; i < dim; ++i)
            labels_.push_back("e" + std::to_string(i));
    }
    if (labels_.size() != dim)
        throw std::invalid_argument("AlgebraStructure: label count must equal dim");
}

AlgebraStructure::AlgebraStructure(const AlgebraStructure& o)
    : field_(o.field_),
      dim_(o.dim_),
      skew_(o.skew_),
      name_(o.name_),
      labels_(o.labels_),
      slot_(o.slot_),
      pool_(o.pool_) {
    flags_.commutative.store(o.flags_.commutative.load());
    flags_.associative.store(o.flags_.associative.load());
    flags_.anticommutative.store(o.flags_.anticommutative.load());
    flags_.jacobi.store(o.flags_.jacobi.load());
}

AlgebraStructure& AlgebraStructure::operator=(const AlgebraStructure& o) {
    if (this == &o)
        return *this;
    field_ = o.field_;
    dim_ = o.dim_;
    skew_ = o.skew_;
    name_ = o.name_;
    labels_ = o.labels_;
    slot_ = o.slot_;
    pool_ = o.pool_;
    flags_.commutative.store(o.flags_.commutative.load());
    flags_.associative.store(o.flags_.associative.load());
    flags_.anticommutative.store(o.flags_.anticommutative.load());
    flags_.jacobi.store(o.flags_.jacobi.load());
    return *this;
}

void AlgebraStructure::set_product(std::size_t i, std::size_t j, const Vec& value) {
    if (i >= dim_ || j >= dim_)
        throw std::out_of_range("set_product: basis index out of range");
    if (value.size() != dim_)
        throw std::invalid_argument("set_product: value vector has wrong length");
    if (skew_ && i >= j)
        throw std::invalid_argument("set_product: skew storage only holds pairs i < j");
    flags_.commutative.store(-1);
    flags_.associative.store(-1);
    flags_.anticommutative.store(-1);
    flags_.jacobi.store(-1);
    const std::size_t key = i * dim_ + j;
    if (is_zero(value)) {
        slot_[key] = -1;
        return;
    }
    if (slot_[key] >= 0) {
        pool_[static_cast<std::size_t>(slot_[key])] = value;
    } else {
        slot_[key] = static_cast<std::int32_t>(pool_.size());
        pool_.push_back(value);
    }
}

void AlgebraStructure::product_into(std::size_t i, std::size_t j, Vec& out) const {
    out.assign(dim_, 0);
    if (i >= dim_ || j >= dim_)
        throw std::out_of_range("product_into: basis index out of range");
    bool negate = false;
    if (skew_) {
        if (i == j)
            return;
        if (i > j) {
            std::swap(i, j);
            negate = true;
        }
    }
    const Vec* v = stored(i, j);
    if (!v)
        return;
    if (!negate) {
        std::copy(v->begin(), v->end(), out.begin());
    } else {
        for (std::size_t k = 0; k < dim_; ++k)
            out[k] = field_.neg((*v)[k]);
    }
}

Vec AlgebraStructure::product(std::size_t i, std::size_t j) const {
    Vec out;
    product_into(i, j, out);
    return out;
}

void AlgebraStructure::add_scaled_product(std::uint32_t* acc, std::size_t i, std::size_t j,
                                          unsigned s) const {
    if (s == 0)
        return;
    if (skew_) {
        if (i == j)
            return;
        if (i > j) {
            std::swap(i, j);
            s = (s * (field_.p() - 1)) % field_.p();
        }
    }
    const Vec* v = stored(i, j);
    if (!v)
        return;
    const Scalar* d = v->data();
    for (std::size_t k = 0; k < dim_; ++k)
        acc[k] += s * unsigned(d[k]);
}

Vec AlgebraStructure::multiply(const Vec& u, const Vec& v) const {
    if (u.size() != dim_ || v.size() != dim_)
        throw std::invalid_argument("multiply: dimension mismatch");
    std::vector<std::uint32_t> acc(dim_, 0);
    const unsigned p = field_.p();
    for (std::size_t i = 0; i < dim_; ++i) {
        if (u[i] == 0)
            continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (v[j] == 0)
                continue;
            const unsigned s = (unsigned(u[i]) * unsigned(v[j])) % p;
            add_scaled_product(acc.data(), i, j, s);
        }
    }
    Vec out(dim_, 0);
    for (std::size_t k = 0; k < dim_; ++k)
        out[k] = static_cast<Scalar>(acc[k] % p);
    return out;
}

void AlgebraStructure::each_entry(
    const std::function<void(std::size_t, std::size_t, const Vec&)>& fn) const {
    Vec scratch;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (skew_ && i >= j) {
                if (i == j)
                    continue;
                const Vec* v = stored(j, i);
                if (!v)
                    continue;
                scratch.assign(dim_, 0);
                for (std::size_t k = 0; k < dim_; ++k)
                    scratch[k] = field_.neg((*v)[k]);
                fn(i, j, scratch);
            } else {
                const Vec* v = stored(i, j);
                if (v)
                    fn(i, j, *v);
            }
        }
}

// ---------------------------------------------------------------------------
// Exhaustive checks

AnticommReport AlgebraStructure::check_anticommutative() const {
    const signed char cached = flags_.anticommutative.load();
    if (cached == 1)
        return AnticommReport{true, std::nullopt};
    AnticommReport rep;
    rep.ok = true;
    Vec a, b;
    for (std::size_t i = 0; i < dim_ && rep.ok; ++i)
        for (std::size_t j = i; j < dim_; ++j) {
            product_into(i, j, a);
            product_into(j, i, b);
            bool bad = false;
            for (std::size_t k = 0; k < dim_; ++k)
                if (field_.add(a[k], b[k]) != 0) {
                    bad = true;
                    break;
                }
            if (bad) {
                rep.ok = false;
                rep.witness = PairWitness{i, j};
                break;
            }
        }
    flags_.anticommutative.store(rep.ok ? 1 : 0);
    return rep;
}

CommAssocReport AlgebraStructure::check_commutative_associative() const {
    CommAssocReport rep;
    rep.commutative = true;
    {
        Vec a, b;
        for (std::size_t i = 0; i < dim_ && rep.commutative; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j) {
                product_into(i, j, a);
                product_into(j, i, b);
                if (a != b) {
                    rep.commutative = false;
                    rep.commutativity_witness = PairWitness{i, j};
                    break;
                }
            }
    }
    // (e_i e_j) e_k vs e_i (e_j e_k), all ordered triples, parallel over i
    struct Slot {
        std::optional<TripleWitness> witness;
    };
    std::vector<Slot> slots(64);
    const unsigned p = field_.p();
    parallel_ranges(dim_, [&](std::size_t begin, std::size_t end, std::size_t slot) {
        Vec w, u;
        std::vector<std::uint32_t> acc(dim_);
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                product_into(i, j, w); // e_i e_j
                for (std::size_t k = 0; k < dim_; ++k) {
                    std::fill(acc.begin(), acc.end(), 0u);
                    for (std::size_t l = 0; l < dim_; ++l)
                        if (w[l] != 0)
                            add_scaled_product(acc.data(), l, k, w[l]); // (e_i e_j) e_k
                    product_into(j, k, u);
                    for (std::size_t l = 0; l < dim_; ++l)
                        if (u[l] != 0)
                            add_scaled_product(acc.data(), i, l, (p - 1u) * u[l] % p);
                    bool bad = false;
                    for (std::size_t m = 0; m < dim_; ++m)
                        if (acc[m] % p != 0) {
                            bad = true;
                            break;
                        }
                    if (bad) {
                        slots[slot].witness = TripleWitness{i, j, k};
                        return;
                    }
                }
            }
        }
    });
    rep.associative = true;
    for (const Slot& s : slots)
        if (s.witness) {
            if (!rep.associativity_witness || std::tie(s.witness->i, s.witness->j, s.witness->k) <
                                                  std::tie(rep.associativity_witness->i,
                                                           rep.associativity_witness->j,
                                                           rep.associativity_witness->k)) {
                rep.associativity_witness = s.witness;
            }
            rep.associative = false;
        }
    flags_.commutative.store(rep.commutative ? 1 : 0);
    flags_.associative.store(rep.associative ? 1 : 0);
    return rep;
}

namespace {

// Splits the outer index of the i<j<k triple scan into chunks of roughly
// equal triple count.
std::vector<std::size_t> balance_triple_outer(std::size_t n, unsigned workers) {
    std::vector<std::size_t> bounds{0};
    if (n < 3) {
        bounds.push_back(n);
        return bounds;
    }
    const double total = double(n) * double(n - 1) * double(n - 2) / 6.0;
    double acc = 0;
    const double target = total / workers;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        acc += double(n - 1 - i) * double(n - 2 - i) / 2.0;
        if (acc >= target * bounds.size() && bounds.back() != i + 1 && bounds.size() < workers)
            bounds.push_back(i + 1);
    }
    bounds.push_back(n);
    return bounds;
}

} // namespace

JacobiReport AlgebraStructure::cyclic_scan() const {
    const std::size_t n = dim_;
    const unsigned p = field_.p();
    const std::vector<std::size_t> bounds = balance_triple_outer(n, worker_count());
    const std::size_t chunks = bounds.size() - 1;
    std::vector<std::optional<TripleWitness>> found(chunks);
    std::vector<std::size_t> counts(chunks, 0);

    auto scan = [&](std::size_t chunk) {
        std::vector<std::uint32_t> acc(n);
        std::size_t count = 0;
        // For i < j < k all three products below are direct table entries in
        // both storage modes, so the inner loop runs without materialization.
        for (std::size_t i = bounds[chunk]; i < bounds[chunk + 1]; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Vec* wij = stored(i, j);
                for (std::size_t k = j + 1; k < n; ++k) {
                    std::fill(acc.begin(), acc.end(), 0u);
                    // [[e_i,e_j],e_k]
                    if (wij)
                        for (std::size_t l = 0; l < n; ++l)
                            if ((*wij)[l] != 0)
                                add_scaled_product(acc.data(), l, k, (*wij)[l]);
                    // [[e_j,e_k],e_i]
                    if (const Vec* wjk = stored(j, k))
                        for (std::size_t l = 0; l < n; ++l)
                            if ((*wjk)[l] != 0)
                                add_scaled_product(acc.data(), l, i, (*wjk)[l]);
                    // [[e_k,e_i],e_j] = -[[e_i,e_k],e_j], valid since the
                    // structure was verified alternating before the scan
                    if (const Vec* wik = stored(i, k))
                        for (std::size_t l = 0; l < n; ++l)
                            if ((*wik)[l] != 0)
                                add_scaled_product(acc.data(), l, j, (p - 1u) * (*wik)[l] % p);
                    ++count;
                    for (std::size_t m = 0; m < n; ++m)
                        if (acc[m] % p != 0) {
                            found[chunk] = TripleWitness{i, j, k};
                            counts[chunk] = count;
                            return;
                        }
                }
            }
        }
        counts[chunk] = count;
    };

    if (chunks <= 1) {
        scan(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(chunks);
        for (std::size_t c = 0; c < chunks; ++c)
            pool.emplace_back(scan, c);
        for (auto& t : pool)
            t.join();
    }

    JacobiReport rep;
    rep.ok = true;
    rep.triples_checked = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        rep.triples_checked += counts[c];
        if (found[c] && (!rep.witness || std::tie(found[c]->i, found[c]->j, found[c]->k) <
                                             std::tie(rep.witness->i, rep.witness->j, rep.witness->k))) {
            rep.witness = found[c];
            rep.ok = false;
        }
    }
    return rep;
}

JacobiReport AlgebraStructure::check_jacobi() const {
    if (!check_anticommutative().ok)
        throw std::invalid_argument("check_jacobi: structure is not anticommutative");
    const signed char cached = flags_.jacobi.load();
    if (cached == 1) {
        JacobiReport rep;
        rep.ok = true;
        rep.triples_checked = dim_ < 3 ? 0 : dim_ * (dim_ - 1) * (dim_ - 2) / 6;
        return rep;
    }
    JacobiReport rep = cyclic_scan();
    flags_.jacobi.store(rep.ok ? 1 : 0);
    return rep;
}

JacobiReport AlgebraStructure::jacobiator() const {
    if (!check_anticommutative().ok)
        throw std::invalid_argument("jacobiator: cochain is not alternating");
    return cyclic_scan();
}

// ---------------------------------------------------------------------------
// Constructions

AlgebraStructure AlgebraStructure::sum_of_structures(
    std::span<const AlgebraStructure* const> structures, std::span<const Scalar> coefficients) {
    if (structures.empty())
        throw std::invalid_argument("sum_of_structures: at least one structure required");
    if (structures.size() != coefficients.size())
        throw std::invalid_argument("sum_of_structures: coefficient count mismatch");
    const AlgebraStructure& first = *structures.front();
    bool all_skew = true;
    for (const AlgebraStructure* s : structures) {
        if (s->dim() != first.dim() || s->field() != first.field())
            throw std::invalid_argument("sum_of_structures: dimension or field mismatch");
        all_skew = all_skew && s->skew_storage();
    }
    const std::size_t n = first.dim();
    const PrimeField& f = first.field();
    AlgebraStructure out(f, n, all_skew, "sum", first.labels());
    Vec acc(n), term;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = (all_skew ? i + 1 : 0); j < n; ++j) {
            std::fill(acc.begin(), acc.end(), Scalar{0});
            bool any = false;
            for (std::size_t s = 0; s < structures.size(); ++s) {
                if (coefficients[s] == 0)
                    continue;
                structures[s]->product_into(i, j, term);
                if (is_zero(term))
                    continue;
                axpy(f, acc, coefficients[s], term);
                any = true;
            }
            if (any && !is_zero(acc))
                out.set_product(i, j, acc);
        }
    }
    return out;
}

AlgebraStructure AlgebraStructure::tensor_product(const AlgebraStructure& a,
                                                  const AlgebraStructure& b) {
    if (a.field() != b.field())
        throw std::invalid_argument("tensor_product: field mismatch");
    const std::size_t na = a.dim(), nb = b.dim();
    const std::size_t n = na * nb;
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            const std::string& la = a.labels()[i];
            const std::string& lb = b.labels()[j];
            labels[i * nb + j] = (la == "1") ? lb : (lb == "1" ? la : la + lb);
        }
    AlgebraStructure out(a.field(), n, false, a.name() + "(x)" + b.name(), std::move(labels));
    Vec value(n);
    a.each_entry([&](std::size_t ia, std::size_t ja, const Vec& va) {
        b.each_entry([&](std::size_t ib, std::size_t jb, const Vec& vb) {
            std::fill(value.begin(), value.end(), Scalar{0});
            for (std::size_t ka = 0; ka < na; ++ka) {
                if (va[ka] == 0)
                    continue;
                for (std::size_t kb = 0; kb < nb; ++kb)
                    if (vb[kb] != 0)
                        value[ka * nb + kb] = a.field().mul(va[ka], vb[kb]);
            }
            out.set_product(ia * nb + ib, ja * nb + jb, value);
        });
    });
    return out;
}

Subspace AlgebraStructure::derived_subalgebra() const {
    RowSpace rs(field_, dim_);
    for (std::size_t i = 0; i < dim_ && !rs.full(); ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (skew_ && j <= i)
                continue; // negated mirror products span the same space
            const Vec* v = stored(i, j);
            if (!v)
                continue;
            rs.insert(*v);
            if (rs.full())
                break;
        }
    return Subspace::from_rowspace(rs);
}

Subspace AlgebraStructure::center() const {
    if (!check_anticommutative().ok)
        throw std::invalid_argument("center: structure is not anticommutative");
    // v is central iff for all j, k: sum_l v_l c_{l j}^k = 0
    RowSpace rs(field_, dim_);
    Vec col;
    Matrix block(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_ && rs.rank() < dim_; ++j) {
        for (std::size_t l = 0; l < dim_; ++l) {
            product_into(l, j, col);
            for (std::size_t k = 0; k < dim_; ++k)
                block(k, l) = col[k];
        }
        Vec row(dim_);
        for (std::size_t k = 0; k < dim_; ++k) {
            bool nonzero = false;
            for (std::size_t l = 0; l < dim_; ++l) {
                row[l] = block(k, l);
                nonzero = nonzero || row[l] != 0;
            }
            if (nonzero)
                rs.insert(row);
        }
    }
    RowSpace result(field_, dim_);
    for (const Vec& v : rs.kernel_of_rows())
        result.insert(v);
    return Subspace::from_rowspace(result);
}

AlgebraStructure AlgebraStructure::quotient(const Subspace& ideal) const {
    if (ideal.ambient_dim() != dim_)
        throw std::invalid_argument("quotient: ambient dimension mismatch");
    // verify [alg, ideal] + [ideal, alg] is contained in the ideal
    Vec w;
    std::vector<std::uint32_t> acc(dim_);
    const unsigned p = field_.p();
    for (const Vec& v : ideal.basis()) {
        for (std::size_t i = 0; i < dim_; ++i) {
            for (int side = 0; side < 2; ++side) {
                std::fill(acc.begin(), acc.end(), 0u);
                for (std::size_t l = 0; l < dim_; ++l)
                    if (v[l] != 0) {
                        if (side == 0)
                            add_scaled_product(acc.data(), i, l, v[l]);
                        else
                            add_scaled_product(acc.data(), l, i, v[l]);
                    }
                w.assign(dim_, 0);
                for (std::size_t k = 0; k < dim_; ++k)
                    w[k] = static_cast<Scalar>(acc[k] % p);
                if (!ideal.contains(w))
                    throw std::invalid_argument("quotient: subspace is not an ideal");
            }
        }
    }
    // complement = non-pivot coordinates of the ideal basis
    std::vector<bool> is_pivot(dim_, false);
    for (std::size_t pc : ideal.pivots())
        is_pivot[pc] = true;
    std::vector<std::size_t> comp;
    for (std::size_t c = 0; c < dim_; ++c)
        if (!is_pivot[c])
            comp.push_back(c);
    if (comp.empty())
        throw std::invalid_argument("quotient: quotient by the whole space is empty");
    const std::size_t qdim = comp.size();
    std::vector<std::string> labels(qdim);
    for (std::size_t c = 0; c < qdim; ++c)
        labels[c] = labels_[comp[c]];
    AlgebraStructure out(field_, qdim, skew_, name_ + "/I", std::move(labels));
    Vec prod, reduced, coords(qdim);
    for (std::size_t a = 0; a < qdim; ++a) {
        for (std::size_t b = (skew_ ? a + 1 : 0); b < qdim; ++b) {
            product_into(comp[a], comp[b], prod);
            reduced = ideal.reduce(prod);
            for (std::size_t c = 0; c < qdim; ++c)
                coords[c] = reduced[comp[c]];
            if (!is_zero(coords))
                out.set_product(a, b, coords);
        }
    }
    return out;
}

std::optional<Vec> AlgebraStructure::find_unit() const {
    // fast path: a basis vector that is a two-sided unit
    Vec w;
    for (std::size_t u = 0; u < dim_; ++u) {
        bool good = true;
        for (std::size_t j = 0; j < dim_ && good; ++j) {
            product_into(u, j, w);
            if (!(w[j] == 1 && std::count(w.begin(), w.end(), 0) == static_cast<long>(dim_ - 1)))
                good = false;
            if (good) {
                product_into(j, u, w);
                if (!(w[j] == 1 && std::count(w.begin(), w.end(), 0) == static_cast<long>(dim_ - 1)))
                    good = false;
            }
        }
        if (good) {
            Vec unit(dim_, 0);
            unit[u] = 1;
            return unit;
        }
    }
    // general: solve sum_i u_i (e_i e_j) = e_j and sum_i u_i (e_j e_i) = e_j
    RowSpace rs(field_, dim_ + 1);
    Vec col, row(dim_ + 1);
    for (std::size_t j = 0; j < dim_; ++j) {
        for (int side = 0; side < 2; ++side) {
            // rows indexed by output coordinate k
            Matrix block(field_, dim_, dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                if (side == 0)
                    product_into(i, j, col);
                else
                    product_into(j, i, col);
                for (std::size_t k = 0; k < dim_; ++k)
                    block(k, i) = col[k];
            }
            for (std::size_t k = 0; k < dim_; ++k) {
                for (std::size_t i = 0; i < dim_; ++i)
                    row[i] = block(k, i);
                row[dim_] = (k == j) ? Scalar{1} : Scalar{0};
                rs.insert(row);
            }
        }
    }
    for (std::size_t r = 0; r < rs.rank(); ++r)
        if (rs.pivots()[r] == dim_)
            return std::nullopt; // inconsistent
    Vec unit(dim_, 0);
    for (std::size_t r = 0; r < rs.rank(); ++r)
        unit[rs.pivots()[r]] = rs.basis()[r][dim_];
    // solution uses zero free variables; validate before trusting it
    for (std::size_t j = 0; j < dim_; ++j) {
        Vec ej(dim_, 0);
        ej[j] = 1;
        if (multiply(unit, ej) != ej || multiply(ej, unit) != ej)
            return std::nullopt;
    }
    return unit;
}

// ---------------------------------------------------------------------------
// Dump format

std::string AlgebraStructure::dump(std::string_view tag) const {
    struct Entry {
        std::size_t i, j, k;
        Scalar v;
    };
    std::vector<Entry> entries;
    each_entry([&](std::size_t i, std::size_t j, const Vec& value) {
        for (std::size_t k = 0; k < dim_; ++k)
            if (value[k] != 0)
                entries.push_back(Entry{i, j, k, value[k]});
    });
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    });
    std::ostringstream out;
    out << tag << " p=" << field_.p() << " dim=" << dim_ << " name=" << name_ << '\n';
    for (const Entry& e : entries)
        out << e.i << ' ' << e.j << ' ' << e.k << ' ' << unsigned(e.v) << '\n';
    return out.str();
}

void AlgebraStructure::write_dump(const std::filesystem::path& path, std::string_view tag) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_dump: cannot open " + path.string());
    out << dump(tag);
    if (!out)
        throw std::runtime_error("write_dump: write failed for " + path.string());
}

AlgebraStructure AlgebraStructure::parse_dump(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("parse_dump: empty input");
    std::istringstream hs(header);
    std::string tag, pfield, dimfield, namefield;
    hs >> tag >> pfield >> dimfield;
    std::getline(hs, namefield);
    if (tag != "SC" && tag != "COCHAIN")
        throw std::runtime_error("parse_dump: unknown header tag '" + tag + "'");
    auto expect_prefix = [](const std::string& s, const char* prefix) {
        const std::string_view pv(prefix);
        if (s.rfind(prefix, 0) != 0)
            throw std::runtime_error("parse_dump: malformed header field '" + s + "'");
        return s.substr(pv.size());
    };
    const unsigned p = static_cast<unsigned>(std::stoul(expect_prefix(pfield, "p=")));
    const std::size_t dim = std::stoul(expect_prefix(dimfield, "dim="));
    std::string name = namefield;
    const auto pos = name.find("name=");
    if (pos == std::string::npos)
        throw std::runtime_error("parse_dump: missing name field");
    name = name.substr(pos + 5);

    AlgebraStructure out(PrimeField(p), dim, false, name);
    std::vector<Vec> rows(dim * dim);
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        long long i, j, k, v;
        if (!(ls >> i >> j >> k >> v))
            throw std::runtime_error("parse_dump: malformed entry at line " + std::to_string(lineno));
        if (i < 0 || j < 0 || k < 0 || std::size_t(i) >= dim || std::size_t(j) >= dim ||
            std::size_t(k) >= dim)
            throw std::runtime_error("parse_dump: index out of range at line " + std::to_string(lineno));
        if (v <= 0 || v >= static_cast<long long>(p))
            throw std::runtime_error("parse_dump: coefficient out of range at line " +
                                     std::to_string(lineno));
        Vec& row = rows[std::size_t(i) * dim + std::size_t(j)];
        if (row.empty())
            row.assign(dim, 0);
        if (row[std::size_t(k)] != 0)
            throw std::runtime_error("parse_dump: duplicate entry at line " + std::to_string(lineno));
        row[std::size_t(k)] = static_cast<Scalar>(v);
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const Vec& row = rows[i * dim + j];
            if (!row.empty())
                out.set_product(i, j, row);
        }
    return out;
}

AlgebraStructure AlgebraStructure::load_dump(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("load_dump: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dump(buf.str());
}

bool AlgebraStructure::same_structure(const AlgebraStructure& o) const {
    if (dim_ != o.dim_ || field_ != o.field_)
        return false;
    Vec a, b;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            product_into(i, j, a);
            o.product_into(i, j, b);
            if (a != b)
                return false;
        }
    return true;
}

} // namespace modlie
