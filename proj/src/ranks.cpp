#include "chowfm/ranks.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>
#include <unordered_map>

#include "chowfm/errors.hpp"

namespace chowfm {

namespace {

constexpr std::uint32_t kNoPivot = 0xFFFFFFFFu;

// Byte-string key of an exponent vector; exponents stay far below 256 at
// any size the monomial cap admits.
using MonomialKey = std::string;

MonomialKey key_of(const std::vector<Monomial::Exponent>& exps) {
    MonomialKey k(exps.size(), '\0');
    for (std::size_t i = 0; i < exps.size(); ++i) k[i] = static_cast<char>(exps[i]);
    return k;
}

void enumerate(const VarTable& vars, std::size_t i, int remaining, std::vector<Monomial::Exponent>& exps,
               std::vector<Monomial>& out, std::size_t cap) {
    const Variable& v = vars[i];
    int max_e = remaining / v.degree;
    if (v.cap != 0) max_e = std::min(max_e, v.cap - 1);
    if (i + 1 == vars.size()) {
        if (remaining % v.degree != 0 || remaining / v.degree > max_e) return;
        exps[i] = static_cast<Monomial::Exponent>(remaining / v.degree);
        out.emplace_back(vars, exps);
        exps[i] = 0;
        if (out.size() > cap) {
            throw SizeCapError("more than " + std::to_string(cap) + " monomials in one degree");
        }
        return;
    }
    for (int e = 0; e <= max_e; ++e) {
        exps[i] = static_cast<Monomial::Exponent>(e);
        enumerate(vars, i + 1, remaining - e * v.degree, exps, out, cap);
    }
    exps[i] = 0;
}

std::vector<Monomial> monomials_unchecked(const VarTable& vars, int k, std::size_t cap) {
    std::vector<Monomial> out;
    if (k < 0) return out;
    if (vars.size() == 0) {
        if (k == 0) out.push_back(Monomial::one(vars));
        return out;
    }
    std::vector<Monomial::Exponent> exps(vars.size(), 0);
    enumerate(vars, 0, k, exps, out, cap);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

struct FlatTerm {
    std::vector<Monomial::Exponent> exps;
    Integer coeff;
};

std::vector<FlatTerm> flatten(const Poly& p) {
    std::vector<FlatTerm> out;
    out.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) out.push_back({m.exponents(), c});
    return out;
}

void make_primitive(SparseRow& row) {
    if (row.empty()) return;
    Integer g = abs(row.front().value);
    for (std::size_t i = 1; i < row.size() && g != 1; ++i) g = gcd(g, row[i].value);
    if (g != 1) {
        for (auto& e : row) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
    }
    if (row.front().value < 0) {
        for (auto& e : row) e.value = -e.value;
    }
}

/// Monomial bases by degree for one variable table, built lazily.
class BasisCache {
  public:
    BasisCache(const VarTable& vars, std::size_t cap) : vars_(vars), cap_(cap) {}

    const std::vector<Monomial>& monomials(int k) {
        auto it = lists_.find(k);
        if (it == lists_.end()) it = lists_.emplace(k, monomials_unchecked(vars_, k, cap_)).first;
        return it->second;
    }

    const std::unordered_map<MonomialKey, std::uint32_t>& index(int k) {
        auto it = index_.find(k);
        if (it == index_.end()) {
            std::unordered_map<MonomialKey, std::uint32_t> idx;
            const auto& list = monomials(k);
            idx.reserve(list.size());
            for (std::size_t c = 0; c < list.size(); ++c) idx.emplace(key_of(list[c].exponents()), static_cast<std::uint32_t>(c));
            it = index_.emplace(k, std::move(idx)).first;
        }
        return it->second;
    }

    const VarTable& vars() const { return vars_; }

  private:
    const VarTable& vars_;
    std::size_t cap_;
    std::map<int, std::vector<Monomial>> lists_;
    std::map<int, std::unordered_map<MonomialKey, std::uint32_t>> index_;
};

/// Rows g*m for every generator g (of degree <= k) and monomial m of degree k - deg g.
void append_rows(BasisCache& cache, int k, const std::vector<Poly>& gens, std::vector<SparseRow>& rows) {
    const VarTable& vars = cache.vars();
    const auto& target = cache.index(k);
    std::vector<Monomial::Exponent> scratch(vars.size());
    for (const Poly& g : gens) {
        if (g.is_zero() || g.degree() > k) continue;
        const auto flat = flatten(g);
        for (const Monomial& m : cache.monomials(k - g.degree())) {
            SparseRow row;
            row.reserve(flat.size());
            for (const FlatTerm& t : flat) {
                bool capped = false;
                for (std::size_t i = 0; i < scratch.size(); ++i) {
                    scratch[i] = static_cast<Monomial::Exponent>(t.exps[i] + m[i]);
                    if (vars[i].cap != 0 && scratch[i] >= vars[i].cap) capped = true;
                }
                if (capped) continue;
                row.push_back({target.at(key_of(scratch)), t.coeff});
            }
            if (row.empty()) continue;
            std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
            rows.push_back(std::move(row));
        }
    }
}

void check_homogeneous(const std::vector<Poly>& gens, const VarTablePtr& vars, const char* what) {
    for (const Poly& g : gens) {
        if (!(g.vars() == vars || *g.vars() == *vars)) {
            throw StructuralError(std::string(what) + ": generator lives over a different table");
        }
        if (!g.is_homogeneous()) throw DegreeError(std::string(what) + ": generator is not homogeneous: " + g.to_string());
    }
}

void insert_all(Echelon& ech, std::vector<SparseRow> rows) {
    // Short rows first keeps fill-in low.
    std::sort(rows.begin(), rows.end(), [](const SparseRow& a, const SparseRow& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.front().col < b.front().col;
    });
    for (auto& r : rows) {
        if (ech.rank() == ech.cols()) break;
        ech.insert(std::move(r));
    }
}

SparseRow coordinates_in(BasisCache& cache, int k, const Poly& f) {
    const auto& idx = cache.index(k);
    SparseRow row;
    for (const auto& [m, c] : f.terms()) row.push_back({idx.at(key_of(m.exponents())), c});
    std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    return row;
}

} // namespace

// ---------------------------------------------------------------- RankTable

bool RankTable::is_palindromic() const {
    for (std::size_t k = 0; k < ranks.size(); ++k)
        if (ranks[k] != ranks[ranks.size() - 1 - k]) return false;
    return true;
}

std::string RankTable::to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < ranks.size(); ++k) s += (k ? "," : "") + std::to_string(ranks[k]);
    return s + ")";
}

// ---------------------------------------------------------------- Echelon

Echelon::Echelon(std::size_t ncols) : pivot_(ncols, kNoPivot) {}

void Echelon::reduce(SparseRow& row) const {
    SparseRow out;
    Integer a, b, g;
    while (!row.empty()) {
        const std::uint32_t lead = row.front().col;
        const std::uint32_t pi = pivot_[lead];
        if (pi == kNoPivot) return;
        const SparseRow& piv = rows_[pi];
        // row <- a*row - b*piv with a, b the cofactors that cancel the lead.
        a = piv.front().value;
        b = row.front().value;
        g = gcd(a, b);
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());

        out.clear();
        out.reserve(row.size() + piv.size());
        std::size_t i = 1, j = 1;
        while (i < row.size() || j < piv.size()) {
            if (j == piv.size() || (i < row.size() && row[i].col < piv[j].col)) {
                out.push_back({row[i].col, a * row[i].value});
                ++i;
            } else if (i == row.size() || piv[j].col < row[i].col) {
                out.push_back({piv[j].col, -b * piv[j].value});
                ++j;
            } else {
                Integer v = a * row[i].value;
                mpz_submul(v.get_mpz_t(), b.get_mpz_t(), piv[j].value.get_mpz_t());
                if (v != 0) out.push_back({row[i].col, std::move(v)});
                ++i;
                ++j;
            }
        }
        row.swap(out);
        make_primitive(row);
    }
}

bool Echelon::insert(SparseRow row) {
    reduce(row);
    if (row.empty()) return false;
    make_primitive(row);
    pivot_[row.front().col] = static_cast<std::uint32_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

bool Echelon::contains(SparseRow row) const {
    reduce(row);
    return row.empty();
}

// ---------------------------------------------------------------- spans and ranks

std::vector<Monomial> monomials_of_degree(const Presentation& p, int k, const RankOptions& opts) {
    if (k < 0 || k > p.top_degree()) {
        throw ArgumentError("degree " + std::to_string(k) + " outside 0.." + std::to_string(p.top_degree()));
    }
    return monomials_unchecked(*p.vars(), k, opts.monomial_cap);
}

DegreeSpan degree_span(const Presentation& p, int k, std::span<const Poly> extra, const RankOptions& opts) {
    std::vector<Poly> gens(extra.begin(), extra.end());
    check_homogeneous(gens, p.vars(), "degree_span");
    BasisCache cache(*p.vars(), opts.monomial_cap);
    DegreeSpan span{k, cache.monomials(k), {}};
    append_rows(cache, k, p.relations(), span.rows);
    append_rows(cache, k, gens, span.rows);
    return span;
}

SparseRow coordinates(const DegreeSpan& span, const Poly& f) {
    if (!f.is_homogeneous_of(span.degree)) throw DegreeError("coordinates: polynomial is not of degree " + std::to_string(span.degree));
    SparseRow row;
    for (const auto& [m, c] : f.terms()) {
        auto it = std::lower_bound(span.basis.begin(), span.basis.end(), m, std::greater<>());
        if (it == span.basis.end() || !(*it == m)) throw StructuralError("monomial outside the degree basis");
        row.push_back({static_cast<std::uint32_t>(it - span.basis.begin()), c});
    }
    std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    return row;
}

RankTable graded_ranks(const Presentation& p, const RankOptions& opts) {
    BasisCache cache(*p.vars(), opts.monomial_cap);
    RankTable table;
    for (int k = 0; k <= p.top_degree(); ++k) {
        const std::size_t ncols = cache.monomials(k).size();
        std::vector<SparseRow> rows;
        append_rows(cache, k, p.relations(), rows);
        Echelon ech(ncols);
        insert_all(ech, std::move(rows));
        table.ranks.push_back(static_cast<std::int64_t>(ncols - ech.rank()));
    }
    return table;
}

RankTable ideal_ranks(const Presentation& p, const std::vector<Poly>& gens, const RankOptions& opts) {
    check_homogeneous(gens, p.vars(), "ideal_ranks");
    BasisCache cache(*p.vars(), opts.monomial_cap);
    RankTable table;
    for (int k = 0; k <= p.top_degree(); ++k) {
        std::vector<SparseRow> rows;
        append_rows(cache, k, p.relations(), rows);
        Echelon ech(cache.monomials(k).size());
        insert_all(ech, std::move(rows));
        const std::size_t before = ech.rank();
        std::vector<SparseRow> extra;
        append_rows(cache, k, gens, extra);
        insert_all(ech, std::move(extra));
        table.ranks.push_back(static_cast<std::int64_t>(ech.rank() - before));
    }
    return table;
}

bool membership(const Presentation& p, const std::vector<Poly>& gens, const Poly& f, const RankOptions& opts) {
    check_homogeneous(gens, p.vars(), "membership");
    if (!(f.vars() == p.vars() || *f.vars() == *p.vars())) throw StructuralError("membership: f lives over a different table");
    if (!f.is_homogeneous()) throw DegreeError("membership: f is not homogeneous: " + f.to_string());
    if (f.is_zero()) return true;
    const int k = f.degree();
    BasisCache cache(*p.vars(), opts.monomial_cap);
    std::vector<SparseRow> rows;
    append_rows(cache, k, p.relations(), rows);
    append_rows(cache, k, gens, rows);
    Echelon ech(cache.monomials(k).size());
    insert_all(ech, std::move(rows));
    return ech.contains(coordinates_in(cache, k, f));
}

std::vector<bool> membership_batch(const Presentation& p, const std::vector<Poly>& gens, const std::vector<Poly>& fs,
                                   const RankOptions& opts) {
    check_homogeneous(gens, p.vars(), "membership");
    check_homogeneous(fs, p.vars(), "membership");
    std::map<int, std::vector<std::size_t>> by_degree;
    std::vector<bool> out(fs.size(), true);
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (!fs[i].is_zero()) by_degree[fs[i].degree()].push_back(i);
    BasisCache cache(*p.vars(), opts.monomial_cap);
    for (const auto& [k, which] : by_degree) {
        std::vector<SparseRow> rows;
        append_rows(cache, k, p.relations(), rows);
        append_rows(cache, k, gens, rows);
        Echelon ech(cache.monomials(k).size());
        insert_all(ech, std::move(rows));
        for (std::size_t i : which) out[i] = ech.contains(coordinates_in(cache, k, fs[i]));
    }
    return out;
}

RankTable kernel_ranks(const Presentation& source, const Presentation& target,
                       const std::map<std::string, Poly>& var_images, const RankOptions& opts) {
    const VarTable& src = *source.vars();
    std::vector<Poly> images;
    images.reserve(src.size());
    for (const Variable& v : src.variables()) {
        auto it = var_images.find(v.name);
        if (it == var_images.end()) throw ArgumentError("kernel_ranks: no image for variable " + v.name);
        const Poly& img = it->second;
        if (!(img.vars() == target.vars() || *img.vars() == *target.vars())) {
            throw StructuralError("kernel_ranks: image of " + v.name + " lives over a different table");
        }
        if (!img.is_homogeneous_of(v.degree)) {
            throw DegreeError("kernel_ranks: image of " + v.name + " is not homogeneous of degree " + std::to_string(v.degree));
        }
        images.push_back(img);
    }

    // Well-definedness: every relation, including the implicit caps, must
    // land in the target ideal.
    auto check_lands = [&](const Poly& rel, const std::string& label) {
        const Poly img = substitute(rel, images);
        if (!membership(target, {}, img, opts)) {
            throw MapError("kernel_ranks: relation " + label + " does not map into the target ideal (image " +
                           img.to_string() + ")");
        }
    };
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (src[i].cap == 0) continue;
        std::vector<Monomial::Exponent> e(src.size(), 0);
        e[i] = static_cast<Monomial::Exponent>(src[i].cap);
        // Built by hand: the capped monomial is zero as a normalized Poly.
        Poly img = Poly::constant(target.vars(), 1);
        for (int r = 0; r < src[i].cap; ++r) img = img * images[i];
        if (!membership(target, {}, img, opts)) {
            throw MapError("kernel_ranks: relation " + src[i].name + "^" + std::to_string(src[i].cap) +
                           " does not map into the target ideal (image " + img.to_string() + ")");
        }
    }
    for (const Poly& rel : source.relations()) check_lands(rel, rel.to_string());

    const RankTable source_ranks = graded_ranks(source, opts);
    BasisCache tcache(*target.vars(), opts.monomial_cap);
    BasisCache scache(src, opts.monomial_cap);
    RankTable kernel;
    for (int k = 0; k <= source.top_degree(); ++k) {
        std::vector<SparseRow> rows;
        append_rows(tcache, k, target.relations(), rows);
        Echelon ech(tcache.monomials(k).size());
        insert_all(ech, std::move(rows));
        const std::size_t before = ech.rank();
        std::vector<SparseRow> mapped;
        for (const Monomial& m : scache.monomials(k)) {
            const Poly img = substitute(Poly::term(source.vars(), m, 1), images);
            if (!img.is_zero()) mapped.push_back(coordinates_in(tcache, k, img));
        }
        insert_all(ech, std::move(mapped));
        const auto image_rank = static_cast<std::int64_t>(ech.rank() - before);
        kernel.ranks.push_back(source_ranks[static_cast<std::size_t>(k)] - image_rank);
    }
    return kernel;
}

// ---------------------------------------------------------------- oracle

RankTable product_ranks(int d, int n) {
    if (d < 1 || n < 0) throw ArgumentError("product_ranks needs d >= 1, n >= 0");
    std::vector<std::int64_t> out{1};
    for (int f = 0; f < n; ++f) {
        std::vector<std::int64_t> next(out.size() + static_cast<std::size_t>(d), 0);
        for (std::size_t k = 0; k < out.size(); ++k)
            for (int a = 0; a <= d; ++a) next[k + static_cast<std::size_t>(a)] += out[k];
        out.swap(next);
    }
    return RankTable{std::move(out)};
}

namespace {

using OracleKey = std::tuple<int, int, std::vector<std::uint32_t>>;

std::mutex oracle_mutex;
std::map<OracleKey, RankTable> oracle_cache;

} // namespace

RankTable rank_oracle(int d, int n, const LargeFamily& family) {
    if (family.n() != n) throw ArgumentError("rank_oracle: family lives on a different number of points");
    OracleKey key{d, n, {}};
    for (Subset s : family.members()) std::get<2>(key).push_back(s.bits());
    {
        std::lock_guard lock(oracle_mutex);
        if (auto it = oracle_cache.find(key); it != oracle_cache.end()) return it->second;
    }

    RankTable table = product_ranks(d, n);
    std::set<Subset> processed;
    for (Subset t : canonical_walk(family).steps) {
        const int codim = d * (t.size() - 1);
        const MergeResult merged = merge_family(LargeFamily(n, processed), t);
        const RankTable center = rank_oracle(d, merged.m, merged.family);
        for (int shift = 1; shift < codim; ++shift)
            for (std::size_t k = 0; k < center.size(); ++k) table.ranks.at(k + static_cast<std::size_t>(shift)) += center[k];
        processed.insert(t);
    }

    std::lock_guard lock(oracle_mutex);
    oracle_cache.emplace(std::move(key), table);
    return table;
}

} // namespace chowfm
