#include "chowfm/present.hpp"

#include <algorithm>

#include "chowfm/errors.hpp"

namespace chowfm {

namespace {

std::vector<Subset> members_of(const LargeFamily& family) {
    return {family.members().begin(), family.members().end()};
}

Poly divisor(const VarTablePtr& vars, Subset s) { return Poly::variable(vars, divisor_var_name(s)); }

void append(std::vector<Poly>& out, const std::vector<Poly>& more) { out.insert(out.end(), more.begin(), more.end()); }

void require_matching(const BaseGeometry& g, const LargeFamily& family) {
    if (g.n != family.n()) {
        throw ArgumentError("geometry has " + std::to_string(g.n) + " points but the family lives on " +
                            std::to_string(family.n()));
    }
}

// Overlap and J_S * D_S relations are shared by both presentations.
void common_families(const BaseGeometry& g, const LargeFamily& family, RelationFamilies& out) {
    const auto members = members_of(family);
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
            if (is_overlap(members[a], members[b]))
                out.overlap.push_back(divisor(out.vars, members[a]) * divisor(out.vars, members[b]));
    for (Subset s : members) {
        const Poly ds = divisor(out.vars, s);
        for (const Poly& gen : diagonal_ideal(g, out.vars, s)) out.diagonal.push_back(gen * ds);
    }
}

} // namespace

std::vector<Poly> RelationFamilies::all() const {
    std::vector<Poly> out;
    append(out, overlap);
    append(out, diagonal);
    append(out, chern);
    append(out, transversal);
    return out;
}

Poly divisor_sum(const VarTablePtr& vars, const LargeFamily& family, const std::function<bool(Subset)>& pred) {
    Poly sum(vars);
    for (Subset v : family.members())
        if (pred(v)) sum += divisor(vars, v);
    return sum;
}

RelationFamilies thm31_families(const BaseGeometry& g, const LargeFamily& family, const BuildOptions& opts) {
    require_matching(g, family);
    RelationFamilies out{VarTable::for_points(g.n, g.d, members_of(family)), {}, {}, {}, {}};
    common_families(g, family, out);

    for (Subset s : family.members()) {
        const Poly sum = divisor_sum(out.vars, family, [s](Subset v) { return s.is_subset_of(v); });
        out.chern.push_back(chern_eval(opts.chern(g, out.vars, s), sum));
    }

    const std::uint32_t full = Subset::full(g.n).bits();
    for (Subset s : family.members()) {
        const Poly ds = divisor(out.vars, s);
        for (std::uint32_t b = 1; b <= full && b != 0; ++b) {
            const Subset other = Subset::from_bits(b);
            if (other.size() < 2 || (s & other).size() != 1) continue;
            const Subset both = s | other;
            const Poly sum = divisor_sum(out.vars, family, [both](Subset v) { return both.is_subset_of(v); });
            out.transversal.push_back(ds * chern_eval(opts.chern(g, out.vars, other), sum));
        }
    }
    return out;
}

Presentation build_thm31(const BaseGeometry& g, const LargeFamily& family, const BuildOptions& opts) {
    auto fam = thm31_families(g, family, opts);
    return Presentation(fam.vars, fam.all(), g.n * g.d);
}

RelationFamilies thm34_families(const BaseGeometry& g) {
    const LargeFamily family = LargeFamily::all_subsets(g.n);
    RelationFamilies out{VarTable::for_points(g.n, g.d, members_of(family)), {}, {}, {}, {}};
    common_families(g, family, out);
    for (int i = 1; i <= g.n; ++i) {
        for (int j = i + 1; j <= g.n; ++j) {
            const Subset pair{i, j};
            const Poly sum = divisor_sum(out.vars, family, [pair](Subset v) { return pair.is_subset_of(v); });
            out.chern.push_back(chern_eval(chern_pair(g, out.vars, i, j), sum));
        }
    }
    return out;
}

Presentation build_thm34(const BaseGeometry& g) {
    auto fam = thm34_families(g);
    return Presentation(fam.vars, fam.all(), g.n * g.d);
}

std::vector<Poly> CoincidenceData::ideal_gens() const {
    std::vector<Poly> out;
    append(out, diagonal_gens);
    append(out, overlap_gens);
    append(out, chern_gens);
    return out;
}

CoincidenceData coincidence_data(const BaseGeometry& g, const VarTablePtr& vars, const LargeFamily& family,
                                 Subset t, int i) {
    require_matching(g, family);
    if (t.size() < 2) throw ArgumentError("coincidence set needs |T| >= 2, got " + t.to_string());
    if (family.contains(t)) {
        throw ArgumentError("coincidence set " + t.to_string() + " does not exist: T is large");
    }
    if (!t.contains(i)) throw ArgumentError("index " + std::to_string(i) + " is not in " + t.to_string());

    std::vector<Poly> overlaps;
    std::vector<Poly> cherns;
    for (Subset s : family.members()) {
        if (is_overlap(s, t)) overlaps.push_back(divisor(vars, s));
        if (t.is_strict_subset_of(s)) {
            const Poly sum = divisor_sum(vars, family, [s](Subset v) { return s.is_subset_of(v); });
            cherns.push_back(chern_eval(chern_set(g, vars, (s - t) | Subset{i}), sum));
        }
    }
    const Poly above = divisor_sum(vars, family, [t](Subset v) { return t.is_strict_subset_of(v); });
    return CoincidenceData{t, diagonal_ideal(g, vars, t), std::move(overlaps), std::move(cherns),
                           chern_shift(chern_set(g, vars, t), above, -1)};
}

CoincidenceData coincidence_data(const BaseGeometry& g, const LargeFamily& family, Subset t, int i) {
    return coincidence_data(g, VarTable::for_points(g.n, g.d, members_of(family)), family, t, i);
}

Presentation keel_step(const Presentation& p, const std::vector<Poly>& ideal, const ChernPoly& chern,
                       const std::string& exceptional_name) {
    const VarTablePtr vars = p.vars()->with_appended({exceptional_name, 1, 0});
    const Poly e = Poly::variable(vars, exceptional_name);
    std::vector<Poly> rels;
    rels.reserve(p.relations().size() + ideal.size() + 1);
    for (const Poly& r : p.relations()) rels.push_back(rebase(r, vars));
    for (const Poly& gen : ideal) {
        if (!gen.is_homogeneous()) throw DegreeError("center ideal generator is not homogeneous: " + gen.to_string());
        rels.push_back(rebase(gen, vars) * e);
    }
    rels.push_back(chern_eval(rebase(chern, vars), -e));
    return Presentation(vars, std::move(rels), p.top_degree());
}

std::vector<Poly> transported_center_relations(const BaseGeometry& g, const VarTablePtr& vars,
                                               const LargeFamily& processed, Subset t) {
    const MergeResult merged = merge_family(processed, t);
    const BaseGeometry center(g.d, merged.m, g.convention);
    const auto center_members = members_of(merged.family);
    const VarTablePtr center_vars = VarTable::for_points(merged.m, g.d, center_members);

    std::vector<Poly> images;
    images.reserve(center_vars->size());
    for (int b = 1; b <= merged.m; ++b) images.push_back(Poly::variable(vars, point_var_name(merged.preimage[b])));
    for (Subset v : center_members) images.push_back(divisor(vars, merged.lift(v, t)));

    std::vector<Poly> out;
    for (Subset s : center_members) {
        if (!s.contains(merged.merged_label)) continue;
        const Poly sum = divisor_sum(center_vars, merged.family, [s](Subset v) { return s.is_subset_of(v); });
        out.push_back(substitute(chern_eval(chern_set(center, center_vars, s), sum), images));
    }
    return out;
}

namespace {

std::vector<Poly> sorted_copy(std::vector<Poly> polys) {
    std::sort(polys.begin(), polys.end(),
              [](const Poly& a, const Poly& b) { return compare(a, b) == std::strong_ordering::less; });
    return polys;
}

} // namespace

Presentation iterated_presentation(const BaseGeometry& g, const LargeFamily& family, const Walk& walk) {
    require_matching(g, family);
    validate_walk(family, walk);

    Presentation current = build_thm31(g, LargeFamily::empty(g.n));
    std::set<Subset> processed;
    for (Subset t : walk.steps) {
        const LargeFamily so_far(g.n, processed);
        const CoincidenceData cd = coincidence_data(g, current.vars(), so_far, t, t.min());
        const auto transported = transported_center_relations(g, current.vars(), so_far, t);
        if (sorted_copy(transported) != sorted_copy(cd.chern_gens)) {
            throw StructuralError("transported center relations for " + t.to_string() +
                                  " differ from the coincidence-set generators");
        }
        std::vector<Poly> ideal = cd.diagonal_gens;
        append(ideal, cd.overlap_gens);
        append(ideal, transported);
        current = keel_step(current, ideal, cd.chern, divisor_var_name(t));
        processed.insert(t);
    }

    const VarTablePtr canonical = VarTable::for_points(g.n, g.d, members_of(family));
    std::vector<Poly> rels;
    rels.reserve(current.relations().size());
    for (const Poly& r : current.relations()) rels.push_back(rebase(r, canonical));
    return Presentation(canonical, std::move(rels), g.n * g.d);
}

} // namespace chowfm
