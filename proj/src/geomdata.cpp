#include "chowfm/geomdata.hpp"

#include <algorithm>

#include "chowfm/errors.hpp"

namespace chowfm {

namespace {

Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Poly h_power(const VarTablePtr& vars, int i, int e) { return pow(Poly::variable(vars, point_var_name(i)), e); }

void check_point(const BaseGeometry& g, int i) {
    if (i < 1 || i > g.n) throw ArgumentError("point index " + std::to_string(i) + " out of range");
}

} // namespace

BaseGeometry::BaseGeometry(int dim, int points, ChernConvention conv) : d(dim), n(points), convention(conv) {
    if (d < 1) throw ArgumentError("dimension d must be positive");
    if (n < 1 || n > kMaxPoints) throw ArgumentError("number of points out of range");
}

Integer BaseGeometry::chern_tx(int l) const { return binomial(d + 1, l); }

std::vector<Poly> diagonal_ideal(const BaseGeometry& g, const VarTablePtr& vars, Subset s) {
    if (s.size() < 2) throw ArgumentError("diagonal_ideal needs |S| >= 2, got " + s.to_string());
    const int m = s.min();
    check_point(g, m);
    std::vector<Poly> gens;
    for (int a : s.elements()) {
        if (a == m) continue;
        check_point(g, a);
        gens.push_back(h_power(vars, a, 1) - h_power(vars, m, 1));
    }
    return gens;
}

Poly diagonal_class(const BaseGeometry& g, const VarTablePtr& vars, int i, int j) {
    if (i == j) throw ArgumentError("diagonal_class needs i != j");
    check_point(g, i);
    check_point(g, j);
    Poly out(vars);
    for (int a = 0; a <= g.d; ++a) out += h_power(vars, i, a) * h_power(vars, j, g.d - a);
    return out;
}

ChernPoly chern_pair(const BaseGeometry& g, const VarTablePtr& vars, int i, int j) {
    if (i == j) throw ArgumentError("chern_pair needs i != j");
    std::vector<Poly> coeffs;
    coeffs.push_back(diagonal_class(g, vars, i, j));
    for (int l = 1; l <= g.d; ++l) {
        Integer c = g.chern_tx(g.d - l);
        if (g.convention == ChernConvention::Verbatim && l % 2 == 1) c = -c;
        coeffs.push_back(h_power(vars, i, g.d - l) * c);
    }
    return ChernPoly(std::move(coeffs), g.d);
}

ChernPoly chern_chain(const BaseGeometry& g, const VarTablePtr& vars, const std::vector<int>& chain) {
    if (chain.size() < 2) throw ArgumentError("chern_set needs |S| >= 2");
    std::vector<int> sorted = chain;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ArgumentError("chain repeats a point");
    }
    ChernPoly out = chern_pair(g, vars, chain[0], chain[1]);
    for (std::size_t k = 2; k < chain.size(); ++k) out = out * chern_pair(g, vars, chain[k - 1], chain[k]);
    return out;
}

ChernPoly chern_set(const BaseGeometry& g, const VarTablePtr& vars, Subset s) {
    if (s.size() < 2) throw ArgumentError("chern_set needs |S| >= 2, got " + s.to_string());
    return chern_chain(g, vars, s.elements());
}

} // namespace chowfm
