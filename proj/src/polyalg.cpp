#include "chowfm/polyalg.hpp"

#include <algorithm>
#include <sstream>

#include "chowfm/errors.hpp"

namespace chowfm {

// ---------------------------------------------------------------- VarTable

VarTable::VarTable(std::vector<Variable> vars) : vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const Variable& v = vars_[i];
        if (v.name.empty()) throw StructuralError("variable name must be nonempty");
        if (v.degree < 1) throw ArgumentError("variable " + v.name + " must have positive degree");
        if (v.cap < 0) throw ArgumentError("variable " + v.name + " has negative cap");
        if (!index_.emplace(v.name, i).second) throw StructuralError("duplicate variable name " + v.name);
    }
}

std::string point_var_name(int i) { return "h" + std::to_string(i); }

std::string divisor_var_name(Subset s) { return "D" + s.to_string(); }

VarTablePtr VarTable::for_points(int n, int d, const std::vector<Subset>& divisors) {
    if (n < 1) throw ArgumentError("number of points must be positive");
    if (d < 1) throw ArgumentError("dimension must be positive");
    std::vector<Variable> vars;
    for (int i = 1; i <= n; ++i) vars.push_back({point_var_name(i), 1, d + 1});
    std::vector<Subset> sorted = divisors;
    std::sort(sorted.begin(), sorted.end());
    for (Subset s : sorted) vars.push_back({divisor_var_name(s), 1, 0});
    return std::make_shared<const VarTable>(std::move(vars));
}

std::optional<std::size_t> VarTable::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t VarTable::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw StructuralError("unknown variable " + std::string(name));
}

VarTablePtr VarTable::with_appended(Variable v) const {
    if (find(v.name)) throw StructuralError("variable " + v.name + " already exists");
    std::vector<Variable> vars = vars_;
    vars.push_back(std::move(v));
    return std::make_shared<const VarTable>(std::move(vars));
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(const VarTable& vars, std::vector<Exponent> exponents) : exps_(std::move(exponents)) {
    if (exps_.size() != vars.size()) throw StructuralError("exponent vector does not match the variable table");
    for (std::size_t i = 0; i < exps_.size(); ++i) degree_ += vars[i].degree * exps_[i];
}

Monomial Monomial::one(const VarTable& vars) { return Monomial(vars, std::vector<Exponent>(vars.size(), 0)); }

bool Monomial::respects_caps(const VarTable& vars) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (vars[i].cap != 0 && exps_[i] >= vars[i].cap) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
    if (exps_.size() != other.exps_.size()) throw StructuralError("monomials over different tables");
    Monomial out = *this;
    for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] = static_cast<Exponent>(out.exps_[i] + other.exps_[i]);
    out.degree_ += other.degree_;
    return out;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
    if (auto c = degree_ <=> other.degree_; c != 0) return c;
    for (std::size_t i = exps_.size(); i-- > 0;) {
        if (auto c = exps_[i] <=> other.exps_[i]; c != 0) return c;
    }
    return exps_.size() <=> other.exps_.size();
}

std::string Monomial::to_string(const VarTable& vars) const {
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += vars[i].name;
        if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
}

std::size_t Monomial::Hash::operator()(const Monomial& m) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (Exponent e : m.exps_) h = (h ^ e) * 0x100000001b3ull;
    return h;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(VarTablePtr vars) : vars_(std::move(vars)) {
    if (!vars_) throw StructuralError("polynomial needs a variable table");
}

Poly Poly::constant(VarTablePtr vars, const Integer& c) {
    Poly p(std::move(vars));
    p.add_term(Monomial::one(*p.vars_), c);
    return p;
}

Poly Poly::variable(VarTablePtr vars, std::size_t index) {
    Poly p(std::move(vars));
    if (index >= p.vars_->size()) throw StructuralError("variable index out of range");
    std::vector<Monomial::Exponent> e(p.vars_->size(), 0);
    e[index] = 1;
    p.add_term(Monomial(*p.vars_, std::move(e)), 1);
    return p;
}

Poly Poly::variable(VarTablePtr vars, std::string_view name) {
    const std::size_t i = vars->index_of(name);
    return variable(std::move(vars), i);
}

Poly Poly::term(VarTablePtr vars, const Monomial& m, const Integer& c) {
    Poly p(std::move(vars));
    if (m.exponents().size() != p.vars_->size()) throw StructuralError("monomial does not match the variable table");
    p.add_term(m, c);
    return p;
}

void Poly::add_term(const Monomial& m, const Integer& c) {
    if (c == 0 || !m.respects_caps(*vars_)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Poly::check_same_table(const Poly& other) const {
    if (vars_ != other.vars_ && !(*vars_ == *other.vars_)) {
        throw StructuralError("polynomials are defined over different variable tables");
    }
}

bool Poly::is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

Poly& Poly::operator+=(const Poly& other) {
    check_same_table(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    check_same_table(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator+(const Poly& other) const {
    Poly out = *this;
    out += other;
    return out;
}

Poly Poly::operator-(const Poly& other) const {
    Poly out = *this;
    out -= other;
    return out;
}

Poly Poly::operator-() const {
    Poly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Poly Poly::operator*(const Poly& other) const {
    check_same_table(other);
    Poly out(vars_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : other.terms_) out.add_term(m1 * m2, c1 * c2);
    return out;
}

Poly Poly::operator*(const Integer& c) const {
    if (c == 0) return Poly(vars_);
    Poly out = *this;
    for (auto& [m, coeff] : out.terms_) coeff *= c;
    return out;
}

Poly operator*(const Integer& c, const Poly& p) { return p * c; }

bool Poly::operator==(const Poly& other) const {
    return (vars_ == other.vars_ || *vars_ == *other.vars_) && terms_ == other.terms_;
}

Poly Poly::sign_normalized() const {
    if (!terms_.empty() && terms_.begin()->second < 0) return -*this;
    return *this;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c < 0;
        const Integer magnitude = abs(c);
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        const bool unit = m.degree() == 0 && std::all_of(m.exponents().begin(), m.exponents().end(),
                                                         [](auto e) { return e == 0; });
        if (unit) {
            out += magnitude.get_str();
        } else if (magnitude == 1) {
            out += m.to_string(*vars_);
        } else {
            out += magnitude.get_str() + "*" + m.to_string(*vars_);
        }
        first = false;
    }
    return out;
}

Poly pow(const Poly& p, int e) {
    if (e < 0) throw ArgumentError("negative exponent");
    Poly result = Poly::constant(p.vars(), 1);
    Poly base = p;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::strong_ordering compare(const Poly& a, const Poly& b) {
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (auto c = ia->first <=> ib->first; c != 0) return c;
        const int cc = cmp(ia->second, ib->second);
        if (cc != 0) return cc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.terms().size() <=> b.terms().size();
}

Poly rebase(const Poly& p, const VarTablePtr& target) {
    const VarTable& src = *p.vars();
    std::vector<std::size_t> where(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        where[i] = target->index_of(src[i].name);
        if ((*target)[where[i]].degree != src[i].degree) {
            throw StructuralError("variable " + src[i].name + " changes degree under rebase");
        }
    }
    Poly out(target);
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Exponent> e(target->size(), 0);
        for (std::size_t i = 0; i < src.size(); ++i) e[where[i]] = m[i];
        out += Poly::term(target, Monomial(*target, std::move(e)), c);
    }
    return out;
}

Poly substitute(const Poly& p, const std::vector<Poly>& images) {
    if (images.size() != p.vars()->size() || images.empty()) {
        throw StructuralError("substitution needs one image per variable");
    }
    const VarTablePtr& target = images.front().vars();
    for (const Poly& img : images) {
        if (!(img.vars() == target || *img.vars() == *target)) {
            throw StructuralError("substitution images live over different tables");
        }
    }
    // Powers are cached per variable since the same exponents recur.
    std::vector<std::vector<Poly>> powers(images.size());
    auto power_of = [&](std::size_t i, int e) -> const Poly& {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Poly::constant(target, 1));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
        return cache[static_cast<std::size_t>(e)];
    };
    Poly out(target);
    for (const auto& [m, c] : p.terms()) {
        Poly t = Poly::constant(target, c);
        for (std::size_t i = 0; i < m.exponents().size() && !t.is_zero(); ++i) {
            if (m[i] != 0) t = t * power_of(i, m[i]);
        }
        out += t;
    }
    return out;
}

// ---------------------------------------------------------------- ChernPoly

ChernPoly::ChernPoly(std::vector<Poly> coefficients, int degree) : coeffs_(std::move(coefficients)), degree_(degree) {
    if (degree_ < 0) throw ArgumentError("Chern polynomial degree must be non-negative");
    if (coeffs_.empty()) throw ArgumentError("Chern polynomial needs at least one coefficient");
    const VarTablePtr table = coeffs_.front().vars();
    while (coeffs_.size() > static_cast<std::size_t>(degree_) + 1) {
        if (!coeffs_.back().is_zero()) throw DegreeError("Chern polynomial has a t-power above its degree");
        coeffs_.pop_back();
    }
    while (coeffs_.size() < static_cast<std::size_t>(degree_) + 1) coeffs_.emplace_back(table);
    for (std::size_t l = 0; l < coeffs_.size(); ++l) {
        if (!(coeffs_[l].vars() == table || *coeffs_[l].vars() == *table)) {
            throw StructuralError("Chern coefficients live over different tables");
        }
        if (!coeffs_[l].is_homogeneous_of(degree_ - static_cast<int>(l))) {
            throw DegreeError("coefficient of t^" + std::to_string(l) + " is not homogeneous of degree " +
                              std::to_string(degree_ - static_cast<int>(l)));
        }
    }
}

ChernPoly ChernPoly::operator*(const ChernPoly& other) const {
    const VarTablePtr& table = vars();
    std::vector<Poly> out(coeffs_.size() + other.coeffs_.size() - 1, Poly(table));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    return ChernPoly(std::move(out), degree_ + other.degree_);
}

std::string ChernPoly::to_string() const {
    std::string out;
    for (std::size_t l = coeffs_.size(); l-- > 0;) {
        const Poly& c = coeffs_[l];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string t = l == 0 ? "" : (l == 1 ? "t" : "t^" + std::to_string(l));
        if (t.empty()) {
            out += "(" + c.to_string() + ")";
        } else {
            out += "(" + c.to_string() + ")*" + t;
        }
    }
    return out.empty() ? "0" : out;
}

ChernPoly rebase(const ChernPoly& p, const VarTablePtr& target) {
    std::vector<Poly> coeffs;
    for (const Poly& c : p.coefficients()) coeffs.push_back(rebase(c, target));
    return ChernPoly(std::move(coeffs), p.degree());
}

namespace {

void require_linear(const Poly& s, const ChernPoly& p, const char* what) {
    if (!(s.vars() == p.vars() || *s.vars() == *p.vars())) {
        throw StructuralError(std::string(what) + ": argument lives over a different table");
    }
    if (!s.is_homogeneous_of(1)) {
        throw DegreeError(std::string(what) + ": argument must be homogeneous of degree 1, got " + s.to_string());
    }
}

} // namespace

Poly chern_eval(const ChernPoly& p, const Poly& s) {
    require_linear(s, p, "chern_eval");
    Poly result = p.coefficients().back();
    for (std::size_t l = p.coefficients().size() - 1; l-- > 0;) result = result * s + p.coefficient(static_cast<int>(l));
    return result;
}

ChernPoly chern_shift(const ChernPoly& p, const Poly& u, int sign) {
    require_linear(u, p, "chern_shift");
    if (sign != 1 && sign != -1) throw ArgumentError("chern_shift sign must be +1 or -1");
    const VarTablePtr& table = p.vars();
    const int deg = p.degree();
    std::vector<Poly> upow{Poly::constant(table, 1)};
    for (int k = 1; k <= deg; ++k) upow.push_back(upow.back() * u);

    std::vector<Poly> out(static_cast<std::size_t>(deg) + 1, Poly(table));
    for (int l = 0; l <= deg; ++l) {
        const Poly& a = p.coefficient(l);
        if (a.is_zero()) continue;
        Integer binom = 1;  // C(l, j)
        for (int j = 0; j <= l; ++j) {
            Integer c = binom;
            if (sign < 0 && (j % 2) == 1) c = -c;
            out[static_cast<std::size_t>(j)] += (a * upow[static_cast<std::size_t>(l - j)]) * c;
            binom = binom * (l - j) / (j + 1);
        }
    }
    return ChernPoly(std::move(out), deg);
}

// ---------------------------------------------------------------- Presentation

Presentation::Presentation(VarTablePtr vars, std::vector<Poly> relations, int top_degree)
    : vars_(std::move(vars)), top_degree_(top_degree) {
    if (!vars_) throw StructuralError("presentation needs a variable table");
    if (top_degree_ < 0) throw ArgumentError("top degree must be non-negative");
    struct Keyed {
        Poly key;
        Poly rel;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(relations.size());
    for (Poly& r : relations) {
        if (!(r.vars() == vars_ || *r.vars() == *vars_)) {
            throw StructuralError("relation " + r.to_string() + " lives over a different table");
        }
        if (!r.is_homogeneous()) throw DegreeError("relation is not homogeneous: " + r.to_string());
        if (r.is_zero()) continue;
        Poly key = r.sign_normalized();
        keyed.push_back({std::move(key), std::move(r)});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.key.degree() != b.key.degree()) return a.key.degree() < b.key.degree();
        return compare(a.key, b.key) == std::strong_ordering::greater;
    });
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i > 0 && keyed[i].key == keyed[i - 1].key) continue;
        relations_.push_back(std::move(keyed[i].rel));
    }
}

std::string Presentation::dump() const {
    std::ostringstream os;
    os << "vars:\n";
    for (const Variable& v : vars_->variables()) {
        os << v.name << " deg " << v.degree;
        if (v.cap != 0) os << " cap " << v.cap;
        os << '\n';
    }
    os << "top_degree: " << top_degree_ << '\n';
    for (const Poly& r : relations_) os << "rel: " << r.to_string() << '\n';
    return os.str();
}

namespace {

std::string identifier(const std::string& name) {
    std::string out;
    for (char ch : name) {
        if (ch == '{' || ch == ',') {
            out += '_';
        } else if (ch != '}') {
            out += ch;
        }
    }
    return out;
}

} // namespace

std::string Presentation::cas_script() const {
    std::vector<Variable> renamed = vars_->variables();
    for (Variable& v : renamed) v.name = identifier(v.name);
    const auto table = std::make_shared<const VarTable>(renamed);

    std::ostringstream os;
    os << "-- Macaulay2 script\n";
    for (std::size_t i = 0; i < renamed.size(); ++i) {
        if (renamed[i].name != (*vars_)[i].name) os << "-- " << renamed[i].name << " = " << (*vars_)[i].name << '\n';
    }
    os << "R = QQ[";
    for (std::size_t i = 0; i < renamed.size(); ++i) os << (i ? ", " : "") << renamed[i].name;
    os << ", Degrees => {";
    for (std::size_t i = 0; i < renamed.size(); ++i) os << (i ? ", " : "") << renamed[i].degree;
    os << "}];\n";

    std::vector<std::string> gens;
    for (const Variable& v : renamed) {
        if (v.cap != 0) gens.push_back(v.name + "^" + std::to_string(v.cap));
    }
    for (const Poly& r : relations_) {
        Poly copy(table);
        for (const auto& [m, c] : r.terms()) copy += Poly::term(table, Monomial(*table, m.exponents()), c);
        gens.push_back(copy.to_string());
    }
    os << "I = ideal(";
    for (std::size_t i = 0; i < gens.size(); ++i) os << (i ? ",\n    " : "\n    ") << gens[i];
    os << ");\n";
    os << "A = R/I;\n";
    os << "apply(0.." << top_degree_ << ", k -> hilbertFunction(k, A))\n";
    return os.str();
}

} // namespace chowfm
