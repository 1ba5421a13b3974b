#pragma once

// Exact integer polynomials over a table of graded variables, Chern
// polynomials in a formal variable t, and graded ring presentations.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "chowfm/setcomb.hpp"

namespace chowfm {

using Integer = mpz_class;

/// A graded variable. A nonzero `cap` is a nilpotency exponent: x^cap == 0.
struct Variable {
    std::string name;
    int degree = 1;
    int cap = 0;

    bool operator==(const Variable&) const = default;
};

class Monomial;

/// Ordered set of variables. Order matters: it is the ascending variable
/// order of the canonical (graded lexicographic) monomial order.
class VarTable {
  public:
    explicit VarTable(std::vector<Variable> vars);

    /// h1..hn (degree 1, cap d+1) followed by D{S} for each S in canonical order.
    static std::shared_ptr<const VarTable> for_points(int n, int d, const std::vector<Subset>& divisors);

    std::size_t size() const { return vars_.size(); }
    const Variable& operator[](std::size_t i) const { return vars_[i]; }
    const std::vector<Variable>& variables() const { return vars_; }
    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t index_of(std::string_view name) const;  ///< throws StructuralError

    /// Copy with one more variable; throws StructuralError on a name clash.
    std::shared_ptr<const VarTable> with_appended(Variable v) const;

    bool operator==(const VarTable& other) const { return vars_ == other.vars_; }

  private:
    std::vector<Variable> vars_;
    std::unordered_map<std::string, std::size_t> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

std::string point_var_name(int i);      ///< "h3"
std::string divisor_var_name(Subset s);  ///< "D{1,3}"

/// Exponent vector with its cached weighted degree.
class Monomial {
  public:
    using Exponent = std::uint16_t;

    Monomial() = default;
    Monomial(const VarTable& vars, std::vector<Exponent> exponents);
    static Monomial one(const VarTable& vars);

    int degree() const { return degree_; }
    const std::vector<Exponent>& exponents() const { return exps_; }
    Exponent operator[](std::size_t i) const { return exps_[i]; }

    /// False when some capped exponent reaches its cap.
    bool respects_caps(const VarTable& vars) const;
    Monomial operator*(const Monomial& other) const;

    bool operator==(const Monomial&) const = default;
    /// Graded lexicographic: degree first, then the exponent of the last
    /// (largest) variable, and so on downwards.
    std::strong_ordering operator<=>(const Monomial& other) const;

    std::string to_string(const VarTable& vars) const;

    struct Hash {
        std::size_t operator()(const Monomial& m) const;
    };

  private:
    int degree_ = 0;
    std::vector<Exponent> exps_;
};

/// Polynomial with nonzero integer coefficients, always normalized (capped
/// monomials dropped). Terms iterate in descending canonical order.
class Poly {
  public:
    using TermMap = std::map<Monomial, Integer, std::greater<>>;

    explicit Poly(VarTablePtr vars);
    static Poly constant(VarTablePtr vars, const Integer& c);
    static Poly variable(VarTablePtr vars, std::size_t index);
    static Poly variable(VarTablePtr vars, std::string_view name);
    static Poly term(VarTablePtr vars, const Monomial& m, const Integer& c);

    const VarTablePtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Zero counts as homogeneous.
    bool is_homogeneous() const;
    /// Largest term degree, -1 for zero.
    int degree() const;
    /// True when zero or homogeneous of degree k.
    bool is_homogeneous_of(int k) const { return is_zero() || (is_homogeneous() && degree() == k); }

    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly operator+(const Poly& other) const;
    Poly operator-(const Poly& other) const;
    Poly operator-() const;
    Poly operator*(const Poly& other) const;
    Poly operator*(const Integer& c) const;

    bool operator==(const Poly& other) const;

    /// Sign flipped if needed so the leading coefficient is positive.
    Poly sign_normalized() const;

    /// Canonical text: "E^2 - 2*h*E + h^2"; "0" for zero.
    std::string to_string() const;

  private:
    void add_term(const Monomial& m, const Integer& c);
    void check_same_table(const Poly& other) const;

    VarTablePtr vars_;
    TermMap terms_;
};

Poly operator*(const Integer& c, const Poly& p);
Poly pow(const Poly& p, int e);

/// Total order on polynomials over one table (term by term, descending).
std::strong_ordering compare(const Poly& a, const Poly& b);

/// Re-expresses p over a table that contains all of p's variables (by name).
Poly rebase(const Poly& p, const VarTablePtr& target);

/// Replaces variable i of p's table by images[i]; all images share one table.
Poly substitute(const Poly& p, const std::vector<Poly>& images);

/// Chern polynomial: coefficient(l) is the coefficient of t^l and is
/// homogeneous of degree (degree - l).
class ChernPoly {
  public:
    ChernPoly(std::vector<Poly> coefficients, int degree);

    int degree() const { return degree_; }
    const VarTablePtr& vars() const { return coeffs_.front().vars(); }
    const std::vector<Poly>& coefficients() const { return coeffs_; }
    const Poly& coefficient(int l) const { return coeffs_.at(static_cast<std::size_t>(l)); }

    ChernPoly operator*(const ChernPoly& other) const;
    bool operator==(const ChernPoly&) const = default;

    std::string to_string() const;

  private:
    std::vector<Poly> coeffs_;
    int degree_;
};

ChernPoly rebase(const ChernPoly& p, const VarTablePtr& target);

/// sum_l coefficient(l) * s^l. `s` must be zero or homogeneous of degree 1.
Poly chern_eval(const ChernPoly& p, const Poly& s);

/// Q(t) = P(sign * t + u), re-expanded binomially. `u` must be zero or
/// homogeneous of degree 1 and `sign` is +1 or -1.
ChernPoly chern_shift(const ChernPoly& p, const Poly& u, int sign);

/// A graded ring presentation vars / <relations>, considered up to
/// `top_degree`. Relations are homogeneous, nonzero, deduplicated up to
/// sign and sorted canonically (degree, then term order).
class Presentation {
  public:
    Presentation(VarTablePtr vars, std::vector<Poly> relations, int top_degree);

    const VarTablePtr& vars() const { return vars_; }
    const std::vector<Poly>& relations() const { return relations_; }
    int top_degree() const { return top_degree_; }

    /// "vars:" block then one "rel: ..." line per relation.
    std::string dump() const;
    /// Macaulay2-style script; variables renamed to identifiers (D{1,3} -> D_1_3),
    /// caps listed as explicit generators.
    std::string cas_script() const;

  private:
    VarTablePtr vars_;
    std::vector<Poly> relations_;
    int top_degree_;
};

} // namespace chowfm
