#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quadrica {

using Rational = mpq_class;
using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;

/// Largest exponent a monomial may carry. Products beyond this throw.
inline constexpr Exponent kMaxExponent = 1u << 20;

/// Ordered, immutable list of variable names shared between polynomials.
class VarList {
public:
    VarList(std::vector<std::string> names);
    VarList(std::initializer_list<std::string> names);

    std::size_t size() const noexcept { return names_->size(); }
    const std::string& name(std::size_t i) const { return (*names_)[i]; }
    const std::vector<std::string>& names() const noexcept { return *names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const VarList& a, const VarList& b) noexcept {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// Graded lexicographic order, largest first.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const noexcept;
};

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a map keyed by exponent vector in descending grlex
/// order; zero coefficients are never stored, so equal polynomials have
/// identical term maps and `terms().begin()` is the leading term.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    explicit Poly(VarList vars);

    static Poly constant(VarList vars, const Rational& c);
    static Poly variable(VarList vars, std::string_view name);
    static Poly monomial(VarList vars, Monomial exps, const Rational& c = 1);

    const VarList& vars() const noexcept { return vars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Value of a constant polynomial (0 for the zero polynomial).
    Rational constant_value() const;
    /// Total degree; -1 for the zero polynomial.
    int total_degree() const noexcept;
    Exponent degree_in(std::size_t var) const noexcept;
    bool depends_on(std::size_t var) const noexcept;
    /// Indices of variables that occur with a positive exponent.
    std::vector<std::size_t> active_vars() const;

    const Monomial& leading_monomial() const;
    const Rational& leading_coefficient() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);

    Poly scaled(const Rational& c) const;
    Poly pow(unsigned n) const;

    /// Quotient when `d` divides this polynomial exactly, nullopt otherwise.
    std::optional<Poly> divide_exact(const Poly& d) const;
    Poly derivative(std::size_t var) const;

    /// Replaces the bound variables by the given polynomials (which must live
    /// over the same variable list). Unbound variables are left in place.
    Poly substitute(const std::map<std::string, Poly>& bindings) const;
    /// Evaluates every variable at a rational point.
    Rational evaluate(std::span<const Rational> point) const;

    /// Positive rational c with this = c * (integer polynomial, content 1).
    Rational content() const;
    /// Integer coefficients, coprime, leading coefficient positive.
    Poly primitive() const;

    std::string to_string() const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator<(const Poly& a, const Poly& b);

private:
    void add_term(const Monomial& m, const Rational& c);

    VarList vars_;
    TermMap terms_;
};

/// Monomial with all exponents zero except `var` (set to `e`).
Monomial unit_monomial(std::size_t nvars, std::size_t var, Exponent e);
Exponent checked_add(Exponent a, Exponent b);

/// Blocks of variables defining a (multi)grading: one block is the total
/// grading, two blocks give bidegrees on P1xP1.
struct Grading {
    std::vector<std::vector<std::string>> blocks;

    static Grading total(const VarList& vars);
    static Grading bidegree(std::vector<std::string> a, std::vector<std::string> b);
};

/// Degree of `p` in each grading block, or nullopt when some block is
/// inhomogeneous. Throws DomainError for the zero polynomial.
std::optional<std::vector<int>> degree_profile(const Poly& p, const Grading& g);

/// Degree in the given variable indices when all terms agree.
std::optional<int> homogeneous_degree(const Poly& p, std::span<const std::size_t> vars);

}  // namespace quadrica
