#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bihk/symcore/gauss_rational.hpp"

namespace bihk::symcore {

using Exponent = std::vector<std::uint32_t>;

// Graded-lex order, largest first: higher total degree wins, ties broken
// lexicographically on the exponent vector.
struct GradedLexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

using TermMap = std::map<Exponent, GaussRational, GradedLexGreater>;

// Sparse multivariate polynomial over Q(i). The variable list is kept sorted
// by name; binary operations first unify both operands onto the union list.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars);
    MultiPoly(GaussRational c);  // NOLINT constant polynomial, no variables
    MultiPoly(long c) : MultiPoly(GaussRational(c)) {}  // NOLINT

    static MultiPoly variable(const std::string& name);
    static MultiPoly monomial(std::vector<std::string> vars, Exponent e, GaussRational c);
    // Parses + - * / ^ ( ), rationals, "i" and identifiers. Division only by constants.
    static MultiPoly parse(std::string_view text);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussRational constant_term() const;
    std::size_t total_degree() const;
    std::size_t degree_in(const std::string& var) const;
    // Names whose exponent is nonzero in some term.
    std::vector<std::string> used_vars() const;

    // Drops variables that appear in no term.
    MultiPoly compact() const;
    // Same polynomial over a larger (sorted or not) variable list.
    MultiPoly with_vars(const std::vector<std::string>& superset) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
    MultiPoly operator-() const;
    MultiPoly scale(const GaussRational& c) const;
    MultiPoly pow(unsigned e) const;

    MultiPoly diff(const std::string& var) const;
    GaussRational eval(const std::map<std::string, GaussRational>& point) const;
    std::complex<double> eval(const std::map<std::string, std::complex<double>>& point) const;
    MultiPoly substitute(const std::string& var, const MultiPoly& value) const;

    // Coefficients in ascending powers of var; each coefficient keeps var in
    // its context with exponent zero.
    std::vector<MultiPoly> coefficients_in(const std::string& var) const;

    // Quotient when the division is exact, nullopt otherwise.
    std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

    std::string to_string() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

private:
    void add_term(const Exponent& e, const GaussRational& c);
    std::size_t var_index(const std::string& var) const;

    std::vector<std::string> vars_;
    TermMap terms_;
};

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace bihk::symcore
