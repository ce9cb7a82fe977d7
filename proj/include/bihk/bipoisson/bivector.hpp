#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bihk/numeric.hpp"
#include "bihk/symcore/polymatrix.hpp"

namespace bihk::bipoisson {

using symcore::GaussRational;
using symcore::MultiPoly;
using symcore::PolyMatrix;

// Coordinate values in chart order.
using Point = std::vector<Complex>;

class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> coords);
    // z1,u1,...,zn,un: Darboux pairs interleaved so that the standard
    // symplectic matrix is block diagonal.
    static Chart darboux(std::size_t n, const std::string& z = "z", const std::string& u = "u");

    std::size_t dim() const { return coords_.size(); }
    std::size_t half_dim() const { return coords_.size() / 2; }
    const std::vector<std::string>& coords() const { return coords_; }
    const std::string& coord(std::size_t k) const { return coords_[k]; }
    std::size_t index_of(const std::string& name) const;
    std::map<std::string, Complex> bind(const Point& p) const;

    friend bool operator==(const Chart& a, const Chart& b) { return a.coords_ == b.coords_; }

private:
    std::vector<std::string> coords_;
};

class PolyBivector {
public:
    PolyBivector() = default;
    PolyBivector(Chart chart, PolyMatrix comp);
    static PolyBivector zero(const Chart& chart);
    // Sum of coefficient * d/dx_a ^ d/dx_b over the given triples.
    static PolyBivector from_entries(const Chart& chart,
                                     const std::vector<std::tuple<std::string, std::string, MultiPoly>>& entries);

    const Chart& chart() const { return chart_; }
    const PolyMatrix& comp() const { return comp_; }
    const MultiPoly& operator()(std::size_t i, std::size_t j) const { return comp_(i, j); }
    std::size_t dim() const { return chart_.dim(); }

    CMatrix eval(const Point& p) const;
    PolyBivector operator+(const PolyBivector& o) const;
    PolyBivector operator-(const PolyBivector& o) const;
    PolyBivector scale(const GaussRational& c) const;

    friend bool operator==(const PolyBivector& a, const PolyBivector& b) {
        return a.chart_ == b.chart_ && a.comp_ == b.comp_;
    }

private:
    Chart chart_;
    PolyMatrix comp_;
};

// Fully antisymmetric rank-3 array; only i<j<k is stored.
class Trivector {
public:
    explicit Trivector(std::size_t dim = 0);
    std::size_t dim() const { return dim_; }
    MultiPoly operator()(std::size_t i, std::size_t j, std::size_t k) const;
    void set_sorted(std::size_t i, std::size_t j, std::size_t k, MultiPoly v);
    bool is_zero() const;
    // Nonzero components as (i,j,k,value) with i<j<k.
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, MultiPoly>> nonzero() const;

private:
    std::size_t slot(std::size_t i, std::size_t j, std::size_t k) const;
    std::size_t dim_;
    std::vector<MultiPoly> data_;
};

// [P,Q]^{ijk} = sum_l P^{li} d_l Q^{jk} + Q^{li} d_l P^{jk} + cyclic(i,j,k)
MultiPoly schouten_component(const PolyBivector& p, const PolyBivector& q, std::size_t i, std::size_t j,
                             std::size_t k);
Trivector schouten_bracket(const PolyBivector& p, const PolyBivector& q);

struct PoissonVerdict {
    bool poisson_first = false;
    bool poisson_second = false;
    bool compatible = false;
    bool all() const { return poisson_first && poisson_second && compatible; }
};
PoissonVerdict is_poisson_pair(const PolyBivector& p, const PolyBivector& q);

// {f,g} = sum P^{ij} d_i f d_j g
MultiPoly poisson_bracket(const PolyBivector& p, const MultiPoly& f, const MultiPoly& g);

// Numeric bivector fields and the finite-difference Schouten self-bracket.
using BivectorField = std::function<CMatrix(const CVector&)>;
double schouten_fd_max(const BivectorField& field, const CVector& point, double step);

}  // namespace bihk::bipoisson
