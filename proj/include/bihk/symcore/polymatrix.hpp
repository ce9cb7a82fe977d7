#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bihk/symcore/multipoly.hpp"

namespace bihk::symcore {

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols);
    static PolyMatrix identity(std::size_t n);
    static PolyMatrix from_rows(const std::vector<std::vector<MultiPoly>>& rows);
    static PolyMatrix from_strings(const std::vector<std::vector<std::string>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const MultiPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    MultiPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    // Union of the entries' variable lists.
    std::vector<std::string> vars() const;
    // Every entry re-expressed over the union list.
    PolyMatrix unified() const;

    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix scale(const MultiPoly& s) const;
    PolyMatrix transpose() const;
    MultiPoly trace() const;

    bool is_zero() const;
    bool is_antisymmetric() const;
    bool is_constant() const;

    Eigen::MatrixXcd eval(const std::map<std::string, std::complex<double>>& point) const;

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<MultiPoly> data_;
};

// det(lambda*Id - m) by Faddeev-LeVerrier; the divisions by k are exact over Q(i).
MultiPoly charpoly(const PolyMatrix& m, const std::string& lambda);
MultiPoly determinant(const PolyMatrix& m);
// Expansion along the first row with subset memoization; Pf([[0,1],[-1,0]]) = 1.
MultiPoly pfaffian(const PolyMatrix& m);
// Adjugate from the Faddeev-LeVerrier sequence: adj(m) = (-1)^(n-1) M_n.
PolyMatrix adjugate(const PolyMatrix& m);

}  // namespace bihk::symcore
