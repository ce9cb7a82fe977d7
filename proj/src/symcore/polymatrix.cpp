#include "bihk/symcore/polymatrix.hpp"

#include <unordered_map>

#include "bihk/error.hpp"

namespace bihk::symcore {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

PolyMatrix PolyMatrix::identity(std::size_t n) {
    PolyMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = MultiPoly(1);
    return m;
}

PolyMatrix PolyMatrix::from_rows(const std::vector<std::vector<MultiPoly>>& rows) {
    if (rows.empty()) return {};
    PolyMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw InputError("ragged matrix rows");
        for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

PolyMatrix PolyMatrix::from_strings(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<MultiPoly>> p;
    for (const auto& row : rows) {
        p.emplace_back();
        for (const auto& s : row) p.back().push_back(MultiPoly::parse(s));
    }
    return from_rows(p);
}

std::vector<std::string> PolyMatrix::vars() const {
    std::vector<std::string> v;
    for (const auto& e : data_) v = merge_vars(v, e.vars());
    return v;
}

PolyMatrix PolyMatrix::unified() const {
    auto ctx = vars();
    PolyMatrix out = *this;
    for (auto& e : out.data_) e = e.with_vars(ctx);
    return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("shape mismatch in matrix sum");
    PolyMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += o.data_[k];
    return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("shape mismatch in matrix difference");
    PolyMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] -= o.data_[k];
    return out;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_) throw InputError("shape mismatch in matrix product");
    PolyMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < o.cols_; ++c) {
            MultiPoly acc;
            for (std::size_t k = 0; k < cols_; ++k) {
                const MultiPoly& a = (*this)(r, k);
                const MultiPoly& b = o(k, c);
                if (a.is_zero() || b.is_zero()) continue;
                acc += a * b;
            }
            out(r, c) = std::move(acc);
        }
    return out;
}

PolyMatrix PolyMatrix::scale(const MultiPoly& s) const {
    PolyMatrix out = *this;
    for (auto& e : out.data_) e = e * s;
    return out;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

MultiPoly PolyMatrix::trace() const {
    if (!is_square()) throw InputError("trace of a non-square matrix");
    MultiPoly t;
    for (std::size_t k = 0; k < rows_; ++k) t += (*this)(k, k);
    return t;
}

bool PolyMatrix::is_zero() const {
    for (const auto& e : data_)
        if (!e.is_zero()) return false;
    return true;
}

bool PolyMatrix::is_antisymmetric() const {
    if (!is_square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if (!((*this)(r, c) + (*this)(c, r)).is_zero()) return false;
    return true;
}

bool PolyMatrix::is_constant() const {
    for (const auto& e : data_)
        if (!e.is_constant()) return false;
    return true;
}

Eigen::MatrixXcd PolyMatrix::eval(const std::map<std::string, std::complex<double>>& point) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*this)(r, c).eval(point);
    return m;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

// Faddeev-LeVerrier: returns c_0..c_n (c_n = 1) and M_n.
std::pair<std::vector<MultiPoly>, PolyMatrix> leverrier(const PolyMatrix& a) {
    if (!a.is_square()) throw InputError("characteristic polynomial of a non-square matrix");
    std::size_t n = a.rows();
    std::vector<MultiPoly> c(n + 1);
    c[n] = MultiPoly(1);
    PolyMatrix mk(n, n), id = PolyMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = a * mk + id.scale(c[n - k + 1]);
        MultiPoly t = (a * mk).trace();
        c[n - k] = t.scale(GaussRational(-1) / GaussRational(static_cast<long>(k)));
    }
    return {std::move(c), std::move(mk)};
}

}  // namespace

MultiPoly charpoly(const PolyMatrix& m, const std::string& lambda) {
    for (const auto& v : m.vars())
        if (v == lambda) throw InputError("charpoly variable '" + lambda + "' already used by the matrix");
    auto [c, mk] = leverrier(m);
    MultiPoly l = MultiPoly::variable(lambda), out, lp(1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        out += c[k] * lp;
        lp *= l;
    }
    return out;
}

MultiPoly determinant(const PolyMatrix& m) {
    if (!m.is_square()) throw InputError("determinant of a non-square matrix");
    if (m.rows() == 0) return MultiPoly(1);
    auto c = leverrier(m).first;
    return m.rows() % 2 ? -c[0] : c[0];
}

PolyMatrix adjugate(const PolyMatrix& m) {
    if (!m.is_square()) throw InputError("adjugate of a non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return {};
    auto mk = leverrier(m).second;
    return n % 2 ? mk : mk.scale(MultiPoly(-1));
}

MultiPoly pfaffian(const PolyMatrix& m) {
    if (!m.is_square() || m.rows() % 2) throw InputError("pfaffian needs an even square matrix");
    if (!m.is_antisymmetric()) throw InputError("pfaffian needs an antisymmetric matrix");
    std::size_t n = m.rows();
    if (n > 62) throw InputError("pfaffian size too large");
    std::unordered_map<std::uint64_t, MultiPoly> memo;
    // mask: set of remaining indices
    auto rec = [&](auto&& self, std::uint64_t mask) -> MultiPoly {
        if (mask == 0) return MultiPoly(1);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::size_t first = static_cast<std::size_t>(__builtin_ctzll(mask));
        std::uint64_t rest = mask & ~(std::uint64_t{1} << first);
        MultiPoly acc;
        bool plus = true;
        for (std::size_t j = first + 1; j < n; ++j) {
            if (!(rest >> j & 1u)) continue;
            const MultiPoly& a = m(first, j);
            if (!a.is_zero()) {
                MultiPoly sub = self(self, rest & ~(std::uint64_t{1} << j));
                if (!sub.is_zero()) acc += plus ? a * sub : -(a * sub);
            }
            plus = !plus;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(rec, (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
}

}  // namespace bihk::symcore
