#include "bihk/bipoisson/bivector.hpp"

#include <algorithm>
#include <set>

#include "bihk/error.hpp"

namespace bihk::bipoisson {

Chart::Chart(std::vector<std::string> coords) : coords_(std::move(coords)) {
    if (coords_.empty() || coords_.size() % 2) throw InputError("chart dimension must be even and positive");
    std::set<std::string> seen(coords_.begin(), coords_.end());
    if (seen.size() != coords_.size()) throw InputError("chart coordinate names must be distinct");
    for (const auto& c : coords_)
        if (c == "i" || c.empty()) throw InputError("invalid coordinate name '" + c + "'");
}

Chart Chart::darboux(std::size_t n, const std::string& z, const std::string& u) {
    std::vector<std::string> c;
    for (std::size_t k = 1; k <= n; ++k) {
        c.push_back(z + std::to_string(k));
        c.push_back(u + std::to_string(k));
    }
    return Chart(std::move(c));
}

std::size_t Chart::index_of(const std::string& name) const {
    auto it = std::find(coords_.begin(), coords_.end(), name);
    if (it == coords_.end()) throw InputError("unknown chart coordinate '" + name + "'");
    return static_cast<std::size_t>(it - coords_.begin());
}

std::map<std::string, Complex> Chart::bind(const Point& p) const {
    if (p.size() != coords_.size()) throw InputError("point has wrong dimension for chart");
    std::map<std::string, Complex> m;
    for (std::size_t k = 0; k < p.size(); ++k) m[coords_[k]] = p[k];
    return m;
}

PolyBivector::PolyBivector(Chart chart, PolyMatrix comp) : chart_(std::move(chart)), comp_(std::move(comp)) {
    if (comp_.rows() != chart_.dim() || comp_.cols() != chart_.dim())
        throw InputError("bivector matrix does not match chart dimension");
    if (!comp_.is_antisymmetric()) throw InputError("bivector matrix is not antisymmetric");
    std::vector<std::string> allowed = chart_.coords();
    std::sort(allowed.begin(), allowed.end());
    for (std::size_t r = 0; r < comp_.rows(); ++r)
        for (std::size_t c = 0; c < comp_.cols(); ++c) {
            for (const auto& v : comp_(r, c).used_vars())
                if (!std::binary_search(allowed.begin(), allowed.end(), v))
                    throw InputError("bivector entry uses '" + v + "', not a chart coordinate");
            comp_(r, c) = comp_(r, c).compact().with_vars(allowed);
        }
}

PolyBivector PolyBivector::zero(const Chart& chart) {
    return PolyBivector(chart, PolyMatrix(chart.dim(), chart.dim()));
}

PolyBivector PolyBivector::from_entries(
    const Chart& chart, const std::vector<std::tuple<std::string, std::string, MultiPoly>>& entries) {
    PolyMatrix m(chart.dim(), chart.dim());
    for (const auto& [a, b, f] : entries) {
        std::size_t i = chart.index_of(a), j = chart.index_of(b);
        if (i == j) throw InputError("bivector entry on the diagonal");
        m(i, j) += f;
        m(j, i) -= f;
    }
    return PolyBivector(chart, std::move(m));
}

CMatrix PolyBivector::eval(const Point& p) const {
    return comp_.eval(chart_.bind(p));
}

PolyBivector PolyBivector::operator+(const PolyBivector& o) const {
    if (!(chart_ == o.chart_)) throw InputError("chart mismatch");
    return PolyBivector(chart_, comp_ + o.comp_);
}

PolyBivector PolyBivector::operator-(const PolyBivector& o) const {
    if (!(chart_ == o.chart_)) throw InputError("chart mismatch");
    return PolyBivector(chart_, comp_ - o.comp_);
}

PolyBivector PolyBivector::scale(const GaussRational& c) const {
    return PolyBivector(chart_, comp_.scale(MultiPoly(c)));
}

Trivector::Trivector(std::size_t dim) : dim_(dim), data_(dim * dim * dim) {}

std::size_t Trivector::slot(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * dim_ + j) * dim_ + k;
}

MultiPoly Trivector::operator()(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j || j == k || i == k) return MultiPoly();
    std::size_t idx[3] = {i, j, k};
    int swaps = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b + 1 < 3 - a; ++b)
            if (idx[b] > idx[b + 1]) {
                std::swap(idx[b], idx[b + 1]);
                ++swaps;
            }
    const MultiPoly& v = data_[slot(idx[0], idx[1], idx[2])];
    return swaps % 2 ? -v : v;
}

void Trivector::set_sorted(std::size_t i, std::size_t j, std::size_t k, MultiPoly v) {
    if (!(i < j && j < k)) throw InputError("set_sorted expects i<j<k");
    data_[slot(i, j, k)] = std::move(v);
}

bool Trivector::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

std::vector<std::tuple<std::size_t, std::size_t, std::size_t, MultiPoly>> Trivector::nonzero() const {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, MultiPoly>> out;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            for (std::size_t k = j + 1; k < dim_; ++k)
                if (!data_[slot(i, j, k)].is_zero()) out.emplace_back(i, j, k, data_[slot(i, j, k)]);
    return out;
}

namespace {

void require_same_chart(const PolyBivector& p, const PolyBivector& q) {
    if (!(p.chart() == q.chart())) throw InputError("chart mismatch between bivectors");
}

// d_l X^{jk} for all l, j<k, cached.
class DerivativeTable {
public:
    explicit DerivativeTable(const PolyBivector& b) : b_(b), n_(b.dim()), cache_(n_ * n_ * n_), done_(n_ * n_ * n_) {}
    const MultiPoly& operator()(std::size_t l, std::size_t j, std::size_t k) {
        std::size_t s = (l * n_ + j) * n_ + k;
        if (!done_[s]) {
            cache_[s] = b_(j, k).is_zero() ? MultiPoly() : b_(j, k).diff(b_.chart().coord(l));
            done_[s] = true;
        }
        return cache_[s];
    }

private:
    const PolyBivector& b_;
    std::size_t n_;
    std::vector<MultiPoly> cache_;
    std::vector<bool> done_;
};

MultiPoly component(const PolyBivector& p, const PolyBivector& q, DerivativeTable& dp, DerivativeTable& dq,
                    std::size_t i, std::size_t j, std::size_t k) {
    const std::size_t n = p.dim();
    MultiPoly acc;
    const std::size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
    for (const auto& c : cyc)
        for (std::size_t l = 0; l < n; ++l) {
            const MultiPoly& pli = p(l, c[0]);
            if (!pli.is_zero()) {
                const MultiPoly& d = dq(l, c[1], c[2]);
                if (!d.is_zero()) acc += pli * d;
            }
            const MultiPoly& qli = q(l, c[0]);
            if (!qli.is_zero()) {
                const MultiPoly& d = dp(l, c[1], c[2]);
                if (!d.is_zero()) acc += qli * d;
            }
        }
    return acc;
}

}  // namespace

MultiPoly schouten_component(const PolyBivector& p, const PolyBivector& q, std::size_t i, std::size_t j,
                             std::size_t k) {
    require_same_chart(p, q);
    DerivativeTable dp(p), dq(q);
    return component(p, q, dp, dq, i, j, k);
}

Trivector schouten_bracket(const PolyBivector& p, const PolyBivector& q) {
    require_same_chart(p, q);
    const std::size_t n = p.dim();
    DerivativeTable dp(p), dq(q);
    Trivector t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) t.set_sorted(i, j, k, component(p, q, dp, dq, i, j, k));
    return t;
}

PoissonVerdict is_poisson_pair(const PolyBivector& p, const PolyBivector& q) {
    require_same_chart(p, q);
    PoissonVerdict v;
    v.poisson_first = schouten_bracket(p, p).is_zero();
    v.poisson_second = schouten_bracket(q, q).is_zero();
    v.compatible = schouten_bracket(p, q).is_zero();
    return v;
}

MultiPoly poisson_bracket(const PolyBivector& p, const MultiPoly& f, const MultiPoly& g) {
    const auto& coords = p.chart().coords();
    std::vector<MultiPoly> df, dg;
    auto ctx = symcore::merge_vars(f.vars(), g.vars());
    auto sorted = coords;
    std::sort(sorted.begin(), sorted.end());
    ctx = symcore::merge_vars(ctx, sorted);
    for (const auto& c : coords) {
        df.push_back(f.with_vars(ctx).diff(c));
        dg.push_back(g.with_vars(ctx).diff(c));
    }
    MultiPoly acc;
    for (std::size_t a = 0; a < coords.size(); ++a)
        for (std::size_t b = 0; b < coords.size(); ++b)
            if (!p(a, b).is_zero() && !df[a].is_zero() && !dg[b].is_zero()) acc += p(a, b) * df[a] * dg[b];
    return acc;
}

double schouten_fd_max(const BivectorField& field, const CVector& point, double step) {
    const Eigen::Index n = point.size();
    CMatrix pi = field(point);
    std::vector<CMatrix> d(static_cast<std::size_t>(n));
    for (Eigen::Index l = 0; l < n; ++l) {
        CVector xp = point, xm = point;
        xp(l) += step;
        xm(l) -= step;
        d[static_cast<std::size_t>(l)] = (field(xp) - field(xm)) / (2 * step);
    }
    double worst = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            for (Eigen::Index k = j + 1; k < n; ++k) {
                Complex s = 0;
                const Eigen::Index cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
                for (const auto& c : cyc)
                    for (Eigen::Index l = 0; l < n; ++l) s += 2.0 * pi(l, c[0]) * d[static_cast<std::size_t>(l)](c[1], c[2]);
                worst = std::max(worst, std::abs(s));
            }
    return worst;
}

}  // namespace bihk::bipoisson
