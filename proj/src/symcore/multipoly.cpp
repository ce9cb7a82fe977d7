#include "bihk/symcore/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "bihk/error.hpp"

namespace bihk::symcore {

bool GradedLexGreater::operator()(const Exponent& a, const Exponent& b) const {
    auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end());
    if (std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
        throw InputError("duplicate variable name");
    for (const auto& v : vars_)
        if (v == "i") throw InputError("'i' is reserved for the imaginary unit");
}

MultiPoly::MultiPoly(GaussRational c) {
    if (!c.is_zero()) terms_.emplace(Exponent{}, std::move(c));
}

MultiPoly MultiPoly::variable(const std::string& name) {
    MultiPoly p({name});
    p.terms_.emplace(Exponent{1}, GaussRational(1));
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, Exponent e, GaussRational c) {
    if (vars.size() != e.size()) throw InputError("exponent length does not match variable count");
    std::vector<std::pair<std::string, std::uint32_t>> pairs;
    for (std::size_t k = 0; k < vars.size(); ++k) pairs.emplace_back(vars[k], e[k]);
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::string> names;
    Exponent exps;
    for (auto& [n, x] : pairs) {
        names.push_back(n);
        exps.push_back(x);
    }
    MultiPoly p(std::move(names));
    p.add_term(exps, c);
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

GaussRational MultiPoly::constant_term() const {
    Exponent zero(vars_.size(), 0);
    auto it = terms_.find(zero);
    return it == terms_.end() ? GaussRational() : it->second;
}

std::size_t MultiPoly::total_degree() const {
    if (terms_.empty()) return 0;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), std::size_t{0});
}

std::size_t MultiPoly::var_index(const std::string& var) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
    if (it == vars_.end() || *it != var) throw InputError("unknown variable '" + var + "'");
    return static_cast<std::size_t>(it - vars_.begin());
}

std::size_t MultiPoly::degree_in(const std::string& var) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
    if (it == vars_.end() || *it != var) return 0;
    std::size_t k = static_cast<std::size_t>(it - vars_.begin()), d = 0;
    for (const auto& [e, c] : terms_) d = std::max<std::size_t>(d, e[k]);
    return d;
}

std::vector<std::string> MultiPoly::used_vars() const {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < vars_.size(); ++k)
        for (const auto& [e, c] : terms_)
            if (e[k] != 0) {
                out.push_back(vars_[k]);
                break;
            }
    return out;
}

MultiPoly MultiPoly::compact() const {
    auto used = used_vars();
    if (used.size() == vars_.size()) return *this;
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < vars_.size(); ++k)
        if (std::binary_search(used.begin(), used.end(), vars_[k])) keep.push_back(k);
    MultiPoly out(used);
    for (const auto& [e, c] : terms_) {
        Exponent ne;
        for (auto k : keep) ne.push_back(e[k]);
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& superset) const {
    std::vector<std::string> target = superset;
    std::sort(target.begin(), target.end());
    target.erase(std::unique(target.begin(), target.end()), target.end());
    if (target == vars_) return *this;
    std::vector<std::size_t> where(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::lower_bound(target.begin(), target.end(), vars_[k]);
        if (it == target.end() || *it != vars_[k])
            throw InputError("variable '" + vars_[k] + "' missing from target context");
        where[k] = static_cast<std::size_t>(it - target.begin());
    }
    MultiPoly out(target);
    for (const auto& [e, c] : terms_) {
        Exponent ne(target.size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) ne[where[k]] = e[k];
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

void MultiPoly::add_term(const Exponent& e, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.vars_ != vars_) {
        auto ctx = merge_vars(vars_, o.vars_);
        *this = with_vars(ctx);
        MultiPoly other = o.with_vars(ctx);
        for (const auto& [e, c] : other.terms_) add_term(e, c);
        return *this;
    }
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    return *this += -o;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    auto ctx = merge_vars(vars_, o.vars_);
    MultiPoly a = with_vars(ctx), b = o.with_vars(ctx);
    MultiPoly out(ctx);
    Exponent e(ctx.size());
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    *this = std::move(out);
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

MultiPoly MultiPoly::scale(const GaussRational& s) const {
    if (s.is_zero()) return MultiPoly(vars_);
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_) c *= s;
    return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly result = MultiPoly(GaussRational(1)).with_vars(vars_);
    MultiPoly base = *this;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

MultiPoly MultiPoly::diff(const std::string& var) const {
    std::size_t k = var_index(var);
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0) continue;
        Exponent ne = e;
        ne[k] -= 1;
        out.add_term(ne, c * GaussRational(static_cast<long>(e[k])));
    }
    return out;
}

namespace {

template <class T>
T power_of(const T& x, std::uint32_t e) {
    T r(1), b = x;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

template <class T, class Map>
std::vector<T> bind_point(const std::vector<std::string>& vars, const Map& point) {
    std::vector<T> vals;
    vals.reserve(vars.size());
    for (const auto& v : vars) {
        auto it = point.find(v);
        if (it == point.end()) throw InputError("unbound variable '" + v + "'");
        vals.push_back(it->second);
    }
    return vals;
}

}  // namespace

GaussRational MultiPoly::eval(const std::map<std::string, GaussRational>& point) const {
    auto vals = bind_point<GaussRational>(vars_, point);
    GaussRational sum;
    for (const auto& [e, c] : terms_) {
        GaussRational t = c;
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k]) t *= power_of(vals[k], e[k]);
        sum += t;
    }
    return sum;
}

std::complex<double> MultiPoly::eval(const std::map<std::string, std::complex<double>>& point) const {
    auto vals = bind_point<std::complex<double>>(vars_, point);
    std::complex<double> sum = 0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k]) t *= power_of(vals[k], e[k]);
        sum += t;
    }
    return sum;
}

MultiPoly MultiPoly::substitute(const std::string& var, const MultiPoly& value) const {
    std::size_t k = var_index(var);
    auto ctx = merge_vars(vars_, value.vars_);
    MultiPoly out(ctx);
    std::map<std::uint32_t, MultiPoly> powers;
    for (const auto& [e, c] : terms_) {
        Exponent rest = e;
        std::uint32_t d = rest[k];
        rest[k] = 0;
        auto it = powers.find(d);
        if (it == powers.end()) it = powers.emplace(d, value.pow(d)).first;
        out += monomial(vars_, rest, c) * it->second;
    }
    return out;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const std::string& var) const {
    std::size_t k = var_index(var);
    std::vector<MultiPoly> out(degree_in(var) + 1, MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
        Exponent rest = e;
        rest[k] = 0;
        out[e[k]].add_term(rest, c);
    }
    return out;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
    if (divisor.is_zero()) throw MathError("division by the zero polynomial");
    auto ctx = merge_vars(vars_, divisor.vars_);
    MultiPoly rem = with_vars(ctx);
    MultiPoly d = divisor.with_vars(ctx);
    MultiPoly quot(ctx);
    const auto& [dlead_e, dlead_c] = *d.terms_.begin();
    while (!rem.is_zero()) {
        const auto [le, lc] = *rem.terms_.begin();
        Exponent qe(ctx.size());
        for (std::size_t k = 0; k < ctx.size(); ++k) {
            if (le[k] < dlead_e[k]) return std::nullopt;
            qe[k] = le[k] - dlead_e[k];
        }
        GaussRational qc = lc / dlead_c;
        quot.add_term(qe, qc);
        rem -= monomial(ctx, qe, qc) * d;
    }
    return quot;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    auto ctx = merge_vars(a.vars_, b.vars_);
    return a.with_vars(ctx).terms_ == b.with_vars(ctx).terms_;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (!e[k]) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[k];
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        bool negative = false;
        std::string mag;
        if (c.is_real()) {
            negative = sgn(c.re()) < 0;
            mpq_class a = abs(c.re());
            mag = (a == 1 && !mono.empty()) ? "" : rational_string(a);
        } else if (sgn(c.re()) == 0) {
            negative = sgn(c.im()) < 0;
            mpq_class a = abs(c.im());
            mag = a == 1 ? "i" : rational_string(a) + "*i";
        } else {
            mag = "(" + c.to_string() + ")";
        }
        std::string body = mag;
        if (!mono.empty()) body = mag.empty() ? mono : mag + "*" + mono;
        if (first)
            out += negative ? "-" + body : body;
        else
            out += (negative ? "-" : "+") + body;
        first = false;
    }
    return out;
}

// ---- parser ----

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    MultiPoly run() {
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("polynomial parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                         std::string(s_) + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expr() {
        MultiPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    MultiPoly term() {
        MultiPoly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                MultiPoly d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
                acc = acc.scale(GaussRational(1) / d.constant_term());
            } else {
                return acc;
            }
        }
    }

    MultiPoly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPoly power() {
        MultiPoly base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    MultiPoly primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return MultiPoly(GaussRational(mpq_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (name == "i") return MultiPoly(GaussRational::unit_i());
            return MultiPoly::variable(name);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) {
    return Parser(text).run();
}

}  // namespace bihk::symcore
