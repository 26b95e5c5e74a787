#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "groves/errors.hpp"
#include "groves/rational.hpp"

namespace groves {

inline constexpr int kMaxVars = 8;

// Exponent vector; negative entries make Laurent monomials.
struct Monomial {
    std::array<std::int16_t, kMaxVars> e{};

    static Monomial var(int v, int power = 1) {
        Monomial m;
        m.e[v] = static_cast<std::int16_t>(power);
        return m;
    }
    int total() const {
        int s = 0;
        for (auto x : e) s += x;
        return s;
    }
    bool is_one() const {
        for (auto x : e)
            if (x) return false;
        return true;
    }
    bool nonnegative() const {
        for (auto x : e)
            if (x < 0) return false;
        return true;
    }
    bool divides(const Monomial& o) const {
        for (int v = 0; v < kMaxVars; ++v)
            if (e[v] > o.e[v]) return false;
        return true;
    }
    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (int v = 0; v < kMaxVars; ++v) m.e[v] = static_cast<std::int16_t>(a.e[v] + b.e[v]);
        return m;
    }
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (int v = 0; v < kMaxVars; ++v) m.e[v] = static_cast<std::int16_t>(a.e[v] - b.e[v]);
        return m;
    }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto x : m.e) h = (h ^ static_cast<std::uint16_t>(x)) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

// Sparse multivariate (Laurent) polynomial over Q. Variables are positions 0..kMaxVars-1;
// names are attached only when printing or parsing. Terms are kept sorted in decreasing
// lexicographic order, so the first term is the lex-leading one.
class PolyQ {
public:
    using Term = std::pair<Monomial, Rational>;

    PolyQ() = default;
    PolyQ(const Rational& c) {
        if (c != 0) terms_.emplace_back(Monomial{}, c);
    }
    PolyQ(long c) : PolyQ(Rational(c)) {}

    static PolyQ term(const Monomial& m, const Rational& c) {
        PolyQ p;
        if (c != 0) p.terms_.emplace_back(m, c);
        return p;
    }
    static PolyQ var(int v, int power = 1) { return term(Monomial::var(v, power), 1); }

    // Builds from arbitrary terms, merging duplicates and dropping zeros.
    static PolyQ from_terms(std::vector<Term> ts) {
        std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return a.first > b.first; });
        PolyQ p;
        for (auto& t : ts) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first)
                p.terms_.back().second += t.second;
            else
                p.terms_.push_back(std::move(t));
        }
        std::erase_if(p.terms_, [](const Term& t) { return t.second == 0; });
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    Rational constant_term() const { return coeff(Monomial{}); }

    Rational coeff(const Monomial& m) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term& t, const Monomial& x) { return t.first > x; });
        return (it != terms_.end() && it->first == m) ? it->second : Rational(0);
    }

    const Term& leading() const { return terms_.front(); }

    int degree(int v) const {
        int d = -(1 << 20);
        for (const auto& [m, c] : terms_) d = std::max(d, int(m.e[v]));
        return terms_.empty() ? -1 : d;
    }
    int min_degree(int v) const {
        int d = 1 << 20;
        for (const auto& [m, c] : terms_) d = std::min(d, int(m.e[v]));
        return terms_.empty() ? 0 : d;
    }
    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total());
        return d;
    }
    int min_total_degree() const {
        int d = 1 << 20;
        for (const auto& [m, c] : terms_) d = std::min(d, m.total());
        return terms_.empty() ? -1 : d;
    }
    bool involves(int v) const {
        for (const auto& [m, c] : terms_)
            if (m.e[v] != 0) return true;
        return false;
    }
    bool is_polynomial() const {
        for (const auto& [m, c] : terms_)
            if (!m.nonnegative()) return false;
        return true;
    }
    bool is_homogeneous() const {
        for (const auto& [m, c] : terms_)
            if (m.total() != terms_.front().first.total()) return false;
        return true;
    }

    PolyQ operator-() const {
        PolyQ r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend PolyQ operator+(const PolyQ& a, const PolyQ& b) { return merge(a, b, false); }
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b) { return merge(a, b, true); }

    friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.size() == 1) return scale_shift(b, a.terms_[0].first, a.terms_[0].second);
        if (b.size() == 1) return scale_shift(a, b.terms_[0].first, b.terms_[0].second);
        std::unordered_map<Monomial, Rational, MonomialHash> acc;
        acc.reserve(a.size() * b.size());
        Rational prod;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                prod = ca * cb;
                auto [it, fresh] = acc.try_emplace(ma * mb, prod);
                if (!fresh) it->second += prod;
            }
        std::vector<Term> ts;
        ts.reserve(acc.size());
        for (auto& kv : acc)
            if (kv.second != 0) ts.emplace_back(kv.first, std::move(kv.second));
        std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return x.first > y.first; });
        PolyQ r;
        r.terms_ = std::move(ts);
        return r;
    }

    friend PolyQ operator*(const PolyQ& a, const Rational& s) { return scale_shift(a, Monomial{}, s); }
    friend PolyQ operator*(const Rational& s, const PolyQ& a) { return scale_shift(a, Monomial{}, s); }
    friend PolyQ operator/(const PolyQ& a, const Rational& s) {
        if (s == 0) throw DomainError("polynomial divided by zero");
        return scale_shift(a, Monomial{}, 1 / s);
    }

    PolyQ& operator+=(const PolyQ& o) { return *this = *this + o; }
    PolyQ& operator-=(const PolyQ& o) { return *this = *this - o; }
    PolyQ& operator*=(const PolyQ& o) { return *this = *this * o; }

    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.terms_ == b.terms_; }

    PolyQ pow(int e) const {
        PolyQ r(1), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    // Multiplies by a monomial (possibly with negative exponents).
    PolyQ shifted(const Monomial& m) const { return scale_shift(*this, m, 1); }

    PolyQ derivative(int v) const {
        std::vector<Term> ts;
        for (const auto& [m, c] : terms_) {
            if (m.e[v] == 0) continue;
            Monomial n = m;
            n.e[v] = static_cast<std::int16_t>(n.e[v] - 1);
            ts.emplace_back(n, c * m.e[v]);
        }
        return from_terms(std::move(ts));
    }

    // Coefficients with respect to one variable: power -> coefficient (free of v).
    std::map<int, PolyQ> coefficients_in(int v) const {
        std::map<int, std::vector<Term>> parts;
        for (const auto& [m, c] : terms_) {
            Monomial n = m;
            n.e[v] = 0;
            parts[m.e[v]].emplace_back(n, c);
        }
        std::map<int, PolyQ> out;
        for (auto& [d, ts] : parts) out.emplace(d, from_terms(std::move(ts)));
        return out;
    }
    PolyQ coefficient_in(int v, int power) const {
        std::vector<Term> ts;
        for (const auto& [m, c] : terms_)
            if (m.e[v] == power) {
                Monomial n = m;
                n.e[v] = 0;
                ts.emplace_back(n, c);
            }
        return from_terms(std::move(ts));
    }

    PolyQ homogeneous_component(int d) const {
        PolyQ r;
        for (const auto& t : terms_)
            if (t.first.total() == d) r.terms_.push_back(t);
        return r;
    }

    // Substitutes every variable v by images[v] (variables beyond images.size() stay put).
    PolyQ compose(const std::vector<PolyQ>& images) const {
        std::vector<std::map<int, PolyQ>> powers(images.size());
        auto power_of = [&](int v, int e) -> const PolyQ& {
            auto& cache = powers[v];
            auto it = cache.find(e);
            if (it != cache.end()) return it->second;
            if (e < 0) throw DomainError("cannot compose a negative power");
            return cache.emplace(e, images[v].pow(e)).first->second;
        };
        PolyQ out;
        for (const auto& [m, c] : terms_) {
            PolyQ t = PolyQ::term(Monomial{}, c);
            Monomial rest;
            for (int v = 0; v < kMaxVars; ++v) {
                if (v < static_cast<int>(images.size())) {
                    if (m.e[v]) t *= power_of(v, m.e[v]);
                } else {
                    rest.e[v] = m.e[v];
                }
            }
            out += t.shifted(rest);
        }
        return out;
    }

    // Renames variable positions: new position of variable v is perm[v].
    PolyQ permuted(const std::vector<int>& perm) const {
        std::vector<Term> ts;
        for (const auto& [m, c] : terms_) {
            Monomial n;
            for (int v = 0; v < static_cast<int>(perm.size()); ++v) n.e[perm[v]] = m.e[v];
            ts.emplace_back(n, c);
        }
        return from_terms(std::move(ts));
    }

    Rational evaluate(const std::vector<Rational>& at) const {
        Rational s = 0;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (int v = 0; v < kMaxVars; ++v) {
                if (m.e[v] == 0) continue;
                const Rational& x = at.at(v);
                if (m.e[v] < 0 && x == 0) throw DomainError("Laurent monomial evaluated at zero");
                Rational p = 1;
                for (int r = 0; r < std::abs(m.e[v]); ++r) p *= x;
                t = m.e[v] > 0 ? Rational(t * p) : Rational(t / p);
            }
            s += t;
        }
        return s;
    }

    double evaluate_double(const std::vector<double>& at) const {
        double s = 0;
        for (const auto& [m, c] : terms_) {
            double t = c.get_d();
            for (int v = 0; v < kMaxVars; ++v)
                for (int r = 0; r < std::abs(m.e[v]); ++r) t = m.e[v] > 0 ? t * at[v] : t / at[v];
            s += t;
        }
        return s;
    }

    // Scales so the lex-leading coefficient is 1.
    PolyQ monic() const { return is_zero() ? *this : *this / leading().second; }

    // Scales to coprime integer coefficients with a positive lex-leading coefficient.
    PolyQ primitive_integer() const {
        if (is_zero()) return *this;
        mpz_class l = 1, g = 0;
        for (const auto& [m, c] : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        for (const auto& [m, c] : terms_) {
            mpz_class num = c.get_num() * (l / c.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        }
        Rational s(l, g);
        if (leading().second < 0) s = -s;
        return *this * s;
    }

private:
    static PolyQ merge(const PolyQ& a, const PolyQ& b, bool subtract) {
        PolyQ r;
        r.terms_.reserve(a.size() + b.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first > ib->first)) {
                r.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->first > ia->first) {
                r.terms_.emplace_back(ib->first, subtract ? Rational(-ib->second) : ib->second);
                ++ib;
            } else {
                Rational c = subtract ? Rational(ia->second - ib->second) : Rational(ia->second + ib->second);
                if (c != 0) r.terms_.emplace_back(ia->first, std::move(c));
                ++ia, ++ib;
            }
        }
        return r;
    }

    static PolyQ scale_shift(const PolyQ& a, const Monomial& m, const Rational& s) {
        PolyQ r;
        if (s == 0) return r;
        r.terms_.reserve(a.size());
        for (const auto& [ma, ca] : a.terms_) r.terms_.emplace_back(ma * m, ca * s);
        return r;
    }

    std::vector<Term> terms_;
};

// Exact division; returns nothing when b does not divide a. Works for Laurent inputs too,
// since lex order is a group order on exponent vectors.
inline std::optional<PolyQ> divide_exact(const PolyQ& a, const PolyQ& b) {
    if (b.is_zero()) throw DomainError("exact division by the zero polynomial");
    if (a.is_zero()) return PolyQ{};
    if (b.size() == 1) return a.shifted(Monomial{} / b.leading().first) / b.leading().second;
    const auto& [lm, lc] = b.leading();
    // Every quotient exponent lies in a box fixed by the degree ranges of a and b, which bounds
    // the loop even for Laurent inputs where lex order is not a well-order.
    Monomial lo, hi;
    for (int v = 0; v < kMaxVars; ++v) {
        lo.e[v] = static_cast<std::int16_t>(a.min_degree(v) - b.min_degree(v));
        hi.e[v] = static_cast<std::int16_t>(a.degree(v) - b.degree(v));
    }
    std::vector<PolyQ::Term> quotient;
    PolyQ r = a;
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading();
        Monomial q = rm / lm;
        for (int v = 0; v < kMaxVars; ++v)
            if (q.e[v] < lo.e[v] || q.e[v] > hi.e[v]) return std::nullopt;
        Rational qc = rc / lc;
        r -= b.shifted(q) * qc;
        quotient.emplace_back(q, std::move(qc));
    }
    return PolyQ::from_terms(std::move(quotient));
}

inline PolyQ divide_or_throw(const PolyQ& a, const PolyQ& b, const char* what) {
    auto q = divide_exact(a, b);
    if (!q) throw ConsistencyError(std::string("inexact polynomial division in ") + what);
    return std::move(*q);
}

// ---- text and JSON forms ---------------------------------------------------------------

using VarNames = std::vector<std::string>;
inline const VarNames kXYZ{"x", "y", "z"};
inline const VarNames kUVW{"u", "v", "w"};
inline const VarNames kZW{"z", "w"};

// Canonical text form: terms by decreasing total degree, then decreasing lex order;
// each term is "c * x^a y^b" with exponent 1 omitted, or a bare constant.
inline std::string to_text(const PolyQ& p, const VarNames& names) {
    if (p.is_zero()) return "0";
    std::vector<const PolyQ::Term*> order;
    for (const auto& t : p.terms()) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(),
                     [](auto* a, auto* b) { return a->first.total() > b->first.total(); });
    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        Rational c = t->second;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        os << to_string(abs(c));
        if (t->first.is_one()) continue;
        os << " *";
        for (int v = 0; v < kMaxVars; ++v) {
            int e = t->first.e[v];
            if (e == 0) continue;
            if (v >= static_cast<int>(names.size())) throw InvalidArgument("missing variable name");
            os << ' ' << names[v];
            if (e != 1) os << '^' << e;
        }
    }
    return os.str();
}

// Parses sums of terms like "3/4 * x^2 y", "-x*y*z", "x^-1"; variables must be in names.
inline PolyQ parse_poly(const std::string& text, const VarNames& names) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) -> PolyQ {
        throw InvalidArgument("polynomial parse error at offset " + std::to_string(pos) + ": " + why);
    };
    std::vector<PolyQ::Term> ts;
    skip();
    if (pos == text.size()) fail("empty input");
    bool first = true;
    while (true) {
        skip();
        if (pos == text.size()) break;
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip();
        } else if (!first) {
            fail("expected + or -");
        }
        first = false;
        Rational c = 1;
        bool have_coeff = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::size_t start = pos;
            while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
                ++pos;
            c = parse_rational(text.substr(start, pos - start));
            have_coeff = true;
        }
        Monomial m;
        bool have_var = false;
        while (true) {
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip();
            }
            if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos]))) break;
            std::size_t start = pos;
            while (pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos]))) ++pos;
            const std::string nm = text.substr(start, pos - start);
            auto it = std::find(names.begin(), names.end(), nm);
            if (it == names.end()) fail("unknown variable '" + nm + "'");
            int e = 1;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                skip();
                std::size_t es = pos;
                if (pos < text.size() && text[pos] == '-') ++pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (es == pos) fail("missing exponent");
                e = std::stoi(text.substr(es, pos - es));
            }
            m.e[it - names.begin()] = static_cast<std::int16_t>(m.e[it - names.begin()] + e);
            have_var = true;
        }
        if (!have_coeff && !have_var) fail("empty term");
        ts.emplace_back(m, c * sign);
    }
    return PolyQ::from_terms(std::move(ts));
}

// Exponents of the first `arity` variables paired with coefficient strings.
template <class Json>
Json to_json_sparse(const PolyQ& p, int arity) {
    Json out = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json exps = Json::array();
        for (int v = 0; v < arity; ++v) exps.push_back(int(m.e[v]));
        out.push_back(Json::array({exps, to_string(c)}));
    }
    return out;
}

template <class Json>
PolyQ from_json_sparse(const Json& j) {
    std::vector<PolyQ::Term> ts;
    for (const auto& item : j) {
        Monomial m;
        const auto& exps = item.at(0);
        if (exps.size() > static_cast<std::size_t>(kMaxVars)) throw InvalidArgument("too many variables");
        for (std::size_t v = 0; v < exps.size(); ++v) m.e[v] = static_cast<std::int16_t>(exps[v].template get<int>());
        ts.emplace_back(m, parse_rational(item.at(1).template get<std::string>()));
    }
    return PolyQ::from_terms(std::move(ts));
}

}  // namespace groves
