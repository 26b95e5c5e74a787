#pragma once

#include <vector>

#include "groves/poly.hpp"

namespace groves {

// Power series in x, y, z (variables 0, 1, 2) truncated above total degree D.
// Coefficients are stored densely, grouped by total degree.
class TruncSeries3 {
public:
    explicit TruncSeries3(int D = 24) : D_(D), c_(offset(D + 1)) {
        if (D < 0) throw InvalidArgument("series cutoff must be nonnegative");
    }

    static TruncSeries3 from_poly(const PolyQ& p, int D) {
        TruncSeries3 s(D);
        for (const auto& [m, c] : p.terms()) {
            check_trivariate(m);
            if (m.total() <= D) s.at(m.e[0], m.e[1], m.e[2]) += c;
        }
        return s;
    }

    int cutoff() const { return D_; }

    static std::size_t offset(int d) {
        return static_cast<std::size_t>(d) * (d + 1) * (d + 2) / 6;
    }
    static std::size_t index(int i, int j, int k) {
        const int d = i + j + k, m = d - i;
        return offset(d) + static_cast<std::size_t>(m * (m + 1) / 2 + k);
    }

    Rational coeff(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i + j + k > D_) return 0;
        return c_[index(i, j, k)];
    }
    Rational& at(int i, int j, int k) {
        if (i < 0 || j < 0 || k < 0 || i + j + k > D_) throw DomainError("series index beyond cutoff");
        return c_[index(i, j, k)];
    }

    template <class F>
    void for_each_index(F&& f) const {
        for (int d = 0; d <= D_; ++d)
            for (int i = d; i >= 0; --i)
                for (int j = d - i; j >= 0; --j) f(i, j, d - i - j);
    }

    friend TruncSeries3 operator+(const TruncSeries3& a, const TruncSeries3& b) {
        check_same(a, b);
        TruncSeries3 r = a;
        for (std::size_t t = 0; t < r.c_.size(); ++t) r.c_[t] += b.c_[t];
        return r;
    }
    friend TruncSeries3 operator-(const TruncSeries3& a, const TruncSeries3& b) {
        check_same(a, b);
        TruncSeries3 r = a;
        for (std::size_t t = 0; t < r.c_.size(); ++t) r.c_[t] -= b.c_[t];
        return r;
    }
    friend bool operator==(const TruncSeries3& a, const TruncSeries3& b) { return a.D_ == b.D_ && a.c_ == b.c_; }

    friend TruncSeries3 operator*(const TruncSeries3& a, const TruncSeries3& b) {
        check_same(a, b);
        return a.times_terms(b.nonzero_terms());
    }

    // Product with a polynomial, touching only its nonzero terms.
    TruncSeries3 times(const PolyQ& p) const {
        std::vector<std::pair<std::array<int, 3>, Rational>> ts;
        for (const auto& [m, c] : p.terms()) {
            check_trivariate(m);
            ts.push_back({{m.e[0], m.e[1], m.e[2]}, c});
        }
        return times_terms(ts);
    }

    // Solves q * result = this, where q is a polynomial with nonzero constant term.
    TruncSeries3 divided_by(const PolyQ& q) const {
        std::vector<std::pair<std::array<int, 3>, Rational>> ts;
        for (const auto& [m, c] : q.terms()) {
            check_trivariate(m);
            if (!m.is_one()) ts.push_back({{m.e[0], m.e[1], m.e[2]}, c});
        }
        return solve(q.constant_term(), ts);
    }

    TruncSeries3 inverse() const {
        TruncSeries3 one(D_);
        one.at(0, 0, 0) = 1;
        auto ts = nonzero_terms();
        std::erase_if(ts, [](const auto& t) { return t.first == std::array<int, 3>{0, 0, 0}; });
        return one.solve(coeff(0, 0, 0), ts);
    }

    PolyQ to_poly() const {
        std::vector<PolyQ::Term> ts;
        for_each_index([&](int i, int j, int k) {
            const Rational& c = c_[index(i, j, k)];
            if (c != 0) {
                Monomial m;
                m.e[0] = static_cast<std::int16_t>(i);
                m.e[1] = static_cast<std::int16_t>(j);
                m.e[2] = static_cast<std::int16_t>(k);
                ts.emplace_back(m, c);
            }
        });
        return PolyQ::from_terms(std::move(ts));
    }

private:
    using SparseTerms = std::vector<std::pair<std::array<int, 3>, Rational>>;

    static void check_trivariate(const Monomial& m) {
        if (!m.nonnegative()) throw DomainError("power series cannot hold negative exponents");
        for (int v = 3; v < kMaxVars; ++v)
            if (m.e[v]) throw DomainError("power series is trivariate in x, y, z");
    }
    static void check_same(const TruncSeries3& a, const TruncSeries3& b) {
        if (a.D_ != b.D_) throw InvalidArgument("series cutoffs differ");
    }

    SparseTerms nonzero_terms() const {
        SparseTerms ts;
        for_each_index([&](int i, int j, int k) {
            const Rational& c = c_[index(i, j, k)];
            if (c != 0) ts.push_back({{i, j, k}, c});
        });
        return ts;
    }

    TruncSeries3 times_terms(const SparseTerms& ts) const {
        TruncSeries3 r(D_);
        for_each_index([&](int i, int j, int k) {
            const Rational& a = c_[index(i, j, k)];
            if (a == 0) return;
            for (const auto& [e, c] : ts) {
                const int ii = i + e[0], jj = j + e[1], kk = k + e[2];
                if (ii + jj + kk <= D_) r.c_[index(ii, jj, kk)] += a * c;
            }
        });
        return r;
    }

    // Coefficientwise recurrence q0 * r_n = s_n - sum_t q_t r_{n-t}, in increasing degree.
    TruncSeries3 solve(const Rational& q0, const SparseTerms& rest) const {
        if (q0 == 0) throw DomainError("series division needs a nonzero constant term");
        TruncSeries3 r(D_);
        const Rational inv = 1 / q0;
        Rational acc;
        for_each_index([&](int i, int j, int k) {
            acc = c_[index(i, j, k)];
            for (const auto& [e, c] : rest) {
                const int ii = i - e[0], jj = j - e[1], kk = k - e[2];
                if (ii < 0 || jj < 0 || kk < 0) continue;
                acc -= c * r.c_[index(ii, jj, kk)];
            }
            r.c_[index(i, j, k)] = acc * inv;
        });
        return r;
    }

    int D_;
    std::vector<Rational> c_;
};

inline TruncSeries3 series_inverse(const TruncSeries3& s) { return s.inverse(); }

}  // namespace groves
