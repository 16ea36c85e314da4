/**
 * @file trace_poly.hpp
 * @brief Sparse integer polynomials in the seven trace coordinates
 *        a, b, c, x, y, z, d.
 *
 * Monomials are exponent 7-vectors packed into a uint64 key (one byte per
 * variable). Coefficients are overflow-checked int64; trace reduction of the
 * word lengths used here stays far below that range, and the check turns a
 * silent wrap into an exception if anything ever exceeds it.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fricke {

constexpr int kNumVars = 7;
inline constexpr std::array<char, kNumVars> kVarNames{'a', 'b', 'c', 'x', 'y', 'z', 'd'};

struct Monomial {
    std::array<std::uint8_t, kNumVars> e{};

    std::uint64_t key() const {
        std::uint64_t k = 0;
        for (int i = 0; i < kNumVars; ++i) k |= static_cast<std::uint64_t>(e[i]) << (8 * i);
        return k;
    }
    static Monomial from_key(std::uint64_t k) {
        Monomial m;
        for (int i = 0; i < kNumVars; ++i) m.e[i] = static_cast<std::uint8_t>((k >> (8 * i)) & 0xFF);
        return m;
    }
    int degree() const {
        int d = 0;
        for (auto v : e) d += v;
        return d;
    }
};

/// grlex with a < b < c < x < y < z < d: higher total degree first, ties by
/// lexicographic exponent comparison (larger first). Used for stable printing.
inline bool grlex_before(const Monomial& lhs, const Monomial& rhs) {
    const int dl = lhs.degree(), dr = rhs.degree();
    if (dl != dr) return dl > dr;
    for (int i = 0; i < kNumVars; ++i)
        if (lhs.e[i] != rhs.e[i]) return lhs.e[i] > rhs.e[i];
    return false;
}

class TracePolynomial {
public:
    TracePolynomial() = default;

    static TracePolynomial constant(std::int64_t c) {
        TracePolynomial p;
        if (c != 0) p.terms_[0] = c;
        return p;
    }
    static TracePolynomial variable(int idx) {
        TracePolynomial p;
        Monomial m;
        m.e[idx] = 1;
        p.terms_[m.key()] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<std::uint64_t, std::int64_t>& terms() const { return terms_; }

    void add_term(std::uint64_t key, std::int64_t coef) {
        if (coef == 0) return;
        auto [it, inserted] = terms_.emplace(key, coef);
        if (!inserted) {
            std::int64_t s;
            if (__builtin_add_overflow(it->second, coef, &s)) throw std::overflow_error("trace polynomial coefficient overflow");
            if (s == 0) terms_.erase(it);
            else it->second = s;
        }
    }

    TracePolynomial& operator+=(const TracePolynomial& o) {
        for (const auto& [k, v] : o.terms_) add_term(k, v);
        return *this;
    }
    TracePolynomial& operator-=(const TracePolynomial& o) {
        for (const auto& [k, v] : o.terms_) add_term(k, -v);
        return *this;
    }
    friend TracePolynomial operator+(TracePolynomial l, const TracePolynomial& r) { return l += r; }
    friend TracePolynomial operator-(TracePolynomial l, const TracePolynomial& r) { return l -= r; }

    friend TracePolynomial operator*(const TracePolynomial& l, const TracePolynomial& r) {
        TracePolynomial out;
        for (const auto& [k1, v1] : l.terms_) {
            const Monomial m1 = Monomial::from_key(k1);
            for (const auto& [k2, v2] : r.terms_) {
                const Monomial m2 = Monomial::from_key(k2);
                Monomial m;
                for (int i = 0; i < kNumVars; ++i) {
                    const int e = m1.e[i] + m2.e[i];
                    if (e > 255) throw std::overflow_error("trace polynomial exponent overflow");
                    m.e[i] = static_cast<std::uint8_t>(e);
                }
                std::int64_t v;
                if (__builtin_mul_overflow(v1, v2, &v)) throw std::overflow_error("trace polynomial coefficient overflow");
                out.add_term(m.key(), v);
            }
        }
        return out;
    }

    friend bool operator==(const TracePolynomial& l, const TracePolynomial& r) { return l.terms_ == r.terms_; }

    double eval(const std::array<double, kNumVars>& pt) const {
        // per-variable power tables up to the max degree present
        std::array<int, kNumVars> maxdeg{};
        for (const auto& [k, v] : terms_) {
            const Monomial m = Monomial::from_key(k);
            for (int i = 0; i < kNumVars; ++i) maxdeg[i] = std::max(maxdeg[i], static_cast<int>(m.e[i]));
        }
        std::array<std::array<double, 32>, kNumVars> pw;
        for (int i = 0; i < kNumVars; ++i) {
            pw[i][0] = 1.0;
            for (int j = 1; j <= maxdeg[i] && j < 32; ++j) pw[i][j] = pw[i][j - 1] * pt[i];
            for (int j = 32; j <= maxdeg[i]; ++j) (void)j;  // exponents >= 32 handled below
        }
        double s = 0.0;
        for (const auto& [k, v] : terms_) {
            const Monomial m = Monomial::from_key(k);
            double t = static_cast<double>(v);
            for (int i = 0; i < kNumVars; ++i) {
                const int e = m.e[i];
                if (e < 32) t *= pw[i][e];
                else for (int j = 0; j < e; ++j) t *= pt[i];
            }
            s += t;
        }
        return s;
    }

    /// canonical textual form, grlex-descending, e.g. "b^2*d - b*x*y + ... - 4"
    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Monomial, std::int64_t>> items;
        items.reserve(terms_.size());
        for (const auto& [k, v] : terms_) items.emplace_back(Monomial::from_key(k), v);
        std::sort(items.begin(), items.end(),
                  [](const auto& l, const auto& r) { return grlex_before(l.first, r.first); });
        std::string out;
        bool first = true;
        for (const auto& [m, c] : items) {
            const std::int64_t ac = c < 0 ? -c : c;
            if (first) {
                if (c < 0) out += "-";
                first = false;
            } else {
                out += c < 0 ? " - " : " + ";
            }
            std::string mono;
            for (int i = 0; i < kNumVars; ++i) {
                if (m.e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += kVarNames[i];
                if (m.e[i] > 1) mono += "^" + std::to_string(static_cast<int>(m.e[i]));
            }
            if (mono.empty()) out += std::to_string(ac);
            else if (ac == 1) out += mono;
            else out += std::to_string(ac) + "*" + mono;
        }
        return out;
    }

private:
    std::map<std::uint64_t, std::int64_t> terms_;  // packed monomial -> coefficient
};

}  // namespace fricke
