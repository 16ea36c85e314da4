/**
 * @file trace_calculus.hpp
 * @brief Reduction of tr(rho(W)) to a polynomial in (a,b,c,x,y,z,d) for any
 *        word W in F3, via the SL2 trace identities
 *
 *            tr(P Q^-1)  = tr(P) tr(Q) - tr(PQ)
 *            tr(gP gQ)   = tr(gP) tr(gQ) - tr(P Q^-1)
 *            tr(ACB)     = ay + bz + cx - abc - d
 *
 * plus invariance of traces under cyclic rotation. The recursion strictly
 * decreases (length, #inverse letters) lexicographically: inverse
 * elimination keeps the length and removes an inverse letter, the
 * repeated-letter split shortens the word. Pivots are chosen
 * deterministically (first inverse letter; repeated letter with minimal
 * cyclic gap), so every word maps to one fixed polynomial representative
 * regardless of call history. Results are memoized on the canonical cyclic
 * key behind a mutex: concurrent calls return identical polynomials.
 */
#pragma once

#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fricke/trace_poly.hpp"
#include "fricke/word.hpp"

namespace fricke {

namespace detail {

using Letters = std::vector<Letter>;

// order A < B < C < A^-1 < B^-1 < C^-1 so positive rotations canonicalize first
inline int letter_ord(Letter l) { return l > 0 ? l - 1 : 2 - l; }

inline Letters cyclic_reduce(Letters w) {
    // assumes already freely reduced
    std::size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
        ++lo;
        --hi;
    }
    return Letters(w.begin() + lo, w.begin() + hi);
}

inline Letters invert(const Letters& w) {
    Letters out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(static_cast<Letter>(-*it));
    return out;
}

/// Lexicographically minimal rotation (traces are invariant under cyclic
/// rotation). Inversion also preserves traces but is deliberately not
/// canonicalized away: keeping the word orientation fixed makes the
/// (length, #inverse-letters) termination measure strictly decrease and the
/// reduction a pure function of the input word.
inline Letters canonical_cyclic(const Letters& w) {
    if (w.empty()) return w;
    const std::size_t n = w.size();
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int a = letter_ord(w[(i + j) % n]), b = letter_ord(w[(best + j) % n]);
            if (a < b) {
                best = i;
                break;
            }
            if (a > b) break;
        }
    }
    Letters rot;
    rot.reserve(n);
    rot.insert(rot.end(), w.begin() + best, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + best);
    return rot;
}

inline std::string key_of(const Letters& w) {
    std::string k;
    k.reserve(w.size());
    for (Letter l : w) k.push_back(static_cast<char>(letter_ord(l)));
    return k;
}

}  // namespace detail

class TraceCalculus {
public:
    static TraceCalculus& instance() {
        static TraceCalculus tc;
        return tc;
    }

    TracePolynomial trace_of_word(const Word& w) { return trace_letters(w.letters()); }

    /// a^2+b^2+c^2+d^2+x^2+y^2+z^2 - ((ab+cd)x + (bc+da)y + (ca+bd)z) + xyz + abcd - 4
    static TracePolynomial fricke_polynomial() {
        auto V = [](int i) { return TracePolynomial::variable(i); };
        const auto a = V(0), b = V(1), c = V(2), x = V(3), y = V(4), z = V(5), d = V(6);
        TracePolynomial p = a * a + b * b + c * c + d * d + x * x + y * y + z * z;
        p -= (a * b + c * d) * x;
        p -= (b * c + d * a) * y;
        p -= (c * a + b * d) * z;
        p += x * y * z + a * b * c * d;
        p -= TracePolynomial::constant(4);
        return p;
    }

private:
    TraceCalculus() {
        using detail::Letters;
        auto put = [&](const char* s, const TracePolynomial& p) {
            memo_[detail::key_of(detail::canonical_cyclic(Word::parse(s).letters()))] = p;
        };
        memo_[""] = TracePolynomial::constant(2);
        auto V = [](int i) { return TracePolynomial::variable(i); };
        put("A", V(0));
        put("B", V(1));
        put("C", V(2));
        put("a", V(0));  // tr(g^-1) = tr(g)
        put("b", V(1));
        put("c", V(2));
        put("AB", V(3));
        put("BC", V(4));
        put("CA", V(5));
        put("ABC", V(6));
        // tr(ACB) = ay + bz + cx - abc - d
        put("ACB", V(0) * V(4) + V(1) * V(5) + V(2) * V(3) - V(0) * V(1) * V(2) - V(6));
    }

    TracePolynomial trace_letters(const detail::Letters& raw) {
        using detail::Letters;
        const Letters w = detail::canonical_cyclic(detail::cyclic_reduce(raw));
        const std::string key = detail::key_of(w);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }

        const std::size_t n = w.size();
        TracePolynomial result;

        // locate an inverse letter to rotate to the end
        std::size_t inv_pos = n;
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] < 0) {
                inv_pos = i;
                break;
            }

        if (inv_pos < n) {
            // w ~ Q g^-1 : tr = tr(Q) tr(g) - tr(Qg)
            Letters rot;
            rot.reserve(n);
            rot.insert(rot.end(), w.begin() + inv_pos + 1, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + inv_pos + 1);
            const Letter g = static_cast<Letter>(-rot.back());
            Letters Q(rot.begin(), rot.end() - 1);
            Letters Qg = Q;
            Qg.push_back(g);
            result = trace_reduced(Q) * trace_letters({g}) - trace_reduced(Qg);
        } else {
            // positive word of length >= 4 (shorter ones are base cases or
            // have adjacent repeats): find repeated letter, minimal cyclic gap
            // Q becomes P Q^-1's inverse part, so pick the occurrence pair
            // leaving the shortest tail Q (fewest new inverse letters).
            std::size_t best_i = 0, best_j = 0, best_gap = n;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t step = 1; step < n; ++step) {
                    const std::size_t j = (i + step) % n;
                    if (w[j] == w[i]) {
                        const std::size_t gap = n - 1 - step;  // |Q| for rotation starting at i
                        if (gap < best_gap) {
                            best_gap = gap;
                            best_i = i;
                            best_j = j;
                        }
                    }
                }
            }
            // rotate so word = g P g Q with g at 0, second occurrence at m
            Letters rot;
            rot.reserve(n);
            rot.insert(rot.end(), w.begin() + best_i, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + best_i);
            const std::size_t m = (best_j + n - best_i) % n;
            const Letter g = rot[0];
            Letters P(rot.begin() + 1, rot.begin() + m);
            Letters Q(rot.begin() + m + 1, rot.end());
            Letters gP; gP.reserve(P.size() + 1);
            gP.push_back(g);
            gP.insert(gP.end(), P.begin(), P.end());
            Letters gQ; gQ.reserve(Q.size() + 1);
            gQ.push_back(g);
            gQ.insert(gQ.end(), Q.begin(), Q.end());
            Letters PQinv = P;
            const Letters Qi = detail::invert(Q);
            PQinv.insert(PQinv.end(), Qi.begin(), Qi.end());
            result = trace_letters(gP) * trace_letters(gQ) - trace_reduced(PQinv);
        }

        std::lock_guard<std::mutex> lock(mu_);
        return memo_.emplace(key, std::move(result)).first->second;
    }

    // entry point for letter sequences that may not be freely reduced
    TracePolynomial trace_reduced(const detail::Letters& raw) {
        detail::Letters out;
        out.reserve(raw.size());
        for (Letter l : raw) {
            if (!out.empty() && out.back() == -l) out.pop_back();
            else out.push_back(l);
        }
        return trace_letters(out);
    }

    std::mutex mu_;
    std::unordered_map<std::string, TracePolynomial> memo_;
};

inline TracePolynomial trace_of_word(const Word& w) {
    return TraceCalculus::instance().trace_of_word(w);
}

inline TracePolynomial fricke_polynomial() {
    static const TracePolynomial f = TraceCalculus::fricke_polynomial();
    return f;
}

/// Trace coordinates of the image representation, as polynomials in the
/// source coordinates: the induced map of an automorphism on the character
/// variety. Components are images of A, B, C, AB, BC, CA, ABC.
struct CoordinateMap {
    std::array<TracePolynomial, 7> comp;

    std::array<double, 7> eval(const std::array<double, 7>& pt) const {
        std::array<double, 7> out;
        for (int i = 0; i < 7; ++i) out[i] = comp[i].eval(pt);
        return out;
    }
};

inline CoordinateMap induced_map(const EndoF3& phi) {
    static const std::array<const char*, 7> basis{"A", "B", "C", "AB", "BC", "CA", "ABC"};
    CoordinateMap m;
    for (int i = 0; i < 7; ++i)
        m.comp[i] = trace_of_word(apply_endo(phi, Word::parse(basis[i])));
    return m;
}

}  // namespace fricke
