/**
 * @file word.hpp
 * @brief Freely reduced words in F3 = <A,B,C>, evaluation under SU(2)
 *        representations, and the built-in Dehn twist automorphisms.
 *
 * Text syntax: uppercase letter = generator, lowercase = its inverse
 * ("ABa" = A B A^-1). This is the stable external format.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fricke/su2.hpp"

namespace fricke {

struct WordSyntaxError : std::invalid_argument {
    explicit WordSyntaxError(char ch)
        : std::invalid_argument(std::string("unknown word symbol '") + ch + "'") {}
};

struct ArityError : std::out_of_range {
    explicit ArityError(int idx)
        : std::out_of_range("generator index " + std::to_string(idx) + " outside representation arity") {}
};

/// A letter is +g for generator g (1-based), -g for its inverse.
using Letter = std::int8_t;

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) { reduce(); }

    static Word parse(std::string_view text) {
        std::vector<Letter> ls;
        ls.reserve(text.size());
        for (char ch : text) {
            if (ch >= 'A' && ch <= 'C') ls.push_back(static_cast<Letter>(ch - 'A' + 1));
            else if (ch >= 'a' && ch <= 'c') ls.push_back(static_cast<Letter>(-(ch - 'a' + 1)));
            else if (ch == ' ') continue;
            else throw WordSyntaxError(ch);
        }
        return Word(std::move(ls));
    }

    std::string str() const {
        std::string s;
        s.reserve(letters_.size());
        for (Letter l : letters_)
            s.push_back(l > 0 ? static_cast<char>('A' + l - 1) : static_cast<char>('a' - l - 1));
        return s;
    }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const {
        std::vector<Letter> ls;
        ls.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) ls.push_back(static_cast<Letter>(-*it));
        return Word(std::move(ls));
    }

    friend Word operator*(const Word& u, const Word& v) {
        std::vector<Letter> ls = u.letters_;
        ls.insert(ls.end(), v.letters_.begin(), v.letters_.end());
        return Word(std::move(ls));
    }

    friend bool operator==(const Word& u, const Word& v) { return u.letters_ == v.letters_; }

    /// conjugate u * w * u^-1
    static Word conj(const Word& u, const Word& w) { return u * w * u.inverse(); }

private:
    void reduce() {
        std::vector<Letter> out;
        out.reserve(letters_.size());
        for (Letter l : letters_) {
            if (!out.empty() && out.back() == -l) out.pop_back();
            else out.push_back(l);
        }
        letters_ = std::move(out);
    }

    std::vector<Letter> letters_;
};

/// Representation of F_k into SU(2): images of the generators.
struct Representation {
    std::vector<Su2> gens;

    static Representation identity(std::size_t k = 3) {
        return {std::vector<Su2>(k, Su2::identity())};
    }
    std::size_t arity() const { return gens.size(); }
};

/// Ordered product of generator images. Renormalizes every 64 products to
/// bound norm drift.
inline Su2 evaluate(const Word& w, const Representation& rho) {
    Su2 out = Su2::identity();
    int since_renorm = 0;
    for (Letter l : w.letters()) {
        const int idx = std::abs(l) - 1;
        if (idx >= static_cast<int>(rho.arity())) throw ArityError(idx);
        out = l > 0 ? out * rho.gens[idx] : out * rho.gens[idx].inverse();
        if (++since_renorm == 64) {
            out = out.normalized();
            since_renorm = 0;
        }
    }
    return out.normalized();
}

/// Endomorphism of F3 given by generator images; the inverse images are
/// supplied (not computed) and certified by composition.
struct EndoF3 {
    std::string name;
    std::array<Word, 3> images;
    std::array<Word, 3> inverse_images;

    /// true iff composing images with inverse_images (both ways) yields the
    /// generators exactly -- the automorphism certificate.
    bool certify() const;

    EndoF3 inverted() const { return {name + "^-1", inverse_images, images}; }
};

inline Word apply_endo(const EndoF3& phi, const Word& w) {
    std::vector<Letter> out;
    out.reserve(w.size() * 4);
    for (Letter l : w.letters()) {
        const Word& img = phi.images[std::abs(l) - 1];
        if (l > 0) {
            for (Letter m : img.letters()) out.push_back(m);
        } else {
            const auto& ls = img.letters();
            for (auto it = ls.rbegin(); it != ls.rend(); ++it) out.push_back(static_cast<Letter>(-*it));
        }
    }
    return Word(std::move(out));
}

/// pull-back rho o phi: generator i maps to evaluate(phi(gen_i), rho)
inline Representation pullback(const EndoF3& phi, const Representation& rho) {
    Representation out;
    out.gens.reserve(3);
    for (int i = 0; i < 3; ++i) out.gens.push_back(evaluate(phi.images[i], rho));
    return out;
}

inline bool EndoF3::certify() const {
    const EndoF3 inv{name, inverse_images, images};
    for (int i = 0; i < 3; ++i) {
        const Word gen(std::vector<Letter>{static_cast<Letter>(i + 1)});
        if (!(apply_endo(*this, inverse_images[i]) == gen)) return false;
        if (!(apply_endo(inv, images[i]) == gen)) return false;
    }
    return true;
}

enum class Surface { N22, N13, N31 };

inline const char* surface_name(Surface s) {
    switch (s) {
        case Surface::N22: return "N22";
        case Surface::N13: return "N13";
        case Surface::N31: return "N31";
    }
    return "?";
}

inline Surface surface_from_name(std::string_view s) {
    if (s == "N22") return Surface::N22;
    if (s == "N13") return Surface::N13;
    if (s == "N31") return Surface::N31;
    throw std::invalid_argument("unknown surface: " + std::string(s));
}

/// Boundary words per surface (fixed constants of the presentations
/// A^2B^2CK^-1, A^2BCK^-1, A^2B^2C^2K^-1).
inline std::vector<Word> boundary_words(Surface s) {
    switch (s) {
        case Surface::N22: return {Word::parse("C"), Word::parse("AABBC")};
        case Surface::N13: return {Word::parse("B"), Word::parse("C"), Word::parse("AABC")};
        case Surface::N31: return {Word::parse("AABBCC")};
    }
    return {};
}

/// The generator images of the built-in Dehn twists. All are printed in the
/// paper text; the twists about T, U (both surfaces' U) are conjugations by
/// the curve word on the strands the curve encloses, tau_W's images were
/// solved directly. Inverse images conjugate by the inverse curve word.
inline std::vector<EndoF3> builtin_twists(Surface s) {
    const Word A = Word::parse("A"), B = Word::parse("B"), C = Word::parse("C");
    auto conj3 = [&](const std::string& nm, const Word& u, bool onA, bool onB, bool onC) {
        const Word ui = u.inverse();
        EndoF3 e;
        e.name = nm;
        e.images = {onA ? Word::conj(u, A) : A, onB ? Word::conj(u, B) : B, onC ? Word::conj(u, C) : C};
        e.inverse_images = {onA ? Word::conj(ui, A) : A, onB ? Word::conj(ui, B) : B, onC ? Word::conj(ui, C) : C};
        return e;
    };
    switch (s) {
        case Surface::N22:
            // U = BBC: B -> BBCBc bb, C -> BBCbb
            return {conj3("tau_U", Word::parse("BBC"), false, true, true)};
        case Surface::N13: {
            EndoF3 tw;  // W = CAB^-1A^-1; images as printed, inverses solved and certified
            tw.name = "tau_W";
            tw.images = {Word::parse("CAbacAB"), Word::parse("baCABacAB"), Word::parse("CAbaCABac")};
            tw.inverse_images = {Word::parse("ABacAbaCA"), Word::parse("acABaCA"), Word::parse("ABaCAba")};
            return {conj3("tau_T", Word::parse("AAB"), true, true, false),
                    conj3("tau_U", Word::parse("CAA"), true, false, true),
                    tw};
        }
        case Surface::N31: {
            // B -> A^-2 C^-2 B C^2 A^2
            const Word V = Word::parse("CCAA");
            EndoF3 e;
            e.name = "tau_U";
            e.images = {A, V.inverse() * B * V, C};
            e.inverse_images = {A, V * B * V.inverse(), C};
            return {e};
        }
    }
    return {};
}

inline EndoF3 identity_endo() {
    return {"id",
            {Word::parse("A"), Word::parse("B"), Word::parse("C")},
            {Word::parse("A"), Word::parse("B"), Word::parse("C")}};
}

}  // namespace fricke
