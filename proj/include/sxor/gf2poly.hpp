#pragma once

// Polynomials over F2 stored as dense coefficient bit vectors.
//
// Coefficient of z^k lives at bit k (bit 0 is the constant term), so a
// packet bit s_{j,k} with 1-based k sits at index k-1. The word vector is
// kept canonical: no trailing zero words, the zero polynomial is empty.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sxor/error.hpp"

namespace sxor {

class Poly2 {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    Poly2() = default;

    static Poly2 from_mask(std::uint64_t mask) {
        Poly2 p;
        if (mask != 0) p.words_.push_back(mask);
        return p;
    }

    static Poly2 monomial(std::size_t k) {
        Poly2 p;
        p.words_.assign(k / kWordBits + 1, 0);
        p.words_.back() = Word{1} << (k % kWordBits);
        return p;
    }

    static Poly2 one() { return from_mask(1); }

    // Bits LSB-first within each byte, byte 0 first. Bits at index >= nbits
    // are ignored.
    static Poly2 from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
        Poly2 p;
        const std::size_t nbytes = std::min(bytes.size(), (nbits + 7) / 8);
        p.words_.assign((nbytes + 7) / 8, 0);
        for (std::size_t i = 0; i < nbytes; ++i)
            p.words_[i / 8] |= Word{bytes[i]} << (8 * (i % 8));
        p.truncate(nbits);
        return p;
    }

    static Poly2 from_words(std::vector<Word> words) {
        Poly2 p;
        p.words_ = std::move(words);
        p.trim();
        return p;
    }

    bool is_zero() const noexcept { return words_.empty(); }

    // Empty for the zero polynomial.
    std::optional<std::size_t> degree() const noexcept {
        if (words_.empty()) return std::nullopt;
        return (words_.size() - 1) * kWordBits + (kWordBits - 1 - std::countl_zero(words_.back()));
    }

    // Number of coefficient bits needed: deg + 1, or 0 for zero.
    std::size_t bit_length() const noexcept {
        auto d = degree();
        return d ? *d + 1 : 0;
    }

    // Index of the lowest set coefficient. Empty for zero.
    std::optional<std::size_t> low_index() const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] != 0) return i * kWordBits + std::countr_zero(words_[i]);
        return std::nullopt;
    }

    bool coeff(std::size_t k) const noexcept {
        const std::size_t w = k / kWordBits;
        return w < words_.size() && ((words_[w] >> (k % kWordBits)) & 1U);
    }

    void set_coeff(std::size_t k, bool value) {
        const std::size_t w = k / kWordBits;
        if (value) {
            if (w >= words_.size()) words_.resize(w + 1, 0);
            words_[w] |= Word{1} << (k % kWordBits);
        } else if (w < words_.size()) {
            words_[w] &= ~(Word{1} << (k % kWordBits));
            trim();
        }
    }

    void flip_coeff(std::size_t k) {
        const std::size_t w = k / kWordBits;
        if (w >= words_.size()) words_.resize(w + 1, 0);
        words_[w] ^= Word{1} << (k % kWordBits);
        trim();
    }

    // Number of monomial terms.
    std::size_t weight() const noexcept {
        std::size_t n = 0;
        for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool is_monomial() const noexcept { return weight() == 1; }

    std::span<const Word> words() const noexcept { return words_; }

    // Low 64 coefficients. Throws when the polynomial does not fit.
    std::uint64_t to_mask() const {
        if (words_.size() > 1) throw InvalidArgument("polynomial does not fit in 64 bits");
        return words_.empty() ? 0 : words_[0];
    }

    std::vector<std::uint8_t> to_bytes(std::size_t nbits) const {
        std::vector<std::uint8_t> out((nbits + 7) / 8, 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const std::size_t w = i / 8;
            if (w >= words_.size()) break;
            out[i] = static_cast<std::uint8_t>(words_[w] >> (8 * (i % 8)));
        }
        if (nbits % 8 != 0 && !out.empty())
            out.back() &= static_cast<std::uint8_t>((1U << (nbits % 8)) - 1);
        return out;
    }

    // this += z^shift * p
    void add_shifted(const Poly2& p, std::size_t shift) {
        if (p.is_zero()) return;
        const std::size_t ws = shift / kWordBits;
        const unsigned bs = static_cast<unsigned>(shift % kWordBits);
        const std::size_t need = ws + p.words_.size() + (bs != 0 ? 1 : 0);
        if (words_.size() < need) words_.resize(need, 0);
        if (bs == 0) {
            for (std::size_t i = 0; i < p.words_.size(); ++i) words_[ws + i] ^= p.words_[i];
        } else {
            Word carry = 0;
            for (std::size_t i = 0; i < p.words_.size(); ++i) {
                words_[ws + i] ^= (p.words_[i] << bs) | carry;
                carry = p.words_[i] >> (kWordBits - bs);
            }
            words_[ws + p.words_.size()] ^= carry;
        }
        trim();
    }

    // Keep only coefficients below nbits.
    void truncate(std::size_t nbits) {
        const std::size_t keep = (nbits + kWordBits - 1) / kWordBits;
        if (words_.size() > keep) words_.resize(keep);
        if (nbits % kWordBits != 0 && words_.size() == keep && keep > 0)
            words_.back() &= (Word{1} << (nbits % kWordBits)) - 1;
        trim();
    }

    Poly2& operator+=(const Poly2& o) {
        add_shifted(o, 0);
        return *this;
    }

    friend Poly2 operator+(Poly2 a, const Poly2& b) {
        a += b;
        return a;
    }

    // Multiplication by z^t.
    friend Poly2 operator<<(const Poly2& a, std::size_t t) {
        Poly2 r;
        r.add_shifted(a, t);
        return r;
    }

    // Floor division by z^t (drops the t lowest coefficients).
    friend Poly2 operator>>(const Poly2& a, std::size_t t) {
        const std::size_t ws = t / kWordBits;
        const unsigned bs = static_cast<unsigned>(t % kWordBits);
        if (ws >= a.words_.size()) return {};
        std::vector<Word> out(a.words_.size() - ws, 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = a.words_[ws + i] >> bs;
            if (bs != 0 && ws + i + 1 < a.words_.size())
                out[i] |= a.words_[ws + i + 1] << (kWordBits - bs);
        }
        return from_words(std::move(out));
    }

    // Schoolbook shift-XOR product; iterates over the sparser operand.
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        const Poly2& sparse = a.weight() <= b.weight() ? a : b;
        const Poly2& dense = &sparse == &a ? b : a;
        Poly2 r;
        for (std::size_t w = 0; w < sparse.words_.size(); ++w) {
            Word bits = sparse.words_[w];
            while (bits != 0) {
                const int k = std::countr_zero(bits);
                bits &= bits - 1;
                r.add_shifted(dense, w * kWordBits + static_cast<std::size_t>(k));
            }
        }
        return r;
    }

    Poly2& operator*=(const Poly2& o) {
        *this = *this * o;
        return *this;
    }

    friend bool operator==(const Poly2&, const Poly2&) = default;

    // Total order: by degree, then coefficients from the top. Only used for
    // sorting columns and map keys.
    friend bool operator<(const Poly2& a, const Poly2& b) {
        if (a.words_.size() != b.words_.size()) return a.words_.size() < b.words_.size();
        for (std::size_t i = a.words_.size(); i-- > 0;)
            if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
        return false;
    }

    // Human form, highest term first: "z^2+z+1", "0" for zero.
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = *degree() + 1; k-- > 0;) {
            if (!coeff(k)) continue;
            if (!out.empty()) out += '+';
            if (k == 0)
                out += '1';
            else if (k == 1)
                out += 'z';
            else
                out += "z^" + std::to_string(k);
        }
        return out;
    }

    // Coefficient mask in lowercase hex without prefix, "0" for zero.
    std::string to_hex() const {
        if (is_zero()) return "0";
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        const std::size_t nibbles = (*degree()) / 4 + 1;
        for (std::size_t i = nibbles; i-- > 0;) {
            const Word w = words_[(i * 4) / kWordBits];
            out += digits[(w >> ((i * 4) % kWordBits)) & 0xF];
        }
        return out;
    }

    // Accepts "0xB", "0XB", "b" and so on.
    static Poly2 from_hex(std::string_view text) {
        if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
            text.remove_prefix(2);
        if (text.empty()) throw ParseError("empty hex polynomial");
        Poly2 p;
        p.words_.assign((text.size() * 4 + kWordBits - 1) / kWordBits, 0);
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char c = text[text.size() - 1 - i];
            Word nib;
            if (c >= '0' && c <= '9')
                nib = static_cast<Word>(c - '0');
            else if (c >= 'a' && c <= 'f')
                nib = static_cast<Word>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                nib = static_cast<Word>(c - 'A' + 10);
            else
                throw ParseError(std::string("invalid hex digit '") + c + "'");
            p.words_[(i * 4) / kWordBits] |= nib << ((i * 4) % kWordBits);
        }
        p.trim();
        return p;
    }

    // Parses the human form. Whitespace is ignored, repeated terms cancel.
    static Poly2 parse(std::string_view text) {
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s += c;
        if (s.empty()) throw ParseError("empty polynomial");
        Poly2 p;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            const std::size_t end = std::min(s.find('+', pos), s.size());
            const std::string_view term = std::string_view(s).substr(pos, end - pos);
            if (term.empty()) throw ParseError("empty term in '" + std::string(text) + "'");
            if (term == "0") {
            } else if (term == "1") {
                p.flip_coeff(0);
            } else if (term == "z") {
                p.flip_coeff(1);
            } else if (term.size() > 2 && term.substr(0, 2) == "z^") {
                std::size_t k = 0;
                for (char c : term.substr(2)) {
                    if (c < '0' || c > '9')
                        throw ParseError("bad exponent in term '" + std::string(term) + "'");
                    k = k * 10 + static_cast<std::size_t>(c - '0');
                    if (k > (std::size_t{1} << 32)) throw ParseError("exponent too large");
                }
                p.flip_coeff(k);
            } else {
                throw ParseError("bad term '" + std::string(term) + "'");
            }
            pos = end + 1;
        }
        return p;
    }

private:
    void trim() noexcept {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }

    std::vector<Word> words_;
};

struct DivRem {
    Poly2 quotient;
    Poly2 remainder;
};

inline DivRem divrem(const Poly2& a, const Poly2& d) {
    if (d.is_zero()) throw DivisionByZero();
    const std::size_t dd = *d.degree();
    DivRem out{Poly2{}, a};
    while (!out.remainder.is_zero() && *out.remainder.degree() >= dd) {
        const std::size_t shift = *out.remainder.degree() - dd;
        out.quotient.set_coeff(shift, true);
        out.remainder.add_shifted(d, shift);
    }
    return out;
}

inline Poly2 operator%(const Poly2& a, const Poly2& d) { return divrem(a, d).remainder; }

// Solves h * s = b for s from the lowest coefficient upward, the software
// form of a feedback shift register. h must have a unit constant term.
// Throws InconsistentDivision unless b is exactly h * s with s < z^out_len.
inline Poly2 exact_div_low(const Poly2& b, const Poly2& h, std::size_t out_len) {
    if (h.is_zero()) throw DivisionByZero();
    if (!h.coeff(0)) throw InvalidArgument("exact_div_low needs a divisor with constant term 1");
    const std::size_t hd = *h.degree();
    const auto bw = b.words();
    std::vector<Poly2::Word> out((out_len + Poly2::kWordBits - 1) / Poly2::kWordBits, 0);

    if (hd <= 64) {
        // window bit (t-1) holds s_{k-t}; taps bit (t-1) holds h_t
        const Poly2::Word taps = hd == 0 ? 0 : (h >> 1).to_mask();
        Poly2::Word window = 0;
        for (std::size_t w = 0; w < out.size(); ++w) {
            const Poly2::Word bword = w < bw.size() ? bw[w] : 0;
            const std::size_t nbits = std::min<std::size_t>(Poly2::kWordBits, out_len - w * Poly2::kWordBits);
            Poly2::Word sword = 0;
            for (std::size_t i = 0; i < nbits; ++i) {
                const Poly2::Word bit =
                    ((bword >> i) & 1U) ^ static_cast<Poly2::Word>(std::popcount(window & taps) & 1);
                sword |= bit << i;
                window = (window << 1) | bit;
            }
            out[w] = sword;
        }
    } else {
        Poly2 residue = b;
        for (std::size_t k = 0; k < out_len; ++k) {
            if (!residue.coeff(k)) continue;
            out[k / Poly2::kWordBits] |= Poly2::Word{1} << (k % Poly2::kWordBits);
            residue.add_shifted(h, k);
        }
    }

    Poly2 s = Poly2::from_words(std::move(out));
    if (h * s != b)
        throw InconsistentDivision("input is not an exact multiple of the divisor within " +
                                   std::to_string(out_len) + " bits");
    return s;
}

inline Poly2 gcd(Poly2 a, Poly2 b) {
    while (!b.is_zero()) {
        Poly2 r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

struct SplitZt {
    std::size_t shift; // t
    Poly2 odd;         // h, with h(0) = 1
};

// p = z^t * h with h(0) = 1.
inline SplitZt split_zt(const Poly2& p) {
    auto low = p.low_index();
    if (!low) throw InvalidArgument("split_zt of the zero polynomial");
    return {*low, p >> *low};
}

} // namespace sxor
