#pragma once

// GF(2^m) arithmetic for m <= 16, elements held as coefficient masks of
// reduced polynomials modulo a primitive g(z).

#include <array>
#include <cstdint>
#include <string>

#include "sxor/error.hpp"
#include "sxor/gf2poly.hpp"

namespace sxor {

inline constexpr unsigned kMaxFieldDegree = 16;

namespace detail {

inline std::uint64_t clmul(std::uint32_t a, std::uint32_t b) noexcept {
    std::uint64_t r = 0;
    std::uint64_t aa = a;
    while (b != 0) {
        if (b & 1U) r ^= aa;
        aa <<= 1;
        b >>= 1;
    }
    return r;
}

inline std::uint32_t reduce(std::uint64_t v, std::uint32_t g, unsigned m) noexcept {
    for (unsigned k = 63; k >= m; --k)
        if ((v >> k) & 1U) v ^= static_cast<std::uint64_t>(g) << (k - m);
    return static_cast<std::uint32_t>(v);
}

} // namespace detail

// True iff g has degree m, g(0) = 1 and z has multiplicative order 2^m - 1
// modulo g. Walks the powers of z, so keep m small.
inline bool is_primitive(const Poly2& g, unsigned m) {
    if (m == 0 || m > kMaxFieldDegree) return false;
    if (g.degree() != m || !g.coeff(0)) return false;
    const auto gm = static_cast<std::uint32_t>(g.to_mask());
    const std::uint32_t order = (std::uint32_t{1} << m) - 1;
    std::uint32_t x = 1;
    for (std::uint32_t e = 1; e <= order; ++e) {
        x = detail::reduce(static_cast<std::uint64_t>(x) << 1, gm, m);
        if (x == 1) return e == order;
    }
    return false;
}

// Built-in primitive polynomials, index m (entry 0 unused).
inline constexpr std::array<std::uint32_t, kMaxFieldDegree + 1> kDefaultModuli = {
    0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,    0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

inline Poly2 default_modulus(unsigned m) {
    if (m == 0 || m > kMaxFieldDegree)
        throw InvalidArgument("no built-in modulus for m = " + std::to_string(m));
    return Poly2::from_mask(kDefaultModuli[m]);
}

// Smallest m with n <= 2^m - 1.
inline unsigned min_field_degree(std::size_t n) {
    unsigned m = 1;
    while (((std::size_t{1} << m) - 1) < n) ++m;
    return m;
}

class FieldCtx {
public:
    // Throws InvalidArgument unless g is primitive.
    explicit FieldCtx(const Poly2& g) {
        auto d = g.degree();
        if (!d || *d == 0 || *d > kMaxFieldDegree)
            throw InvalidArgument("modulus degree must be in 1.." + std::to_string(kMaxFieldDegree));
        if (!is_primitive(g, static_cast<unsigned>(*d)))
            throw InvalidArgument("modulus " + g.to_string() + " is not primitive");
        m_ = static_cast<unsigned>(*d);
        g_ = static_cast<std::uint32_t>(g.to_mask());
    }

    unsigned m() const noexcept { return m_; }
    Poly2 modulus() const { return Poly2::from_mask(g_); }
    std::uint32_t modulus_mask() const noexcept { return g_; }
    // Multiplicative group order 2^m - 1.
    std::uint32_t order() const noexcept { return (std::uint32_t{1} << m_) - 1; }

    friend bool operator==(const FieldCtx&, const FieldCtx&) = default;

private:
    unsigned m_ = 0;
    std::uint32_t g_ = 0;
};

class FieldElem {
public:
    FieldElem(const FieldCtx& ctx, std::uint32_t value) : ctx_(ctx), value_(value) {
        if ((value >> ctx.m()) != 0) value_ = detail::reduce(value, ctx.modulus_mask(), ctx.m());
    }

    FieldElem(const FieldCtx& ctx, const Poly2& p) : ctx_(ctx) {
        value_ = static_cast<std::uint32_t>((p % ctx.modulus()).to_mask());
    }

    static FieldElem zero(const FieldCtx& ctx) { return {ctx, 0U}; }
    static FieldElem one(const FieldCtx& ctx) { return {ctx, 1U}; }

    const FieldCtx& ctx() const noexcept { return ctx_; }
    std::uint32_t value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }
    Poly2 poly() const { return Poly2::from_mask(value_); }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        if (a.ctx_ != b.ctx_) throw ContextMismatch();
        return {a.ctx_, a.value_ ^ b.value_};
    }

    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        if (a.ctx_ != b.ctx_) throw ContextMismatch();
        return {a.ctx_, detail::reduce(detail::clmul(a.value_, b.value_), a.ctx_.modulus_mask(), a.ctx_.m())};
    }

    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    friend bool operator==(const FieldElem&, const FieldElem&) = default;

private:
    FieldCtx ctx_;
    std::uint32_t value_ = 0;
};

inline FieldElem f_mul(const FieldElem& a, const FieldElem& b) { return a * b; }

inline FieldElem f_pow(const FieldElem& base, std::uint64_t e) {
    FieldElem result = FieldElem::one(base.ctx());
    FieldElem sq = base;
    while (e != 0) {
        if (e & 1U) result *= sq;
        sq *= sq;
        e >>= 1;
    }
    return result;
}

// <z^e>, exponent reduced mod 2^m - 1.
inline FieldElem f_pow(std::uint64_t e, const FieldCtx& ctx) {
    return f_pow(FieldElem(ctx, 2U), e % ctx.order());
}

// a^(2^m - 2)
inline FieldElem f_inv(const FieldElem& a) {
    if (a.is_zero()) throw DivisionByZero();
    return f_pow(a, a.ctx().order() - 1);
}

} // namespace sxor
