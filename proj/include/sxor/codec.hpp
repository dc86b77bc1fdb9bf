#pragma once

// Bit-level encoder, MAP decoder and zigzag decoder, plus the binary packet
// file format.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <iterator>
#include <ostream>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sxor/codes.hpp"
#include "sxor/error.hpp"
#include "sxor/gf2poly.hpp"
#include "sxor/polymat.hpp"

namespace sxor {

struct Packet {
    std::size_t index = 0;      // 1-based column of the generator matrix
    Poly2 bits;                 // c_i(z)
    std::size_t source_len = 0; // L
    std::size_t length = 0;     // payload bits, L + l_i when freshly encoded
    CodeSpec spec;

    friend bool operator==(const Packet&, const Packet&) = default;
};

struct EncodeStats {
    std::size_t xors = 0; // shifted-packet accumulations beyond the first term
};

// c_i = sum_j A(j, i) * s_j, one shift-then-XOR per monomial term.
inline std::vector<Packet> encode(const GenMatrix& a, std::span<const Poly2> sources, std::size_t source_len,
                                  EncodeStats* stats = nullptr) {
    if (sources.size() != a.k())
        throw InvalidArgument("expected " + std::to_string(a.k()) + " source packets, got " +
                              std::to_string(sources.size()));
    if (source_len == 0) throw InvalidArgument("source packets must be at least one bit long");
    for (std::size_t j = 0; j < sources.size(); ++j)
        if (sources[j].bit_length() > source_len)
            throw InvalidArgument("source packet " + std::to_string(j + 1) + " is longer than L=" +
                                  std::to_string(source_len) + " bits");

    std::vector<Packet> out;
    out.reserve(a.n());
    std::size_t xors = 0;
    for (std::size_t col = 0; col < a.n(); ++col) {
        Packet p{col + 1, Poly2{}, source_len, source_len + a.overhead(col), a.spec()};
        bool first = true;
        for (std::size_t row = 0; row < a.k(); ++row) {
            const Poly2& entry = a(row, col);
            for (std::size_t t = 0, top = entry.bit_length(); t < top; ++t) {
                if (!entry.coeff(t)) continue;
                if (!first) ++xors;
                first = false;
                p.bits.add_shifted(sources[row], t);
            }
        }
        out.push_back(std::move(p));
    }
    if (stats) stats->xors = xors;
    return out;
}

namespace detail {

inline std::vector<std::size_t> checked_indices(const GenMatrix& a, std::span<const Packet> packets,
                                                std::size_t source_len) {
    if (packets.size() != a.k())
        throw InvalidArgument("decoding needs exactly K=" + std::to_string(a.k()) + " packets, got " +
                              std::to_string(packets.size()));
    if (source_len == 0) throw InvalidArgument("source length must be positive");
    std::vector<std::size_t> cols;
    std::vector<bool> seen(a.n(), false);
    for (const Packet& p : packets) {
        if (p.index < 1 || p.index > a.n())
            throw InvalidArgument("packet index " + std::to_string(p.index) + " outside 1..N");
        if (seen[p.index - 1]) throw InvalidArgument("packet index " + std::to_string(p.index) + " given twice");
        seen[p.index - 1] = true;
        if (p.bits.bit_length() > source_len + a.overhead(p.index - 1))
            throw TrailingBits("packet " + std::to_string(p.index) + " is longer than L + l_i = " +
                               std::to_string(source_len + a.overhead(p.index - 1)) + " bits");
        cols.push_back(p.index - 1);
    }
    return cols;
}

} // namespace detail

// Solves (s_1..s_K) A_I = (c_i1..c_iK) as s = c * B / h, where B / h is
// A_I^-1 in lowest terms. The z^t factor of h shows up as t zero bits at
// the front of every b_i = (c * B)_i; the rest is one exact division per
// stream.
inline std::vector<Poly2> map_decode(const GenMatrix& a, std::span<const Packet> packets, std::size_t source_len) {
    const std::vector<std::size_t> cols = detail::checked_indices(a, packets, source_len);
    const std::size_t k = a.k();
    InverseFraction inv;
    try {
        inv = reduced_inverse(a.entries().select_columns(cols));
    } catch (const Singular&) {
        Sequence s;
        for (std::size_t c : cols) s.push_back(c + 1);
        throw SingularSubmatrix("det A_I = 0 for I = {" + format_sequence(s) + "}");
    }
    const PolyMatrix& adj = inv.numer;
    const auto [shift, h] = split_zt(inv.denom);
    const std::size_t hdeg = *h.degree();

    std::vector<Poly2> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        Poly2 b;
        for (std::size_t j = 0; j < k; ++j) {
            const Poly2& coef = adj(j, i);
            if (coef.is_zero()) continue;
            b += packets[j].bits * coef;
        }
        if (auto low = b.low_index(); low && *low < shift)
            throw InconsistentDivision("stream " + std::to_string(i + 1) + " has a set bit among the " +
                                       std::to_string(shift) + " leading bits that must be zero");
        b = b >> shift;
        // Solve over enough bits to see a quotient that overruns L.
        const std::size_t span_len = std::max(source_len, b.bit_length() > hdeg ? b.bit_length() - hdeg : 0);
        Poly2 s = exact_div_low(b, h, span_len);
        if (s.bit_length() > source_len)
            throw TrailingBits("decoded source " + std::to_string(i + 1) + " has set bits at or beyond L=" +
                               std::to_string(source_len));
        out.push_back(std::move(s));
    }
    return out;
}

struct ZigzagStep {
    std::size_t source; // 0-based source packet
    std::size_t bit;    // 0-based bit position
};

// Repeatedly reads an exposed bit (a packet position with exactly one
// unresolved contributor) and cancels it from every packet. Lower packet
// positions are served first, so the walk follows the zigzag path.
inline std::vector<Poly2> zigzag_decode(const GenMatrix& a, std::span<const Packet> packets, std::size_t source_len,
                                        std::vector<ZigzagStep>* trace = nullptr) {
    const std::vector<std::size_t> cols = detail::checked_indices(a, packets, source_len);
    const std::size_t k = a.k();
    const std::size_t L = source_len;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    // shift[p][j]: power of z that source j enters packet p with, or kNone
    std::vector<std::vector<std::size_t>> shift(k, std::vector<std::size_t>(k, kNone));
    std::vector<std::size_t> plen(k, L);
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t j = 0; j < k; ++j) {
            const Poly2& e = a(j, cols[p]);
            if (e.is_zero()) continue;
            if (!e.is_monomial())
                throw NotMonomialMatrix("entry (" + std::to_string(j + 1) + "," + std::to_string(cols[p] + 1) +
                                        ") = " + e.to_string() + " is not a monomial");
            shift[p][j] = *e.degree();
            plen[p] = std::max(plen[p], L + shift[p][j]);
        }

    std::vector<std::vector<std::uint8_t>> residue(k);
    std::vector<std::vector<std::uint16_t>> count(k);
    for (std::size_t p = 0; p < k; ++p) {
        residue[p].assign(plen[p], 0);
        count[p].assign(plen[p], 0);
        for (std::size_t q = 0; q < plen[p]; ++q) residue[p][q] = packets[p].bits.coeff(q) ? 1 : 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (shift[p][j] == kNone) continue;
            for (std::size_t b = 0; b < L; ++b) ++count[p][b + shift[p][j]];
        }
    }

    using Slot = std::pair<std::size_t, std::size_t>; // (position, packet)
    std::priority_queue<Slot, std::vector<Slot>, std::greater<>> ready;
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < plen[p]; ++q)
            if (count[p][q] == 1) ready.emplace(q, p);

    std::vector<std::vector<std::uint8_t>> known(k, std::vector<std::uint8_t>(L, 0));
    std::vector<std::vector<Poly2::Word>> value(k, std::vector<Poly2::Word>((L + 63) / 64, 0));
    std::size_t resolved = 0;
    if (trace) trace->clear();

    while (!ready.empty()) {
        const auto [q, p] = ready.top();
        ready.pop();
        if (count[p][q] != 1) continue;
        std::size_t src = kNone, bit = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (shift[p][j] == kNone || q < shift[p][j]) continue;
            const std::size_t b = q - shift[p][j];
            if (b < L && !known[j][b]) {
                src = j;
                bit = b;
                break;
            }
        }
        const std::uint8_t v = residue[p][q];
        known[src][bit] = 1;
        if (v) value[src][bit / 64] |= Poly2::Word{1} << (bit % 64);
        ++resolved;
        if (trace) trace->push_back({src, bit});
        for (std::size_t pp = 0; pp < k; ++pp) {
            if (shift[pp][src] == kNone) continue;
            const std::size_t qq = bit + shift[pp][src];
            residue[pp][qq] ^= v;
            if (--count[pp][qq] == 1) ready.emplace(qq, pp);
        }
    }
    if (resolved != k * L) throw Stuck(resolved, k * L);

    for (std::size_t p = 0; p < k; ++p)
        if (std::find(residue[p].begin(), residue[p].end(), std::uint8_t{1}) != residue[p].end())
            throw InconsistentDivision("packet " + std::to_string(cols[p] + 1) +
                                       " is inconsistent with the other packets");

    std::vector<Poly2> out;
    out.reserve(k);
    for (auto& w : value) out.push_back(Poly2::from_words(std::move(w)));
    return out;
}

// --- packet files ------------------------------------------------------------
//
// Little-endian: "SXP1", u8 version=1, u8 kind, u8 m, u32 g, u16 K, u16 N,
// u16 index, u16 x_len, x_len * u16, u64 L, u64 payload_bits, then
// ceil(payload_bits / 8) payload bytes, LSB-first, pad bits zero.

inline constexpr std::array<char, 4> kPacketMagic = {'S', 'X', 'P', '1'};
inline constexpr std::uint8_t kPacketVersion = 1;

namespace detail {

template <class T>
void put_le(std::vector<std::uint8_t>& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

template <class T>
T get_le(std::span<const std::uint8_t> in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw ParseError("packet file truncated at byte " + std::to_string(pos));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(in[pos + i]) << (8 * i));
    pos += sizeof(T);
    return v;
}

} // namespace detail

inline std::vector<std::uint8_t> serialize_packet(const Packet& p) {
    if (p.bits.bit_length() > p.length) throw InvalidArgument("packet payload exceeds its declared length");
    const CodeSpec& s = p.spec;
    std::vector<std::uint8_t> out(kPacketMagic.begin(), kPacketMagic.end());
    detail::put_le<std::uint8_t>(out, kPacketVersion);
    detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(s.kind));
    detail::put_le<std::uint8_t>(out, static_cast<std::uint8_t>(s.m));
    detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.g.to_mask()));
    detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(s.k));
    detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(s.n));
    detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(p.index));
    detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(s.x.size()));
    for (std::size_t v : s.x) detail::put_le<std::uint16_t>(out, static_cast<std::uint16_t>(v));
    detail::put_le<std::uint64_t>(out, p.source_len);
    detail::put_le<std::uint64_t>(out, p.length);
    const std::vector<std::uint8_t> payload = p.bits.to_bytes(p.length);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

inline Packet parse_packet(std::span<const std::uint8_t> in) {
    std::size_t pos = 0;
    if (in.size() < 4 || !std::equal(kPacketMagic.begin(), kPacketMagic.end(), in.begin(),
                                     [](char a, std::uint8_t b) { return static_cast<std::uint8_t>(a) == b; }))
        throw ParseError("not a packet file (bad magic)");
    pos = 4;
    if (detail::get_le<std::uint8_t>(in, pos) != kPacketVersion) throw ParseError("unsupported packet version");
    Packet p;
    const auto kind = detail::get_le<std::uint8_t>(in, pos);
    if (kind > static_cast<std::uint8_t>(CodeKind::ZdK3)) throw ParseError("unknown code kind " + std::to_string(kind));
    p.spec.kind = static_cast<CodeKind>(kind);
    p.spec.m = detail::get_le<std::uint8_t>(in, pos);
    p.spec.g = Poly2::from_mask(detail::get_le<std::uint32_t>(in, pos));
    p.spec.k = detail::get_le<std::uint16_t>(in, pos);
    p.spec.n = detail::get_le<std::uint16_t>(in, pos);
    p.index = detail::get_le<std::uint16_t>(in, pos);
    const auto xlen = detail::get_le<std::uint16_t>(in, pos);
    for (std::size_t i = 0; i < xlen; ++i) p.spec.x.push_back(detail::get_le<std::uint16_t>(in, pos));
    p.source_len = static_cast<std::size_t>(detail::get_le<std::uint64_t>(in, pos));
    p.length = static_cast<std::size_t>(detail::get_le<std::uint64_t>(in, pos));

    if (p.spec.k == 0 || p.spec.k > p.spec.n) throw ParseError("packet header needs 1 <= K <= N");
    if (p.index < 1 || p.index > p.spec.n) throw ParseError("packet index outside 1..N");
    if (p.spec.kind == CodeKind::Systematic) {
        try {
            validate_sequence(p.spec.x, p.spec.k, p.spec.n);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what());
        }
    } else if (xlen != 0) {
        throw ParseError("x entries present for a non-systematic code");
    }
    if (p.length < p.source_len) throw ParseError("payload shorter than the source length");

    const std::size_t nbytes = (p.length + 7) / 8;
    if (in.size() - pos != nbytes)
        throw ParseError("payload is " + std::to_string(in.size() - pos) + " bytes, header implies " +
                         std::to_string(nbytes));
    const auto payload = in.subspan(pos);
    if (p.length % 8 != 0 && (payload.back() >> (p.length % 8)) != 0) throw ParseError("nonzero pad bits");
    p.bits = Poly2::from_bytes(payload, p.length);
    return p;
}

inline void write_packet(std::ostream& out, const Packet& p) {
    const auto bytes = serialize_packet(p);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline Packet read_packet(std::istream& in) {
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_packet(bytes);
}

} // namespace sxor
