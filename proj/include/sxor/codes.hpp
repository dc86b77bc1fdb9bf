#pragma once

// Generator matrices for shift-and-XOR codes.
//
// A K x N generator matrix A has one column per encoded packet: packet i is
// c_i(z) = sum_j A(j, i) * s_j(z). Column overhead l_i is the largest entry
// degree in column i, so packet i is L + l_i bits long.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sxor/error.hpp"
#include "sxor/gf2m.hpp"
#include "sxor/gf2poly.hpp"
#include "sxor/polymat.hpp"

namespace sxor {

// Numeric values double as the kind byte of the packet file header.
enum class CodeKind : std::uint8_t { User = 0, Sxor = 1, Systematic = 2, ZdK3 = 3 };

inline std::string_view kind_name(CodeKind k) {
    switch (k) {
    case CodeKind::User: return "user";
    case CodeKind::Sxor: return "sxor";
    case CodeKind::Systematic: return "systematic";
    case CodeKind::ZdK3: return "zd3";
    }
    return "?";
}

inline std::optional<CodeKind> parse_kind(std::string_view s) {
    if (s == "user") return CodeKind::User;
    if (s == "sxor") return CodeKind::Sxor;
    if (s == "systematic") return CodeKind::Systematic;
    if (s == "zd3") return CodeKind::ZdK3;
    return std::nullopt;
}

using Sequence = std::vector<std::size_t>; // 1-based column indices

struct CodeSpec {
    CodeKind kind = CodeKind::Sxor;
    std::size_t k = 0;
    std::size_t n = 0;
    unsigned m = 0; // 0 when the kind carries no field (zd3, user)
    Poly2 g;
    Sequence x; // only for Systematic

    friend bool operator==(const CodeSpec&, const CodeSpec&) = default;
};

inline std::string format_sequence(const Sequence& x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(x[i]);
    }
    return out;
}

// Throws InvalidArgument unless x has K distinct entries in 1..N.
inline void validate_sequence(const Sequence& x, std::size_t k, std::size_t n) {
    if (x.size() != k)
        throw InvalidArgument("sequence x has " + std::to_string(x.size()) + " entries, expected K=" + std::to_string(k));
    std::set<std::size_t> seen;
    for (std::size_t v : x) {
        if (v < 1 || v > n) throw InvalidArgument("sequence entry " + std::to_string(v) + " outside 1..N");
        if (!seen.insert(v).second) throw InvalidArgument("sequence entry " + std::to_string(v) + " repeated");
    }
}

struct Metrics {
    std::size_t l_max = 0;
    std::size_t l_sum = 0;
    std::size_t alpha = 0;

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

class GenMatrix {
public:
    GenMatrix(CodeSpec spec, PolyMatrix entries) : spec_(std::move(spec)), entries_(std::move(entries)) {
        if (entries_.rows() != spec_.k || entries_.cols() != spec_.n)
            throw InvalidArgument("generator matrix is " + std::to_string(entries_.rows()) + "x" +
                                  std::to_string(entries_.cols()) + ", spec says " + std::to_string(spec_.k) + "x" +
                                  std::to_string(spec_.n));
        if (spec_.k == 0 || spec_.k > spec_.n) throw InvalidArgument("need 1 <= K <= N");
        overhead_.assign(spec_.n, 0);
        for (std::size_t c = 0; c < spec_.n; ++c)
            for (std::size_t r = 0; r < spec_.k; ++r)
                if (auto d = entries_(r, c).degree()) overhead_[c] = std::max(overhead_[c], *d);
    }

    const CodeSpec& spec() const noexcept { return spec_; }
    const PolyMatrix& entries() const noexcept { return entries_; }
    std::size_t k() const noexcept { return spec_.k; }
    std::size_t n() const noexcept { return spec_.n; }
    const Poly2& operator()(std::size_t r, std::size_t c) const { return entries_(r, c); }

    // l_i for 0-based column i; 0 for an all-zero column.
    std::size_t overhead(std::size_t col) const { return overhead_.at(col); }
    const std::vector<std::size_t>& overheads() const noexcept { return overhead_; }

    friend bool operator==(const GenMatrix& a, const GenMatrix& b) {
        return a.spec_ == b.spec_ && a.entries_ == b.entries_;
    }

private:
    CodeSpec spec_;
    PolyMatrix entries_;
    std::vector<std::size_t> overhead_;
};

namespace detail {

inline FieldCtx field_for(std::size_t k, std::size_t n, const Poly2& g) {
    FieldCtx ctx(g);
    if (k == 0 || k > n || n > ctx.order())
        throw InvalidArgument("need 1 <= K <= N <= 2^m - 1 (K=" + std::to_string(k) + ", N=" + std::to_string(n) +
                              ", m=" + std::to_string(ctx.m()) + ")");
    return ctx;
}

} // namespace detail

// a(i, j) = <z^(i*j)>, 0-based.
inline GenMatrix build_sxor(std::size_t k, std::size_t n, const Poly2& g) {
    const FieldCtx ctx = detail::field_for(k, n, g);
    return GenMatrix(CodeSpec{CodeKind::Sxor, k, n, ctx.m(), g, {}}, lift(vandermonde(k, n, ctx)));
}

// A_x = <V_x^-1 V>; column x_i is the i-th unit vector.
inline GenMatrix build_systematic_sxor(std::size_t k, std::size_t n, const Poly2& g, const Sequence& x) {
    const FieldCtx ctx = detail::field_for(k, n, g);
    validate_sequence(x, k, n);
    const FieldMatrix v = vandermonde(k, n, ctx);
    std::vector<std::size_t> cols;
    for (std::size_t xi : x) cols.push_back(xi - 1);
    const FieldMatrix vx_inv = field_inverse(v.select_columns(cols));
    return GenMatrix(CodeSpec{CodeKind::Systematic, k, n, ctx.m(), g, x}, lift(vx_inv * v));
}

// 3 x 6 zigzag-decodable code with l_max = 1.
inline GenMatrix builtin_zd_k3() {
    const Poly2 o = Poly2::one();
    const Poly2 z = Poly2::monomial(1);
    const Poly2 e{};
    PolyMatrix a(3, 6, Poly2{});
    const Poly2 rows[3][6] = {
        {o, e, e, o, z, z},
        {e, o, e, z, o, z},
        {e, e, o, z, z, o},
    };
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 6; ++c) a(r, c) = rows[r][c];
    return GenMatrix(CodeSpec{CodeKind::ZdK3, 3, 6, 0, Poly2{}, {}}, std::move(a));
}

// Rebuilds a constructed code from its spec. User matrices carry their own
// entries and cannot be rebuilt.
inline GenMatrix build(const CodeSpec& spec) {
    switch (spec.kind) {
    case CodeKind::Sxor: return build_sxor(spec.k, spec.n, spec.g);
    case CodeKind::Systematic: return build_systematic_sxor(spec.k, spec.n, spec.g, spec.x);
    case CodeKind::ZdK3: return builtin_zd_k3();
    case CodeKind::User: break;
    }
    throw InvalidArgument("user matrices cannot be rebuilt from parameters alone");
}

// Calls fn with every increasing k-subset of {0, ..., n-1}.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        fn(std::span<const std::size_t>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

struct SuboptimalityReport {
    bool suboptimal = true;
    std::vector<Sequence> failing; // 1-based column sets with det A_I = 0
};

// Every K-column submatrix must have a nonzero determinant over F2[z].
inline SuboptimalityReport check_suboptimal(const GenMatrix& a) {
    SuboptimalityReport rep;
    for_each_subset(a.n(), a.k(), [&](std::span<const std::size_t> cols) {
        if (determinant(a.entries().select_columns(cols)).is_zero()) {
            Sequence s;
            for (std::size_t c : cols) s.push_back(c + 1);
            rep.failing.push_back(std::move(s));
        }
    });
    rep.suboptimal = rep.failing.empty();
    return rep;
}

// alpha counts packet-level XOR accumulations: a column with T monomial
// terms costs T - 1.
inline Metrics metrics(const GenMatrix& a) {
    Metrics out;
    for (std::size_t c = 0; c < a.n(); ++c) {
        out.l_max = std::max(out.l_max, a.overhead(c));
        out.l_sum += a.overhead(c);
        std::size_t terms = 0;
        for (std::size_t r = 0; r < a.k(); ++r) terms += a(r, c).weight();
        if (terms > 0) out.alpha += terms - 1;
    }
    return out;
}

// --- text format -----------------------------------------------------------
//
//   sxorgen v1 kind=<kind> K=<K> N=<N> m=<m> g=<hex> [x=<i,j,...>]
//   K lines of N comma-separated hex coefficient masks

inline void save_matrix(const GenMatrix& a, std::ostream& out) {
    const CodeSpec& s = a.spec();
    out << "sxorgen v1 kind=" << kind_name(s.kind) << " K=" << s.k << " N=" << s.n << " m=" << s.m
        << " g=0x" << s.g.to_hex();
    if (!s.x.empty()) out << " x=" << format_sequence(s.x);
    out << '\n';
    for (std::size_t r = 0; r < a.k(); ++r) {
        for (std::size_t c = 0; c < a.n(); ++c) {
            if (c) out << ',';
            out << a(r, c).to_hex();
        }
        out << '\n';
    }
}

inline std::string to_text(const GenMatrix& a) {
    std::ostringstream os;
    save_matrix(a, os);
    return os.str();
}

namespace detail {

inline std::size_t parse_count(std::string_view v, std::size_t line, std::size_t col) {
    if (v.empty()) throw ParseError("empty number", line, col);
    std::size_t out = 0;
    for (char c : v) {
        if (c < '0' || c > '9') throw ParseError("expected a decimal number, got '" + std::string(v) + "'", line, col);
        out = out * 10 + static_cast<std::size_t>(c - '0');
        if (out > 1'000'000) throw ParseError("number too large", line, col);
    }
    return out;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace detail

inline CodeSpec parse_header(std::string_view line, std::size_t lineno = 1) {
    CodeSpec spec;
    bool have_kind = false, have_k = false, have_n = false, have_m = false, have_g = false;
    std::size_t pos = 0;
    std::size_t field = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        if (pos >= line.size()) break;
        const std::size_t start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        const std::string_view tok = line.substr(start, pos - start);
        const std::size_t col = start + 1;
        if (field == 0) {
            if (tok != "sxorgen") throw ParseError("expected 'sxorgen' header", lineno, col);
        } else if (field == 1) {
            if (tok != "v1") throw ParseError("unsupported format version '" + std::string(tok) + "'", lineno, col);
        } else {
            const auto eq = tok.find('=');
            if (eq == std::string_view::npos) throw ParseError("expected key=value", lineno, col);
            const std::string_view key = tok.substr(0, eq);
            const std::string_view val = tok.substr(eq + 1);
            const std::size_t vcol = col + eq + 1;
            if (key == "kind") {
                auto k = parse_kind(val);
                if (!k) throw ParseError("unknown kind '" + std::string(val) + "'", lineno, vcol);
                spec.kind = *k;
                have_kind = true;
            } else if (key == "K") {
                spec.k = detail::parse_count(val, lineno, vcol);
                have_k = true;
            } else if (key == "N") {
                spec.n = detail::parse_count(val, lineno, vcol);
                have_n = true;
            } else if (key == "m") {
                spec.m = static_cast<unsigned>(detail::parse_count(val, lineno, vcol));
                have_m = true;
            } else if (key == "g") {
                try {
                    spec.g = Poly2::from_hex(val);
                } catch (const ParseError& e) {
                    throw ParseError(e.what(), lineno, vcol);
                }
                have_g = true;
            } else if (key == "x") {
                std::size_t p = 0;
                while (p <= val.size()) {
                    const std::size_t e = std::min(val.find(',', p), val.size());
                    spec.x.push_back(detail::parse_count(val.substr(p, e - p), lineno, vcol + p));
                    p = e + 1;
                }
            } else {
                throw ParseError("unknown header key '" + std::string(key) + "'", lineno, col);
            }
        }
        ++field;
    }
    if (field < 2) throw ParseError("truncated header", lineno, 1);
    if (!(have_kind && have_k && have_n && have_m && have_g))
        throw ParseError("header needs kind, K, N, m and g", lineno, 1);
    if (spec.k == 0 || spec.k > spec.n) throw ParseError("header needs 1 <= K <= N", lineno, 1);
    if (spec.kind == CodeKind::Systematic) {
        try {
            validate_sequence(spec.x, spec.k, spec.n);
        } catch (const InvalidArgument& e) {
            throw ParseError(e.what(), lineno, 1);
        }
    } else if (!spec.x.empty()) {
        throw ParseError("x is only valid for systematic codes", lineno, 1);
    }
    if (spec.kind == CodeKind::Sxor || spec.kind == CodeKind::Systematic) {
        if (spec.g.degree() != spec.m) throw ParseError("deg(g) does not match m", lineno, 1);
    }
    return spec;
}

// Constructed kinds must hold reduced entries (degree < m) and must match
// what their parameters rebuild; user matrices accept any F2[z] entries.
inline GenMatrix load_matrix(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!detail::trim(line).empty()) return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError("empty matrix file");
    const CodeSpec spec = parse_header(line, lineno);
    const bool constructed = spec.kind == CodeKind::Sxor || spec.kind == CodeKind::Systematic;

    PolyMatrix entries(spec.k, spec.n, Poly2{});
    for (std::size_t r = 0; r < spec.k; ++r) {
        if (!next_line())
            throw ParseError("expected " + std::to_string(spec.k) + " matrix rows, found " + std::to_string(r),
                             lineno + 1, 1);
        std::vector<std::pair<std::size_t, std::size_t>> cells; // (start, end) offsets
        for (std::size_t pos = 0;;) {
            const std::size_t end = std::min(line.find(',', pos), line.size());
            cells.emplace_back(pos, end);
            if (end == line.size()) break;
            pos = end + 1;
        }
        if (cells.size() != spec.n)
            throw ParseError("row has " + std::to_string(cells.size()) + " entries, expected N=" +
                                 std::to_string(spec.n),
                             lineno, cells.size() > spec.n ? cells[spec.n].first + 1 : line.size() + 1);
        for (std::size_t c = 0; c < spec.n; ++c) {
            const auto [start, end] = cells[c];
            const std::string_view cell = detail::trim(std::string_view(line).substr(start, end - start));
            const std::size_t col = start + 1;
            try {
                entries(r, c) = Poly2::from_hex(cell);
            } catch (const ParseError& e) {
                throw ParseError(e.what(), lineno, col);
            }
            if (constructed && entries(r, c).degree().value_or(0) >= spec.m)
                throw ParseError("entry " + entries(r, c).to_string() + " is not reduced modulo g (m=" +
                                     std::to_string(spec.m) + ")",
                                 lineno, col);
        }
    }
    if (next_line()) throw ParseError("trailing content after matrix rows", lineno, 1);

    GenMatrix out(spec, std::move(entries));
    if (spec.kind != CodeKind::User) {
        GenMatrix expected = [&] {
            try {
                return build(spec);
            } catch (const InvalidArgument& e) {
                throw ParseError(std::string("invalid code parameters: ") + e.what());
            }
        }();
        if (!(expected == out))
            throw ParseError("entries do not match a " + std::string(kind_name(spec.kind)) +
                             " code with these parameters");
    }
    return out;
}

inline GenMatrix from_text(std::string_view text) {
    std::istringstream is{std::string(text)};
    return load_matrix(is);
}

} // namespace sxor
