#pragma once

// Equivalence classes of systematic generator matrices, best-code search and
// report rendering.
//
// Permuting x only permutes rows of A_x, so each unordered column set is one
// class. When N = 2^m - 1, shifting every entry of x by k (mod N) cyclically
// shifts the columns of A_x, which merges classes further. Both facts are
// checked constructively with matrices_equivalent rather than assumed.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sxor/codes.hpp"
#include "sxor/error.hpp"
#include "sxor/gf2m.hpp"
#include "sxor/reference.hpp"

namespace sxor {

inline constexpr std::size_t kMaxEquivalenceRows = 8;

// True iff some row permutation of a has the same multiset of columns as b.
inline bool matrices_equivalent(const GenMatrix& a, const GenMatrix& b) {
    if (a.k() != b.k() || a.n() != b.n()) throw InvalidArgument("matrices_equivalent needs equal dimensions");
    if (a.k() > kMaxEquivalenceRows)
        throw InvalidArgument("matrices_equivalent supports at most " + std::to_string(kMaxEquivalenceRows) + " rows");

    using Column = std::vector<Poly2>;
    auto sorted_columns = [](const PolyMatrix& m, const std::vector<std::size_t>& rows) {
        std::vector<Column> cols(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c)
            for (std::size_t r : rows) cols[c].push_back(m(r, c));
        std::sort(cols.begin(), cols.end());
        return cols;
    };
    std::vector<std::size_t> perm(a.k());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    const std::vector<Column> target = sorted_columns(b.entries(), perm);
    do {
        if (sorted_columns(a.entries(), perm) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// y_i = x_i + k, wrapped into 1..N.
inline Sequence shift_sequence(const Sequence& x, std::size_t k, std::size_t n) {
    if (k < 1 || k >= n) throw InvalidArgument("shift must satisfy 1 <= k < N");
    Sequence y;
    y.reserve(x.size());
    for (std::size_t v : x) y.push_back(v + k <= n ? v + k : v + k - n);
    return y;
}

struct EquivalenceClass {
    Sequence rep; // sorted
    std::vector<Sequence> members;
    Metrics metrics;

    std::size_t size() const noexcept { return members.size(); }
};

struct BestCode {
    Sequence x;
    Metrics metrics;
};

struct ClassReport {
    std::size_t k = 0;
    std::size_t n = 0;
    Poly2 g;
    bool cyclic_merge = false;
    std::size_t sequences_examined = 0;
    std::vector<EquivalenceClass> classes; // ordered by representative
    BestCode best;
};

namespace detail {

// Colexicographic order: compare from the largest entry down. The colex-
// smallest member of a cyclic orbit is its most compact window.
inline bool colex_less(const Sequence& a, const Sequence& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

inline BestCode pick_best(const std::vector<EquivalenceClass>& classes) {
    const EquivalenceClass* best = nullptr;
    for (const auto& c : classes) {
        if (!best || c.metrics.l_sum < best->metrics.l_sum ||
            (c.metrics.l_sum == best->metrics.l_sum &&
             (c.metrics.alpha < best->metrics.alpha ||
              (c.metrics.alpha == best->metrics.alpha && c.rep < best->rep))))
            best = &c;
    }
    return best ? BestCode{best->rep, best->metrics} : BestCode{};
}

} // namespace detail

// Enumerates the (N choose K) sorted sequences. With N = 2^m - 1 the cyclic
// orbits are merged and every member is verified equivalent to its class
// representative (the colex-smallest member). Throws Error if a merge fails
// verification.
inline ClassReport enumerate_classes(std::size_t k, std::size_t n, const Poly2& g) {
    const FieldCtx ctx = detail::field_for(k, n, g);
    ClassReport rep;
    rep.k = k;
    rep.n = n;
    rep.g = g;
    rep.cyclic_merge = n == ctx.order() && n > 1;

    std::vector<Sequence> all;
    for_each_subset(n, k, [&](std::span<const std::size_t> idx) {
        Sequence s;
        for (std::size_t i : idx) s.push_back(i + 1);
        all.push_back(std::move(s));
    });
    rep.sequences_examined = all.size();

    std::map<Sequence, bool> assigned;
    for (const Sequence& s : all) {
        if (assigned[s]) continue;
        std::vector<Sequence> orbit{s};
        if (rep.cyclic_merge) {
            for (std::size_t shift = 1; shift < n; ++shift) {
                Sequence y = shift_sequence(s, shift, n);
                std::sort(y.begin(), y.end());
                if (std::find(orbit.begin(), orbit.end(), y) == orbit.end()) orbit.push_back(std::move(y));
            }
        }
        for (const Sequence& m : orbit) assigned[m] = true;

        EquivalenceClass cls;
        cls.rep = *std::min_element(orbit.begin(), orbit.end(), detail::colex_less);
        std::sort(orbit.begin(), orbit.end());
        cls.members = std::move(orbit);
        const GenMatrix rep_matrix = build_systematic_sxor(k, n, g, cls.rep);
        cls.metrics = metrics(rep_matrix);
        if (cls.members.size() > 1 && k <= kMaxEquivalenceRows) {
            for (const Sequence& m : cls.members)
                if (!matrices_equivalent(build_systematic_sxor(k, n, g, m), rep_matrix))
                    throw Error("cyclic shift of x = (" + format_sequence(cls.rep) + ") to (" + format_sequence(m) +
                                ") did not give an equivalent generator matrix");
        }
        rep.classes.push_back(std::move(cls));
    }
    std::sort(rep.classes.begin(), rep.classes.end(),
              [](const EquivalenceClass& a, const EquivalenceClass& b) { return a.rep < b.rep; });
    rep.best = detail::pick_best(rep.classes);
    return rep;
}

// Smallest total overhead, then smallest alpha, then smallest representative.
inline BestCode best_systematic(std::size_t k, std::size_t n, const Poly2& g) {
    return enumerate_classes(k, n, g).best;
}

// --- reports -----------------------------------------------------------------

enum class ReportFormat { Json, Markdown };

namespace detail {

inline nlohmann::ordered_json metrics_json(const Metrics& m) {
    return {{"l_max", m.l_max}, {"l_sum", m.l_sum}, {"alpha", m.alpha}};
}

inline nlohmann::ordered_json class_report_json(const ClassReport& r) {
    nlohmann::ordered_json j;
    j["K"] = r.k;
    j["N"] = r.n;
    j["g"] = "0x" + r.g.to_hex();
    j["classes"] = nlohmann::ordered_json::array();
    for (const auto& c : r.classes) {
        nlohmann::ordered_json cj;
        cj["rep"] = c.rep;
        cj["size"] = c.size();
        cj.update(metrics_json(c.metrics));
        j["classes"].push_back(std::move(cj));
    }
    nlohmann::ordered_json best;
    best["rep"] = r.best.x;
    best.update(metrics_json(r.best.metrics));
    j["best"] = std::move(best);
    return j;
}

} // namespace detail

inline std::string emit_report(const std::vector<ClassReport>& reports, ReportFormat format) {
    if (format == ReportFormat::Json) {
        if (reports.size() == 1) return detail::class_report_json(reports.front()).dump(2) + "\n";
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) arr.push_back(detail::class_report_json(r));
        return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# Systematic SXOR equivalence classes\n";
    for (const auto& r : reports) {
        os << "\n## K=" << r.k << ", N=" << r.n << ", g=" << r.g.to_string() << " (0x" << r.g.to_hex() << ")\n\n";
        os << r.sequences_examined << " sequences, " << r.classes.size() << " classes"
           << (r.cyclic_merge ? " after cyclic merging" : "") << ".\n\n";
        os << "| representative | size | l_max | l_sum | alpha |\n";
        os << "|---|---|---|---|---|\n";
        for (const auto& c : r.classes)
            os << "| (" << format_sequence(c.rep) << ") | " << c.size() << " | " << c.metrics.l_max << " | "
               << c.metrics.l_sum << " | " << c.metrics.alpha << " |\n";
        os << "\nBest (smallest l_sum, then alpha): (" << format_sequence(r.best.x) << ") with l_max "
           << r.best.metrics.l_max << ", l_sum " << r.best.metrics.l_sum << ", alpha " << r.best.metrics.alpha
           << "\n";
    }
    return os.str();
}

// Side-by-side comparison of SXOR and best systematic SXOR codes over a
// range of K, against the published N = 7 figures where those apply.
struct ComparisonRow {
    std::size_t k = 0;
    Metrics sxor;
    Metrics systematic;
    Sequence systematic_x;
    std::optional<reference::Row> published_sxor;
    std::optional<reference::Row> published_systematic;
    std::optional<reference::Row> published_zd;
};

struct ComparisonReport {
    std::size_t n = 0;
    Poly2 g;
    std::vector<ComparisonRow> rows;
    std::vector<std::string> notes; // computed values that differ from the published ones
};

inline ComparisonReport compare_codes(std::size_t n, const Poly2& g, std::size_t k_min, std::size_t k_max) {
    ComparisonReport rep;
    rep.n = n;
    rep.g = g;
    const bool published = n == 7 && g == Poly2::from_mask(0xB);
    auto lookup = [&](const auto& table, std::size_t k) -> std::optional<reference::Row> {
        if (!published) return std::nullopt;
        for (const auto& r : table)
            if (r.k == k) return r;
        return std::nullopt;
    };
    for (std::size_t k = k_min; k <= k_max; ++k) {
        ComparisonRow row;
        row.k = k;
        row.sxor = metrics(build_sxor(k, n, g));
        const BestCode best = best_systematic(k, n, g);
        row.systematic = best.metrics;
        row.systematic_x = best.x;
        row.published_sxor = lookup(reference::kSxorN7, k);
        row.published_systematic = lookup(reference::kSystematicSxorN7, k);
        row.published_zd = lookup(reference::kZdN7, k);
        auto note = [&](const char* code, const std::optional<reference::Row>& pub, const Metrics& got) {
            if (!pub) return;
            const std::pair<const char*, std::pair<std::size_t, std::size_t>> fields[] = {
                {"l_max", {got.l_max, pub->l_max}}, {"l_sum", {got.l_sum, pub->l_sum}}, {"alpha", {got.alpha, pub->alpha}}};
            for (const auto& [name, v] : fields)
                if (v.first != v.second)
                    rep.notes.push_back(std::string(code) + " K=" + std::to_string(k) + ": computed " + name + " = " +
                                        std::to_string(v.first) + ", published " + std::to_string(v.second));
        };
        note("sxor", row.published_sxor, row.sxor);
        note("systematic", row.published_systematic, row.systematic);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

inline std::string emit_comparison(const ComparisonReport& rep, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["N"] = rep.n;
        j["g"] = "0x" + rep.g.to_hex();
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rep.rows) {
            nlohmann::ordered_json rj;
            rj["K"] = r.k;
            rj["sxor"] = detail::metrics_json(r.sxor);
            rj["systematic"] = detail::metrics_json(r.systematic);
            rj["systematic"]["rep"] = r.systematic_x;
            if (r.published_zd)
                rj["zd_reference"] = {{"l_max", r.published_zd->l_max},
                                      {"l_sum", r.published_zd->l_sum},
                                      {"alpha", r.published_zd->alpha}};
            j["rows"].push_back(std::move(rj));
        }
        j["notes"] = rep.notes;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "# Code comparison, N=" << rep.n << ", g=" << rep.g.to_string() << "\n\n";
    os << "| K | code | l_max | l_sum | alpha |\n|---|---|---|---|---|\n";
    for (const auto& r : rep.rows) {
        os << "| " << r.k << " | systematic (" << format_sequence(r.systematic_x) << ") | " << r.systematic.l_max
           << " | " << r.systematic.l_sum << " | " << r.systematic.alpha << " |\n";
        os << "| " << r.k << " | sxor | " << r.sxor.l_max << " | " << r.sxor.l_sum << " | " << r.sxor.alpha << " |\n";
        if (r.published_zd)
            os << "| " << r.k << " | zd (reference data) | " << r.published_zd->l_max << " | " << r.published_zd->l_sum
               << " | " << r.published_zd->alpha << " |\n";
    }
    if (!rep.notes.empty()) {
        os << "\nDifferences from published values:\n\n";
        for (const auto& n : rep.notes) os << "- " << n << "\n";
    }
    return os.str();
}

} // namespace sxor
