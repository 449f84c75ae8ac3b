#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glicci/errors.hpp"

namespace glicci {

/// h-vector of a zero-dimensional scheme in P^3: positive entries, no
/// trailing zeros. The empty vector is the h-vector of the empty scheme.
class HVector {
public:
    HVector() = default;
    HVector(std::initializer_list<unsigned> entries) : HVector(std::vector<unsigned>(entries)) {}
    explicit HVector(std::vector<unsigned> entries) : entries_(std::move(entries)) {
        while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
        for (unsigned v : entries_)
            if (v == 0) throw InvalidInput("h-vector entries must be positive");
    }

    const std::vector<unsigned>& entries() const { return entries_; }
    std::size_t length() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    unsigned operator[](std::size_t i) const { return i < entries_.size() ? entries_[i] : 0; }
    unsigned degree() const {
        unsigned s = 0;
        for (unsigned v : entries_) s += v;
        return s;
    }
    unsigned max_entry() const { return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end()); }
    bool is_symmetric() const { return std::equal(entries_.begin(), entries_.end(), entries_.rbegin()); }
    HVector reversed() const { return HVector(std::vector<unsigned>(entries_.rbegin(), entries_.rend())); }

    /// "1,3,6,10,6,3,1"
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(entries_[i]);
        }
        return s;
    }
    /// Accepts "1,3,6", "{1,3,6}" and embedded spaces.
    static HVector parse(std::string_view text) {
        std::vector<unsigned> v;
        std::string cleaned;
        for (char ch : text)
            if (ch != '{' && ch != '}' && ch != ' ') cleaned += ch;
        std::string_view rest = cleaned;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto tok = rest.substr(0, comma);
            unsigned x = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
            if (ec != std::errc() || ptr != tok.data() + tok.size()) throw InvalidInput("malformed h-vector");
            v.push_back(x);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (v.empty()) throw InvalidInput("empty h-vector");
        return HVector(std::move(v));
    }

    friend bool operator==(const HVector&, const HVector&) = default;
    friend auto operator<=>(const HVector&, const HVector&) = default;

private:
    std::vector<unsigned> entries_;
};

inline unsigned binomial2(unsigned n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Triangular numbers 1,3,6,... as long as they fit, then the remainder.
inline HVector generic_hvector(unsigned d) {
    std::vector<unsigned> h;
    for (unsigned i = 0; d > 0; ++i) {
        const unsigned full = binomial2(i + 2);
        h.push_back(std::min(full, d));
        d -= h.back();
    }
    return HVector(std::move(h));
}

enum class GorensteinKind { I, II };

struct GorensteinType {
    GorensteinKind kind;
    unsigned s;
    unsigned c;

    HVector reconstruct() const {
        std::vector<unsigned> half;
        for (unsigned i = 0; i < s; ++i) half.push_back(binomial2(i + 2));
        const unsigned middle = binomial2(s + 1) + c;
        std::vector<unsigned> h = half;
        h.push_back(middle);
        if (kind == GorensteinKind::II) h.push_back(middle);
        h.insert(h.end(), half.rbegin(), half.rend());
        return HVector(std::move(h));
    }
    std::string to_string() const {
        return std::string(kind == GorensteinKind::I ? "I" : "II") + " s=" + std::to_string(s) +
               " c=" + std::to_string(c);
    }
    friend bool operator==(const GorensteinType&, const GorensteinType&) = default;
};

inline std::optional<GorensteinType> parse_gorenstein_type(const HVector& h) {
    const std::size_t len = h.length();
    if (len < 3 || !h.is_symmetric()) return std::nullopt;
    GorensteinType t{};
    std::size_t middle;
    if (len % 2 == 1) {
        t.kind = GorensteinKind::I;
        t.s = static_cast<unsigned>(len / 2);
        middle = t.s;
    } else {
        t.kind = GorensteinKind::II;
        t.s = static_cast<unsigned>(len / 2 - 1);
        middle = t.s;
    }
    for (unsigned i = 0; i + 1 <= t.s; ++i)
        if (h[i] != binomial2(i + 2)) return std::nullopt;
    const unsigned base = binomial2(t.s + 1);
    if (h[middle] < base || h[middle] - base > t.s + 1) return std::nullopt;
    t.c = h[middle] - base;
    return t;
}

/// Dimension g(h) of the family of Gorenstein cones with this type.
inline unsigned gorenstein_family_dim(const GorensteinType& t) {
    const long s = t.s, c = t.c;
    if (t.kind == GorensteinKind::I) return static_cast<unsigned>(4 * s * (s + 1) + 4 * c - 1);
    return static_cast<unsigned>((9 * s * (s + 1) + c * (c + 13)) / 2 - c * s - 1);
}

inline unsigned gorenstein_family_dim(const HVector& h) {
    const auto t = parse_gorenstein_type(h);
    if (!t) throw InvalidInput("not a Gorenstein h-vector of type I or II: " + h.to_string());
    return gorenstein_family_dim(*t);
}

struct Decomposition {
    HVector h_x;
    HVector h_y;
    unsigned shift;
};

/// Splits h as generic_hvector(d) plus a shifted reversed generic_hvector(deg h - d).
inline std::optional<Decomposition> decompose(const HVector& h, unsigned d) {
    if (d > h.degree()) return std::nullopt;
    const HVector hx = generic_hvector(d);
    const HVector hy = generic_hvector(h.degree() - d);
    const auto rev = hy.reversed();
    for (std::size_t k = 0; k <= h.length(); ++k) {
        const std::size_t len = std::max(hx.length(), k + rev.length());
        if (len != h.length()) continue;
        bool ok = true;
        for (std::size_t i = 0; i < len && ok; ++i) {
            const unsigned r = i >= k ? rev[i - k] : 0;
            ok = hx[i] + r == h[i];
        }
        if (ok) return Decomposition{hx, hy, static_cast<unsigned>(k)};
    }
    return std::nullopt;
}

/// Symmetric, and nondecreasing up to the middle.
inline bool stanley_admissible(const HVector& h) {
    if (h.empty() || !h.is_symmetric()) return false;
    for (std::size_t i = 1; i <= (h.length() - 1) / 2; ++i)
        if (h[i] < h[i - 1]) return false;
    return true;
}

/// Coefficients of h(t)(1-t)^3, ascending.
inline std::vector<long> numerator_polynomial(const HVector& h) {
    std::vector<long> n(h.length() + 3, 0);
    constexpr long kCube[4] = {1, -3, 3, -1};
    for (std::size_t i = 0; i < h.length(); ++i)
        for (std::size_t j = 0; j < 4; ++j) n[i + j] += static_cast<long>(h[i]) * kCube[j];
    return n;
}

/// Degrees of the Pfaffian generators and the socle degree sigma of the
/// Buchsbaum-Eisenbud presentation; entry (i,j) has degree sigma - g_i - g_j.
struct DegreeMatrix {
    std::vector<unsigned> generators;
    unsigned sigma = 0;

    std::size_t size() const { return generators.size(); }
    int entry_degree(std::size_t i, std::size_t j) const {
        return static_cast<int>(sigma) - static_cast<int>(generators[i]) - static_cast<int>(generators[j]);
    }
    /// Relation degrees sigma - g_i, sorted.
    std::vector<unsigned> relations() const {
        std::vector<unsigned> r;
        for (unsigned g : generators) r.push_back(sigma - g);
        std::sort(r.begin(), r.end());
        return r;
    }
    /// Largest set of generators whose pairwise entries are forced to zero,
    /// i.e. with g_i + g_j >= sigma for every pair.
    std::size_t largest_zero_block() const {
        std::vector<unsigned> g = generators;
        std::sort(g.rbegin(), g.rend());
        std::size_t best = g.empty() ? 0 : 1;
        for (std::size_t k = 2; k <= g.size(); ++k)
            if (g[k - 2] + g[k - 1] >= sigma) best = k;
        return best;
    }
};

/// Generic degree matrix: generators are the negative coefficients of the
/// numerator (without the final -t^sigma). An even count is completed by one
/// self-dual generator of degree sigma/2, whose relation cancels it in the
/// numerator.
inline DegreeMatrix generic_degree_matrix(const HVector& h) {
    if (h.empty()) throw InvalidInput("empty h-vector");
    const auto num = numerator_polynomial(h);
    DegreeMatrix dm;
    dm.sigma = static_cast<unsigned>(num.size() - 1);
    if (num.front() != 1 || num.back() != -1) throw DegeneracyError("numerator is not of Gorenstein shape");
    for (std::size_t j = 1; j < dm.sigma; ++j)
        if (num[j] != -num[dm.sigma - j]) throw DegeneracyError("numerator is not symmetric: " + h.to_string());
    for (std::size_t j = 1; j < dm.sigma; ++j)
        for (long b = 0; b < -num[j]; ++b) dm.generators.push_back(static_cast<unsigned>(j));
    if (dm.generators.size() % 2 == 0) {
        if (dm.sigma % 2 != 0) throw DegeneracyError("even number of generators: " + h.to_string());
        dm.generators.push_back(dm.sigma / 2);
        std::sort(dm.generators.begin(), dm.generators.end());
    }
    if (dm.generators.size() < 3) throw DegeneracyError("fewer than three generators: " + h.to_string());
    return dm;
}

/// True when d general points cannot lie on the ACM curve forced by a zero
/// block in the generic degree matrix.
inline bool acm_curve_exclusion(const HVector& h, unsigned d) {
    const DegreeMatrix dm = generic_degree_matrix(h);
    return dm.largest_zero_block() >= 2 && 2 * d > 4 * h.max_entry();
}

enum class CandidateStatus { Admissible, ExcludedAcm, Verified, Refuted };

inline std::string to_string(CandidateStatus s) {
    switch (s) {
        case CandidateStatus::Admissible: return "admissible";
        case CandidateStatus::ExcludedAcm: return "excluded-acm";
        case CandidateStatus::Verified: return "verified";
        case CandidateStatus::Refuted: return "refuted";
    }
    return "?";
}

inline CandidateStatus parse_candidate_status(std::string_view s) {
    if (s == "admissible") return CandidateStatus::Admissible;
    if (s == "excluded-acm") return CandidateStatus::ExcludedAcm;
    if (s == "verified") return CandidateStatus::Verified;
    if (s == "refuted") return CandidateStatus::Refuted;
    throw InvalidInput("unknown candidate status: " + std::string(s));
}

struct LinkCandidate {
    HVector h;
    unsigned d = 0;
    unsigned e = 0;
    unsigned gdim = 0;
    CandidateStatus status = CandidateStatus::Admissible;

    /// "1,3,6,10,6,3,1 20 10 63 admissible"
    std::string to_string() const {
        return h.to_string() + ' ' + std::to_string(d) + ' ' + std::to_string(e) + ' ' + std::to_string(gdim) + ' ' +
               glicci::to_string(status);
    }
    static LinkCandidate parse(std::string_view line) {
        std::vector<std::string_view> f;
        while (!line.empty()) {
            const auto sp = line.find(' ');
            if (sp != 0) f.push_back(line.substr(0, sp));
            if (sp == std::string_view::npos) break;
            line.remove_prefix(sp + 1);
        }
        if (f.size() != 5) throw InvalidInput("candidate line needs 5 fields");
        LinkCandidate c;
        c.h = HVector::parse(f[0]);
        auto num = [](std::string_view v) {
            unsigned x = 0;
            const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (ec != std::errc() || p != v.data() + v.size()) throw InvalidInput("malformed number in candidate");
            return x;
        };
        c.d = num(f[1]);
        c.e = num(f[2]);
        c.gdim = num(f[3]);
        c.status = parse_candidate_status(f[4]);
        return c;
    }
    friend bool operator==(const LinkCandidate&, const LinkCandidate&) = default;
};

/// All (h, d, e) with h of type I or II (s <= s_max), d >= e >= 1, h split as
/// generic(d) + shifted reverse generic(e), and g(h) >= 3d.
inline std::vector<LinkCandidate> enumerate_candidates(unsigned s_max) {
    if (s_max < 1) throw InvalidInput("s_max must be at least 1");
    std::vector<LinkCandidate> out;
    for (unsigned s = 1; s <= s_max; ++s)
        for (unsigned c = 0; c <= s + 1; ++c)
            for (GorensteinKind kind : {GorensteinKind::I, GorensteinKind::II}) {
                const GorensteinType t{kind, s, c};
                const HVector h = t.reconstruct();
                const unsigned g = gorenstein_family_dim(t);
                const unsigned total = h.degree();
                for (unsigned d = (total + 1) / 2; d < total; ++d) {
                    if (3 * d > g || !decompose(h, d)) continue;
                    LinkCandidate cand{h, d, total - d, g, CandidateStatus::Admissible};
                    if (acm_curve_exclusion(h, d)) cand.status = CandidateStatus::ExcludedAcm;
                    out.push_back(std::move(cand));
                }
            }
    return out;
}

}  // namespace glicci
