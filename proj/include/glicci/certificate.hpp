#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "glicci/errors.hpp"
#include "glicci/gorenstein.hpp"
#include "glicci/tangent.hpp"

namespace glicci {

/// FNV-1a 64-bit hash of the h-vector text, used in certificate file names.
inline std::uint64_t hvector_hash(const HVector& h) {
    std::uint64_t x = 0xcbf29ce484222325ULL;
    for (unsigned char ch : h.to_string()) {
        x ^= ch;
        x *= 0x100000001b3ULL;
    }
    return x;
}

inline std::string certificate_file_name(const EdgeCertificate& c) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(hvector_hash(c.h)));
    return "edge_" + std::to_string(c.d) + '_' + std::to_string(c.e) + '_' + hash + '_' + std::to_string(c.seed);
}

/// "1*t^2 + 3*t + 5" back to a polynomial.
inline UniPoly parse_unipoly(PrimeField field, std::string_view text) {
    std::vector<Residue> c;
    auto trim = [](std::string_view v) {
        while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
        while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
        return v;
    };
    text = trim(text);
    if (text.empty()) throw InvalidInput("empty polynomial text");
    if (text == "0") return UniPoly(field);
    while (!text.empty()) {
        const auto plus = text.find(" + ");
        const std::string_view term = trim(text.substr(0, plus));
        text = plus == std::string_view::npos ? std::string_view{} : text.substr(plus + 3);
        const auto star = term.find('*');
        const std::string coef(term.substr(0, star));
        std::size_t deg = 0;
        if (star != std::string_view::npos) {
            const auto var = term.substr(star + 1);
            if (var.empty() || var[0] != 't') throw InvalidInput("malformed univariate term");
            deg = var.size() == 1 ? 1 : std::stoul(std::string(var.substr(2)));
            if (var.size() > 1 && var[1] != '^') throw InvalidInput("malformed univariate term");
        }
        if (coef.empty() || coef.find_first_not_of("0123456789") != std::string::npos)
            throw InvalidInput("malformed univariate coefficient");
        if (c.size() <= deg) c.resize(deg + 1, 0);
        c[deg] = field.reduce(static_cast<std::int64_t>(std::stoull(coef)));
    }
    return UniPoly(field, std::move(c));
}

inline std::string serialize_certificate(const EdgeCertificate& c) {
    std::ostringstream o;
    o << "h " << c.h.to_string() << '\n';
    o << "d " << c.d << '\n';
    o << "e " << c.e << '\n';
    o << "p " << c.p << '\n';
    o << "seed " << c.seed << '\n';
    o << "matrix " << c.matrix.serialize();
    o << "ell " << (c.witness ? c.witness->ell.to_string() : "0") << '\n';
    o << "xh " << (c.witness ? c.witness->xh.to_string() : "0") << '\n';
    o << "factor " << (c.witness ? c.witness->factor.to_string() : "0") << '\n';
    o << "dims hom_IX=" << c.dims.hom_ix << " hom_IY=" << c.dims.hom_iy << " hom_SG=" << c.dims.hom_sg
      << " gdim=" << c.gdim << " hX=" << c.dims.h_x.to_string() << " hY=" << c.dims.h_y.to_string() << '\n';
    o << "verdict " << to_string(c.verdict) << " attempts=" << c.attempts << " reduced=" << c.tests.reduced
      << " generic_X=" << c.tests.generic_x << " generic_Y=" << c.tests.generic_y
      << " involution=" << c.tests.involution << '\n';
    return o.str();
}

namespace detail {

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    std::string_view next_line() {
        if (text_.empty()) throw InvalidInput("certificate ends early");
        const auto nl = text_.find('\n');
        std::string_view line = text_.substr(0, nl);
        text_ = nl == std::string_view::npos ? std::string_view{} : text_.substr(nl + 1);
        return line;
    }
    /// Value of a line "key value".
    std::string_view field(std::string_view key) {
        const std::string_view line = next_line();
        if (line.substr(0, key.size()) != key || line.size() <= key.size() || line[key.size()] != ' ')
            throw InvalidInput("expected certificate field '" + std::string(key) + "'");
        return line.substr(key.size() + 1);
    }

private:
    std::string_view text_;
};

inline std::uint64_t parse_u64(std::string_view v) {
    if (v.empty() || v.find_first_not_of("0123456789") != std::string_view::npos)
        throw InvalidInput("malformed number '" + std::string(v) + "'");
    return std::stoull(std::string(v));
}

/// Value of "key=value" within a space-separated list.
inline std::string_view keyed(std::string_view list, std::string_view key) {
    std::size_t pos = 0;
    while (pos <= list.size()) {
        const auto sp = list.find(' ', pos);
        const auto tok = list.substr(pos, sp == std::string_view::npos ? list.npos : sp - pos);
        if (tok.size() > key.size() && tok.substr(0, key.size()) == key && tok[key.size()] == '=')
            return tok.substr(key.size() + 1);
        if (sp == std::string_view::npos) break;
        pos = sp + 1;
    }
    throw InvalidInput("missing '" + std::string(key) + "' in certificate");
}

inline HVector parse_optional_hvector(std::string_view v) { return v.empty() ? HVector() : HVector::parse(v); }

inline bool parse_flag(std::string_view v) {
    if (v == "1") return true;
    if (v == "0") return false;
    throw InvalidInput("malformed flag '" + std::string(v) + "'");
}

}  // namespace detail

inline EdgeCertificate parse_certificate(std::string_view text) {
    detail::LineReader in(text);
    EdgeCertificate c;
    c.h = HVector::parse(in.field("h"));
    c.d = static_cast<unsigned>(detail::parse_u64(in.field("d")));
    c.e = static_cast<unsigned>(detail::parse_u64(in.field("e")));
    c.p = static_cast<std::uint32_t>(detail::parse_u64(in.field("p")));
    c.seed = detail::parse_u64(in.field("seed"));
    if (c.d + c.e != c.h.degree()) throw InvalidInput("d + e differs from the degree of h");
    const PrimeField field(c.p);
    const std::size_t n = detail::parse_u64(in.field("matrix"));
    if (n > 24) throw InvalidInput("matrix too large");
    c.matrix = SkewPolyMatrix(field, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) c.matrix.set(i, j, MultiPoly::parse(field, in.next_line()));
    MultiPoly ell = MultiPoly::parse(field, in.field("ell"));
    MultiPoly xh = MultiPoly::parse(field, in.field("xh"));
    UniPoly factor = parse_unipoly(field, in.field("factor"));
    if (!xh.is_zero()) c.witness = LinkWitness{std::move(ell), std::move(xh), std::move(factor)};
    const auto dims = in.field("dims");
    c.dims.hom_ix = detail::parse_u64(detail::keyed(dims, "hom_IX"));
    c.dims.hom_iy = detail::parse_u64(detail::keyed(dims, "hom_IY"));
    c.dims.hom_sg = detail::parse_u64(detail::keyed(dims, "hom_SG"));
    c.gdim = static_cast<unsigned>(detail::parse_u64(detail::keyed(dims, "gdim")));
    c.dims.h_x = detail::parse_optional_hvector(detail::keyed(dims, "hX"));
    c.dims.h_y = detail::parse_optional_hvector(detail::keyed(dims, "hY"));
    const auto verdict = in.field("verdict");
    const auto word = verdict.substr(0, verdict.find(' '));
    if (word == "verified")
        c.verdict = Verdict::Verified;
    else if (word == "refuted")
        c.verdict = Verdict::Refuted;
    else if (word == "inconclusive")
        c.verdict = Verdict::Inconclusive;
    else
        throw InvalidInput("unknown verdict '" + std::string(word) + "'");
    c.attempts = static_cast<unsigned>(detail::parse_u64(detail::keyed(verdict, "attempts")));
    c.tests.reduced = detail::parse_flag(detail::keyed(verdict, "reduced"));
    c.tests.generic_x = detail::parse_flag(detail::keyed(verdict, "generic_X"));
    c.tests.generic_y = detail::parse_flag(detail::keyed(verdict, "generic_Y"));
    c.tests.involution = detail::parse_flag(detail::keyed(verdict, "involution"));
    if (c.verdict != Verdict::Inconclusive && !c.witness) throw InvalidInput("decided certificate without a witness");
    return c;
}

struct ReplayResult {
    bool matches = false;
    EdgeCertificate recomputed;
    std::string mismatch;
};

/// Recomputes every test of a certificate from its matrix and witness alone.
inline ReplayResult replay_certificate(const EdgeCertificate& c) {
    ReplayResult r;
    r.recomputed = c;
    if (c.verdict == Verdict::Inconclusive) {
        r.matches = true;
        return r;
    }
    EdgeCertificate& fresh = r.recomputed;
    fresh.dims = {};
    fresh.tests = {};
    fresh.gdim = gorenstein_family_dim(c.h);
    const GroebnerBasis ig = pfaffian_ideal(c.matrix);
    if (h_vector(ig) != c.h) {
        r.mismatch = "Pfaffian ideal has h-vector " + h_vector(ig).to_string();
        return r;
    }
    try {
        evaluate_split(fresh, ig, generic_degree_matrix(c.h));
    } catch (const Error& ex) {
        r.mismatch = ex.what();
        return r;
    }
    if (!(fresh.dims == c.dims)) r.mismatch = "dimensions differ";
    else if (!(fresh.tests == c.tests)) r.mismatch = "test flags differ";
    else if (fresh.verdict != c.verdict) r.mismatch = "verdict differs";
    else if (fresh.gdim != c.gdim) r.mismatch = "gdim differs";
    r.matches = r.mismatch.empty();
    return r;
}

/// Directory of certificate files plus a regenerable index.
class CertificateStore {
public:
    explicit CertificateStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& directory() const { return dir_; }

    /// Writes through a temporary file and a rename so readers never see a partial file.
    std::filesystem::path write(const EdgeCertificate& c) const {
        std::filesystem::create_directories(dir_);
        const auto target = dir_ / certificate_file_name(c);
        const auto tmp = dir_ / ("." + certificate_file_name(c) + ".tmp");
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write " + tmp.string());
            out << serialize_certificate(c);
            if (!out.flush()) throw Error("cannot write " + tmp.string());
        }
        std::filesystem::rename(tmp, target);
        return target;
    }

    /// Certificate files in name order.
    std::vector<std::filesystem::path> files() const {
        std::vector<std::filesystem::path> out;
        if (!std::filesystem::exists(dir_)) return out;
        for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
            const auto name = entry.path().filename().string();
            if (entry.is_regular_file() && name.rfind("edge_", 0) == 0) out.push_back(entry.path());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    static std::string read_file(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot read " + path.string());
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    /// One line per readable certificate: file, d, e, h, verdict.
    std::string index_text() const {
        std::string out;
        for (const auto& f : files()) {
            try {
                const auto c = parse_certificate(read_file(f));
                out += f.filename().string() + ' ' + std::to_string(c.d) + ' ' + std::to_string(c.e) + ' ' +
                       c.h.to_string() + ' ' + to_string(c.verdict) + '\n';
            } catch (const Error&) {
                out += f.filename().string() + " malformed\n";
            }
        }
        return out;
    }

    std::filesystem::path write_index() const {
        std::filesystem::create_directories(dir_);
        const auto target = dir_ / "index.txt";
        const auto tmp = dir_ / ".index.txt.tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << index_text();
        }
        std::filesystem::rename(tmp, target);
        return target;
    }

private:
    std::filesystem::path dir_;
};

}  // namespace glicci
