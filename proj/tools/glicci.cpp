// Command-line front end: split statistics, h-vector tools, link
// verification and the linkage graph.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "glicci/certificate.hpp"
#include "glicci/hvector.hpp"
#include "glicci/linkage_graph.hpp"
#include "glicci/split_stats.hpp"
#include "glicci/tangent.hpp"

namespace {

using namespace glicci;

constexpr int kExitOk = 0;
constexpr int kExitInconclusive = 2;
constexpr int kExitRefuted = 3;
constexpr int kExitInputError = 4;

struct Options {
    unsigned n = 6;
    unsigned k = 3;
    std::uint32_t p = 10007;
    std::uint64_t seed = 0;
    std::uint64_t trials = 10000;
    unsigned workers = 1;
    unsigned max_attempts = kDefaultMaxAttempts;
    unsigned smax = 8;
    unsigned max_degree = 0;
    unsigned d = 0;
    std::string h;
    std::string store = "certificates";
    std::string out;
    std::string file;
    bool replay = false;
    bool include_excluded = false;
};

/// Writes to --out if given, else stdout.
void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + o.out);
    f << text;
}

void print_seed(const Options& o) { std::cerr << "# seed " << o.seed << '\n'; }

std::string decimal(const Rational& r, int digits = 9) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << to_double(r);
    return s.str();
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::Verified: return kExitOk;
        case Verdict::Refuted: return kExitRefuted;
        case Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitInputError;
}

std::string summary(const EdgeCertificate& c) {
    std::ostringstream s;
    s << c.h.to_string() << ' ' << c.d << ' ' << c.e << ' ' << to_string(c.verdict) << " attempts=" << c.attempts
      << " hom_IX=" << c.dims.hom_ix << " hom_IY=" << c.dims.hom_iy << " hom_SG=" << c.dims.hom_sg
      << " gdim=" << c.gdim;
    return s.str();
}

std::vector<LinkCandidate> selected_candidates(const Options& o) {
    std::vector<LinkCandidate> out;
    for (auto& c : enumerate_candidates(o.smax)) {
        if (o.max_degree && c.h.degree() > o.max_degree) continue;
        if (!o.include_excluded && c.status == CandidateStatus::ExcludedAcm) continue;
        out.push_back(std::move(c));
    }
    return out;
}

int run_splitstats(const std::string& mode, const Options& o) {
    if (mode == "exact") {
        emit(o, count_squarefree_with_factor(o.n, o.k).to_string() + '\n');
    } else if (mode == "limit") {
        const Rational r = limit_fraction(o.n, o.k);
        emit(o, r.str() + ' ' + decimal(r) + '\n');
    } else {
        print_seed(o);
        const auto r = montecarlo_split_fraction(o.n, o.k, o.p, o.trials, o.seed, o.workers);
        emit(o, std::to_string(r.successes) + ' ' + std::to_string(r.trials) + ' ' + decimal(r.fraction(), 6) + '\n');
    }
    return kExitOk;
}

int run_hv(const std::string& mode, const Options& o) {
    if (mode == "enumerate") {
        std::string text;
        for (const auto& c : enumerate_candidates(o.smax)) text += c.to_string() + '\n';
        emit(o, text);
        return kExitOk;
    }
    const HVector h = HVector::parse(o.h);
    const auto t = parse_gorenstein_type(h);
    if (!t) {
        std::cerr << "not a type I/II Gorenstein h-vector: " << h.to_string() << '\n';
        return kExitInputError;
    }
    if (mode == "parse") {
        const DegreeMatrix dm = generic_degree_matrix(h);
        std::string gens;
        for (unsigned g : dm.generators) gens += (gens.empty() ? "" : ",") + std::to_string(g);
        emit(o, t->to_string() + " sigma=" + std::to_string(dm.sigma) + " generators=" + gens + '\n');
    } else {
        emit(o, std::to_string(gorenstein_family_dim(*t)) + '\n');
    }
    return kExitOk;
}

int run_link(const std::string& mode, const Options& o) {
    if (mode == "verify") {
        print_seed(o);
        const auto cert = verify_edge(HVector::parse(o.h), o.d, o.p, o.seed, o.max_attempts);
        if (!o.store.empty()) std::cerr << "# wrote " << CertificateStore(o.store).write(cert).string() << '\n';
        emit(o, summary(cert) + '\n');
        return exit_for(cert.verdict);
    }
    if (mode == "replay") {
        const auto cert = parse_certificate(CertificateStore::read_file(o.file));
        const auto r = replay_certificate(cert);
        emit(o, summary(r.recomputed) + (r.matches ? " replay=ok\n" : " replay=mismatch (" + r.mismatch + ")\n"));
        return r.matches ? kExitOk : kExitRefuted;
    }
    print_seed(o);
    const CertificateStore store(o.store);
    SearchOptions so{o.p, o.seed, o.max_attempts, o.workers};
    const auto cands = selected_candidates(o);
    int code = kExitOk;
    search_links(cands, so, &store, [&](const LinkCandidate&, const EdgeCertificate& c) {
        std::cout << summary(c) << std::endl;
        if (c.verdict == Verdict::Inconclusive) code = kExitInconclusive;
    });
    std::cerr << "# " << cands.size() << " candidates, store " << store.directory().string() << '\n';
    return code;
}

int run_graph(const std::string& mode, const Options& o) {
    const auto report = build_graph(CertificateStore(o.store), o.replay);
    for (const auto& s : report.skipped) std::cerr << "skipped " << s << '\n';
    if (mode == "dot") {
        emit(o, emit_dot(report.graph));
    } else if (mode == "glicci") {
        std::string text;
        for (unsigned v : glicci_component(report.graph)) text += (text.empty() ? "" : " ") + std::to_string(v);
        emit(o, text + '\n');
    } else {
        std::string text;
        for (const auto& e : report.graph.edges())
            text += std::to_string(e.lo) + ' ' + std::to_string(e.hi) + ' ' + e.h.to_string() + '\n';
        emit(o, text);
        std::cerr << "# " << report.certificates << " certificates, " << report.graph.edges().size() << " edges\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gorenstein liaison workbench for point sets in P^3"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    Options o;
    using Mode = std::pair<const char*, const char*>;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--p,--q", o.p, "prime field size")->capture_default_str();
        c->add_option("--seed", o.seed, "64-bit seed for all random choices")->capture_default_str();
        c->add_option("--out", o.out, "write the result here instead of stdout");
    };

    auto* ss = app.add_subcommand("splitstats", "split polynomial statistics");
    ss->require_subcommand(1);
    for (auto [mode, what] : {Mode{"exact", "A(n,k,q) as a polynomial in q"},
                              Mode{"limit", "limiting fraction p(n,k) as q grows"},
                              Mode{"montecarlo", "sampled fraction over GF(q)"}}) {
        auto* c = ss->add_subcommand(mode, what);
        add_common(c);
        c->add_option("--n", o.n, "polynomial degree")->capture_default_str();
        c->add_option("--k", o.k, "factor degree")->capture_default_str();
        c->add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
        c->add_option("--workers", o.workers, "threads for Monte Carlo")->capture_default_str();
    }

    auto* hv = app.add_subcommand("hv", "h-vector classification");
    hv->require_subcommand(1);
    for (auto [mode, what] : {Mode{"enumerate", "list link candidates (h, d, e)"},
                              Mode{"gdim", "dimension of the Gorenstein family of --h"},
                              Mode{"parse", "type, degree matrix and generators of --h"}}) {
        auto* c = hv->add_subcommand(mode, what);
        c->add_option("--out", o.out, "write the result here instead of stdout");
        c->add_option("--smax", o.smax, "largest s for enumeration")->capture_default_str();
        c->add_option("--h", o.h, "h-vector, e.g. 1,3,6,10,6,3,1");
    }

    auto* link = app.add_subcommand("link", "verify Gorenstein links");
    link->require_subcommand(1);
    for (auto [mode, what] : {Mode{"search", "verify every enumerated candidate"},
                              Mode{"verify", "verify one link d -- e through --h"},
                              Mode{"replay", "recompute a certificate file"}}) {
        auto* c = link->add_subcommand(mode, what);
        add_common(c);
        c->add_option("--max-attempts", o.max_attempts, "attempts before giving up")->capture_default_str();
        c->add_option("--store", o.store, "certificate directory")->capture_default_str();
        if (std::string_view(mode) == "verify") {
            c->add_option("--h", o.h, "Gorenstein h-vector")->required();
            c->add_option("--d", o.d, "degree of X")->required();
        } else if (std::string_view(mode) == "search") {
            c->add_option("--smax", o.smax, "largest s for enumeration")->capture_default_str();
            c->add_option("--max-degree", o.max_degree, "skip h-vectors of larger degree (0 = all)");
            c->add_option("--workers", o.workers, "parallel verification jobs")->capture_default_str();
            c->add_flag("--include-excluded", o.include_excluded, "also run candidates excluded by the ACM-curve rule");
        } else {
            c->add_option("file", o.file, "certificate file")->required();
        }
    }

    auto* graph = app.add_subcommand("graph", "linkage graph from a certificate store");
    graph->require_subcommand(1);
    for (auto [mode, what] : {Mode{"build", "list verified edges"},
                              Mode{"glicci", "connected component of node 1"},
                              Mode{"dot", "graph in DOT format"}}) {
        auto* c = graph->add_subcommand(mode, what);
        c->add_option("--store", o.store, "certificate directory")->capture_default_str();
        c->add_option("--out", o.out, "write the result here instead of stdout");
        c->add_flag("--replay", o.replay, "recompute each certificate before using it");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    auto chosen = [](CLI::App* parent) { return parent->get_subcommands().front()->get_name(); };
    try {
        if (*ss) return run_splitstats(chosen(ss), o);
        if (*hv) return run_hv(chosen(hv), o);
        if (*link) return run_link(chosen(link), o);
        if (*graph) return run_graph(chosen(graph), o);
    } catch (const InvalidInput& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitInputError;
}
