#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "glicci/certificate.hpp"
#include "glicci/hvector.hpp"

namespace glicci {

constexpr unsigned kMaxGraphNode = 47;

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned> rank_;
};

/// Undirected link between point sets of sizes lo <= hi through h.
struct LinkEdge {
    unsigned lo = 0;
    unsigned hi = 0;
    HVector h;

    friend bool operator==(const LinkEdge&, const LinkEdge&) = default;
    friend auto operator<=>(const LinkEdge& a, const LinkEdge& b) {
        return std::tie(a.lo, a.hi, a.h) <=> std::tie(b.lo, b.hi, b.h);
    }
};

class LinkageGraph {
public:
    explicit LinkageGraph(unsigned max_node = kMaxGraphNode) : max_node_(std::max(1u, max_node)) {}

    void add_edge(unsigned d, unsigned e, const HVector& h) {
        if (d == 0 || e == 0) throw InvalidInput("graph nodes start at 1");
        edges_.insert({std::min(d, e), std::max(d, e), h});
    }
    const std::set<LinkEdge>& edges() const { return edges_; }

    /// 1..max_node together with every edge endpoint, ascending.
    std::vector<unsigned> nodes() const {
        unsigned top = max_node_;
        for (const auto& e : edges_) top = std::max(top, e.hi);
        std::vector<unsigned> out(top);
        std::iota(out.begin(), out.end(), 1u);
        return out;
    }
    bool has_edge(unsigned d, unsigned e) const {
        const unsigned lo = std::min(d, e), hi = std::max(d, e);
        return std::any_of(edges_.begin(), edges_.end(), [&](const LinkEdge& x) { return x.lo == lo && x.hi == hi; });
    }

private:
    unsigned max_node_;
    std::set<LinkEdge> edges_;
};

struct GraphBuildReport {
    LinkageGraph graph;
    std::size_t certificates = 0;
    std::vector<std::string> skipped;  // "file: reason"
};

/// One edge per (d, e, h) with a verified certificate in the store. With
/// replay set, each verified certificate is recomputed first and dropped if
/// it does not reproduce.
inline GraphBuildReport build_graph(const CertificateStore& store, bool replay = false,
                                    unsigned max_node = kMaxGraphNode) {
    GraphBuildReport report{LinkageGraph(max_node), 0, {}};
    for (const auto& path : store.files()) {
        EdgeCertificate c;
        try {
            c = parse_certificate(CertificateStore::read_file(path));
        } catch (const Error& ex) {
            report.skipped.push_back(path.filename().string() + ": " + ex.what());
            continue;
        }
        ++report.certificates;
        if (c.verdict != Verdict::Verified) continue;
        if (replay) {
            const auto r = replay_certificate(c);
            if (!r.matches) {
                report.skipped.push_back(path.filename().string() + ": replay mismatch (" + r.mismatch + ")");
                continue;
            }
        }
        report.graph.add_edge(c.d, c.e, c.h);
    }
    return report;
}

/// Connected component of node 1.
inline std::set<unsigned> glicci_component(const LinkageGraph& g) {
    const auto nodes = g.nodes();
    UnionFind uf(nodes.size() + 1);
    for (const auto& e : g.edges()) uf.unite(e.lo, e.hi);
    std::set<unsigned> out;
    for (unsigned v : nodes)
        if (uf.find(v) == uf.find(1)) out.insert(v);
    return out;
}

inline std::string emit_dot(const LinkageGraph& g) {
    std::string s = "graph glicci {\n";
    for (unsigned v : g.nodes()) s += "  " + std::to_string(v) + ";\n";
    for (const auto& e : g.edges())
        s += "  " + std::to_string(e.lo) + " -- " + std::to_string(e.hi) + " [label=\"" + e.h.to_string() + "\"];\n";
    s += "}\n";
    return s;
}

struct SearchOptions {
    std::uint32_t p = 10007;
    std::uint64_t seed = 0;
    unsigned max_attempts = kDefaultMaxAttempts;
    unsigned workers = 1;
};

/// Verifies every candidate on a pool of workers, each job single-threaded.
/// Certificates go to the store (if any) as they finish; the returned list
/// is in candidate order. `on_done` is called under a lock.
inline std::vector<EdgeCertificate> search_links(
    const std::vector<LinkCandidate>& candidates, const SearchOptions& opt, const CertificateStore* store = nullptr,
    const std::function<void(const LinkCandidate&, const EdgeCertificate&)>& on_done = {}) {
    std::vector<EdgeCertificate> out(candidates.size());
    std::atomic<std::size_t> next{0};
    std::mutex lock;
    std::exception_ptr failure;
    auto work = [&] {
        for (std::size_t i = next++; i < candidates.size(); i = next++) {
            try {
                const auto& c = candidates[i];
                out[i] = verify_edge(c.h, c.d, opt.p, opt.seed, opt.max_attempts);
                if (store) store->write(out[i]);
                if (on_done) {
                    std::lock_guard<std::mutex> g(lock);
                    on_done(c, out[i]);
                }
            } catch (...) {
                std::lock_guard<std::mutex> g(lock);
                if (!failure) failure = std::current_exception();
                next = candidates.size();
            }
        }
    };
    const unsigned n = std::max(1u, opt.workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
        work();
    }
    if (failure) std::rethrow_exception(failure);
    if (store) store->write_index();
    return out;
}

}  // namespace glicci
