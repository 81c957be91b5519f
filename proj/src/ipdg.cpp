#include "grmr/ipdg.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "grmr/parallel.h"
#include "grmr/rng.h"

namespace grmr {

std::size_t IpdgGraph::edge_count() const {
    std::size_t deg = 0;
    for (const auto& a : adj) deg += a.size();
    return deg / 2;
}

std::string IpdgGraph::to_json() const {
    nlohmann::json j;
    j["vertices"] = nv;
    j["edges"] = edge_count();
    j["exact"] = exact;
    j["m"] = m;
    j["k"] = k;
    j["seed"] = seed;
    return j.dump();
}

IpdgGraph ipdg_exact_2d(const std::vector<int>& hull) {
    const int h = static_cast<int>(hull.size());
    if (h < 3)
        throw ConfigError("ipdg_exact_2d: need at least 3 extreme points, got " +
                          std::to_string(h));
    IpdgGraph g;
    g.nv = h;
    g.exact = true;
    g.adj.resize(h);
    for (int i = 0; i < h; ++i) {
        int a = (i + h - 1) % h;
        int b = (i + 1) % h;
        if (a > b) std::swap(a, b);
        g.adj[i] = {a, b};
    }
    return g;
}

IpdgGraph ipdg_approx(const Dataset& ds, const std::vector<int>& xrows, long long m,
                      int k, std::uint64_t seed) {
    const int nx = static_cast<int>(xrows.size());
    if (m < 0) throw ConfigError("ipdg_approx: sample count must be nonnegative");
    if (k < 2 || k > nx)
        throw ConfigError("ipdg_approx: top-k must be in [2, " + std::to_string(nx) +
                          "], got " + std::to_string(k));

    // Each worker collects edges into its own set; union is order-independent,
    // so the result does not depend on the worker count.
    const int workers = thread_count();
    std::vector<std::unordered_set<std::int64_t>> local(workers);

    parallel_for(workers, [&](std::int64_t w) {
        const long long lo = m * w / workers;
        const long long hi = m * (w + 1) / workers;
        auto& edges = local[static_cast<std::size_t>(w)];
        std::vector<double> dir(ds.d);
        std::vector<double> score(nx);
        std::vector<int> order(nx);
        for (long long s = lo; s < hi; ++s) {
            rng::unit_direction(seed, static_cast<std::uint64_t>(s), ds.d, dir.data());
            for (int p = 0; p < nx; ++p)
                score[p] = dot(ds.row(xrows[p]), std::span<const double>(dir));
            for (int p = 0; p < nx; ++p) order[p] = p;
            std::partial_sort(order.begin(), order.begin() + k, order.end(),
                              [&](int a, int b) {
                                  if (score[a] != score[b]) return score[a] > score[b];
                                  return a < b;
                              });
            const int top = order[0];
            for (int j = 1; j < k; ++j) {
                const int other = order[j];
                const int a = std::min(top, other);
                const int b = std::max(top, other);
                edges.insert(static_cast<std::int64_t>(a) * nx + b);
            }
        }
    });

    IpdgGraph g;
    g.nv = nx;
    g.exact = false;
    g.m = m;
    g.k = k;
    g.seed = seed;
    g.adj.resize(nx);
    std::unordered_set<std::int64_t> all;
    for (auto& s : local)
        for (std::int64_t e : s) all.insert(e);
    for (std::int64_t e : all) {
        const int a = static_cast<int>(e / nx);
        const int b = static_cast<int>(e % nx);
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

void save_ipdg(const std::string& path, const IpdgGraph& g) {
    std::ofstream out(path);
    if (!out) throw ConfigError("save_ipdg: cannot open '" + path + "' for writing");
    out << g.to_json() << "\n";
    for (int a = 0; a < g.nv; ++a)
        for (int b : g.adj[a])
            if (a < b) out << a << " " << b << "\n";
    if (!out) throw ConfigError("save_ipdg: write to '" + path + "' failed");
}

IpdgGraph load_ipdg(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_ipdg: cannot open '" + path + "'");
    IpdgGraph g;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!have_header) {
            if (line[first] != '{')
                throw ConfigError("load_ipdg: '" + path + "' line " +
                                  std::to_string(lineno) + ": expected JSON header");
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.contains("vertices"))
                throw ConfigError("load_ipdg: '" + path + "' line " +
                                  std::to_string(lineno) + ": malformed JSON header");
            g.nv = j["vertices"].get<int>();
            if (g.nv < 0)
                throw ConfigError("load_ipdg: '" + path + "': negative vertex count");
            g.exact = j.value("exact", false);
            g.m = j.value("m", 0LL);
            g.k = j.value("k", 0);
            g.seed = j.value("seed", std::uint64_t(0));
            g.adj.resize(g.nv);
            have_header = true;
            continue;
        }
        std::istringstream row(line);
        int a = 0, b = 0;
        if (!(row >> a >> b) || a < 0 || b < 0 || a >= g.nv || b >= g.nv || a == b)
            throw ConfigError("load_ipdg: '" + path + "' line " + std::to_string(lineno) +
                              ": expected an edge 'i j' with distinct vertices in [0, " +
                              std::to_string(g.nv) + ")");
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }
    if (!have_header) throw ConfigError("load_ipdg: '" + path + "' has no header line");
    for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return g;
}

}  // namespace grmr
