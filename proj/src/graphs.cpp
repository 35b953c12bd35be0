#include "stringtop/graphs.hpp"

#include <algorithm>
#include <numeric>

namespace stringtop {

GraphContext::GraphContext(const FrobeniusAlgebra& A, bool reduced, bool tadpoles)
    : A_(&A), reduced_(reduced), tadpoles_(tadpoles) {
    for (int i = 0; i < A.dim(); ++i)
        if (!reduced || A.degree(i) >= 1) letters_.push_back(i);
}

int graph_degree(const GraphContext& C, const DecoratedGraph& g) {
    int d = C.n() * g.vertices + (1 - C.n()) * (int)g.edges.size();
    for (const auto& vd : g.decorations)
        for (int q : vd) d -= C.algebra().degree(q);
    return d;
}

int loop_order(const DecoratedGraph& g) { return (int)g.edges.size() - g.vertices + 1; }

bool is_connected(const DecoratedGraph& g) {
    if (g.vertices <= 1) return true;
    std::vector<std::vector<int>> adj(g.vertices);
    for (auto [s, t] : g.edges) {
        adj[s].push_back(t);
        adj[t].push_back(s);
    }
    std::vector<char> seen(g.vertices, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int cnt = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                ++cnt;
                stack.push_back(y);
            }
    }
    return cnt == g.vertices;
}

bool is_trivalent_plus(const DecoratedGraph& g) {
    std::vector<int> val(g.vertices, 0);
    for (auto [s, t] : g.edges) {
        ++val[s];
        ++val[t];
    }
    for (int i = 0; i < g.vertices; ++i)
        if (val[i] + (int)g.decorations[i].size() < 3) return false;
    return true;
}

namespace {

inline int par(long x) { return (int)(((x % 2) + 2) % 2); }

std::vector<int> word_parities(const GraphContext& C, const DecoratedGraph& g) {
    std::vector<int> out;
    for (int i = 0; i < g.vertices; ++i) {
        out.push_back(C.vpar());
        for (int q : g.decorations[i]) out.push_back(C.dpar(q));
    }
    for (size_t e = 0; e < g.edges.size(); ++e) out.push_back(C.epar());
    return out;
}

/* relabel by pi (old vertex -> new vertex), normalize edge directions and order,
 * sort decorations; returns the labeled form and the Koszul sign */
std::pair<DecoratedGraph, int> relabel(const GraphContext& C, const DecoratedGraph& g,
                                       const std::vector<int>& pi) {
    const int v = g.vertices;
    std::vector<int> inv(v);
    for (int i = 0; i < v; ++i) inv[pi[i]] = i;

    // generator positions in the old word
    std::vector<int> vert_pos(v);
    std::vector<std::vector<int>> dec_pos(v);
    int pos = 0;
    for (int i = 0; i < v; ++i) {
        vert_pos[i] = pos++;
        dec_pos[i].resize(g.decorations[i].size());
        for (size_t k = 0; k < g.decorations[i].size(); ++k) dec_pos[i][k] = pos++;
    }
    std::vector<int> edge_pos(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) edge_pos[e] = pos++;

    int flips = 0;
    std::vector<std::tuple<int, int, int>> ne;  // (a, b, old index)
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int a = pi[g.edges[e].first], b = pi[g.edges[e].second];
        if (a > b) {
            std::swap(a, b);
            ++flips;
        }
        ne.emplace_back(a, b, (int)e);
    }
    std::sort(ne.begin(), ne.end());

    DecoratedGraph out;
    out.vertices = v;
    out.decorations.resize(v);
    std::vector<int> perm;
    for (int nv = 0; nv < v; ++nv) {
        const int ov = inv[nv];
        perm.push_back(vert_pos[ov]);
        std::vector<int> order(g.decorations[ov].size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return g.decorations[ov][a] < g.decorations[ov][b];
        });
        for (int k : order) {
            out.decorations[nv].push_back(g.decorations[ov][k]);
            perm.push_back(dec_pos[ov][k]);
        }
    }
    for (auto [a, b, e] : ne) {
        out.edges.emplace_back(a, b);
        perm.push_back(edge_pos[e]);
    }
    auto pars = word_parities(C, g);
    int sign = koszul_parity(perm, pars) ? -1 : 1;
    if ((flips % 2) && ((C.n() + 1) % 2)) sign = -sign;
    return {std::move(out), sign};
}

}  // namespace

std::optional<CanonicalGraph> canonicalize(const GraphContext& C, const DecoratedGraph& g) {
    const int v = g.vertices;
    std::vector<int> pi(v);
    std::iota(pi.begin(), pi.end(), 0);
    std::optional<DecoratedGraph> best;
    int best_sign = 0;
    bool zero = false;
    do {
        auto [ng, s] = relabel(C, g, pi);
        if (!best || ng < *best) {
            best = std::move(ng);
            best_sign = s;
        } else if (ng == *best && s != best_sign) {
            zero = true;
        }
    } while (std::next_permutation(pi.begin(), pi.end()));
    if (zero) return std::nullopt;

    // residual symmetries of the canonical form
    const DecoratedGraph& b = *best;
    for (size_t e = 1; e < b.edges.size(); ++e)
        if (b.edges[e] == b.edges[e - 1] && C.epar() == 1) return std::nullopt;
    if ((C.n() + 1) % 2 == 1)
        for (auto [s, t] : b.edges)
            if (s == t) return std::nullopt;  // tadpole flip is odd
    for (const auto& vd : b.decorations)
        for (size_t k = 1; k < vd.size(); ++k)
            if (vd[k] == vd[k - 1] && C.dpar(vd[k]) == 1) return std::nullopt;
    return CanonicalGraph{*best, Scalar(best_sign)};
}

void graph_add(const GraphContext& C, GraphChain& chain, const DecoratedGraph& g,
               const Scalar& v) {
    if (v == 0) return;
    auto cg = canonicalize(C, g);
    if (!cg) return;
    auto it = chain.find(cg->graph);
    Scalar add = v * cg->sign;
    if (it == chain.end()) chain.emplace(cg->graph, add);
    else {
        it->second += add;
        if (it->second == 0) chain.erase(it);
    }
}

GraphChain graph_differential(const GraphContext& C, const GraphChain& c) {
    GraphChain out;
    for (const auto& [g, coeff] : c) {
        const int v = g.vertices;
        // ---- splitting ----
        for (int w = 0; w < v; ++w) {
            struct StarEntry {
                bool is_half;
                int edge, end, slot;
            };
            std::vector<StarEntry> star;
            for (size_t e = 0; e < g.edges.size(); ++e) {
                if (g.edges[e].first == w) star.push_back({true, (int)e, 0, 0});
                if (g.edges[e].second == w) star.push_back({true, (int)e, 1, 0});
            }
            for (size_t k = 0; k < g.decorations[w].size(); ++k)
                star.push_back({false, 0, 0, (int)k});
            const int m = (int)star.size();
            for (int mask = 0; mask < (1 << m); ++mask) {
                DecoratedGraph ng;
                ng.vertices = v + 1;
                ng.edges = g.edges;
                ng.decorations = g.decorations;
                ng.decorations.emplace_back();
                std::vector<int> keep, move;
                for (int t = 0; t < m; ++t) {
                    const auto& se = star[t];
                    if (mask & (1 << t)) {
                        if (!se.is_half) keep.push_back(se.slot);
                    } else {
                        if (se.is_half) {
                            auto& ed = ng.edges[se.edge];
                            (se.end == 0 ? ed.first : ed.second) = v;
                        } else {
                            move.push_back(se.slot);
                        }
                    }
                }
                std::vector<int> neword;
                ng.decorations[w].clear();
                for (int k : keep) ng.decorations[w].push_back(g.decorations[w][k]);
                for (int k : move) ng.decorations[v].push_back(g.decorations[w][k]);
                ng.edges.emplace_back(w, v);
                // sign: unshuffle decorations into (keep, move)
                std::vector<int> order = keep;
                order.insert(order.end(), move.begin(), move.end());
                std::vector<int> dp(g.decorations[w].size());
                for (size_t k = 0; k < dp.size(); ++k) dp[k] = C.dpar(g.decorations[w][k]);
                int e = koszul_parity(order, dp);
                int pref = 0, between = 0, movep = 0;
                for (int i = 0; i < v; ++i) {
                    pref += C.vpar();
                    for (int q : g.decorations[i]) pref += C.dpar(q);
                }
                for (int i = w + 1; i < v; ++i) {
                    between += C.vpar();
                    for (int q : g.decorations[i]) between += C.dpar(q);
                }
                for (int k : move) movep += C.dpar(g.decorations[w][k]);
                e ^= par((long)movep * between);
                e ^= par((long)C.vpar() * (pref - movep));
                e ^= par((long)C.epar() * (pref + C.vpar() + C.epar() * (long)g.edges.size()));
                graph_add(C, out, ng, e ? -coeff : coeff);
            }
        }
        // ---- fusing: unordered slot pairs ----
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < v; ++i)
            for (size_t k = 0; k < g.decorations[i].size(); ++k) slots.emplace_back(i, (int)k);
        auto pars = word_parities(C, g);
        auto dpos = [&](int i, int k) {
            int p = 0;
            for (int t = 0; t < i; ++t) p += 1 + (int)g.decorations[t].size();
            return p + 1 + k;
        };
        int tot = 0;
        for (int p : pars) tot += p;
        for (size_t a = 0; a < slots.size(); ++a)
            for (size_t b2 = a + 1; b2 < slots.size(); ++b2) {
                auto [ia, ka] = slots[a];
                auto [ib, kb] = slots[b2];
                if (ia == ib && !C.tadpoles()) continue;
                const int al = g.decorations[ia][ka], be = g.decorations[ib][kb];
                Scalar P = C.pairing(al, be);
                if (P == 0) continue;
                int pa = dpos(ia, ka), pb = dpos(ib, kb);
                int prefa = 0;
                for (int t = 0; t < pa; ++t) prefa += pars[t];
                int prefb = -C.dpar(al);
                for (int t = 0; t < pb; ++t) prefb += pars[t];
                int e = par((long)C.dpar(al) * prefa) ^ par((long)C.dpar(be) * prefb);
                e ^= par((long)C.epar() * (tot - C.dpar(al) - C.dpar(be)));
                DecoratedGraph ng;
                ng.vertices = v;
                ng.edges = g.edges;
                ng.decorations = g.decorations;
                if (ia == ib) {
                    std::vector<int> vd;
                    for (size_t t = 0; t < g.decorations[ia].size(); ++t)
                        if ((int)t != ka && (int)t != kb) vd.push_back(g.decorations[ia][t]);
                    ng.decorations[ia] = std::move(vd);
                } else {
                    ng.decorations[ia].erase(ng.decorations[ia].begin() + ka);
                    ng.decorations[ib].erase(ng.decorations[ib].begin() + kb);
                }
                ng.edges.emplace_back(ia, ib);
                graph_add(C, out, ng, (e ? -coeff : coeff) * P);
            }
    }
    return out;
}

namespace {

int block_parity(const GraphContext& C, const DecoratedGraph& g) {
    int p = 0;
    for (int i = 0; i < g.vertices; ++i) {
        p += C.vpar();
        for (int q : g.decorations[i]) p += C.dpar(q);
    }
    return p % 2;
}

/* one-sided pairing sum x.y */
GraphChain half_bracket(const GraphContext& C, const GraphChain& c1, const GraphChain& c2) {
    GraphChain out;
    for (const auto& [g1, v1] : c1)
        for (const auto& [g2, v2] : c2) {
            const int n1 = g1.vertices;
            int inter = par((long)C.epar() * (long)g1.edges.size() * block_parity(C, g2));
            DecoratedGraph u;
            u.vertices = n1 + g2.vertices;
            u.edges = g1.edges;
            for (auto [s, t] : g2.edges) u.edges.emplace_back(s + n1, t + n1);
            u.decorations = g1.decorations;
            for (const auto& vd : g2.decorations) u.decorations.push_back(vd);
            auto pars = word_parities(C, u);
            int tot = 0;
            for (int p : pars) tot += p;
            auto dpos = [&](int i, int k) {
                int p = 0;
                for (int t = 0; t < i; ++t) p += 1 + (int)u.decorations[t].size();
                return p + 1 + k;
            };
            for (int ia = 0; ia < n1; ++ia)
                for (size_t ka = 0; ka < g1.decorations[ia].size(); ++ka)
                    for (int ib = 0; ib < g2.vertices; ++ib)
                        for (size_t kb = 0; kb < g2.decorations[ib].size(); ++kb) {
                            const int al = g1.decorations[ia][ka];
                            const int be = g2.decorations[ib][kb];
                            Scalar P = C.pairing(al, be);
                            if (P == 0) continue;
                            int pa = dpos(ia, (int)ka), pb = dpos(n1 + ib, (int)kb);
                            int prefa = 0;
                            for (int t = 0; t < pa; ++t) prefa += pars[t];
                            int prefb = -C.dpar(al);
                            for (int t = 0; t < pb; ++t) prefb += pars[t];
                            int e = (C.dpar(al) & prefa & 1) ^
                                    (C.dpar(be) & (((prefb % 2) + 2) % 2) & 1);
                            e ^= (C.epar() & (((tot - C.dpar(al) - C.dpar(be)) % 2) + 2) & 1);
                            e ^= inter;
                            DecoratedGraph ng = u;
                            ng.decorations[ia].erase(ng.decorations[ia].begin() + ka);
                            ng.decorations[n1 + ib].erase(ng.decorations[n1 + ib].begin() + kb);
                            ng.edges.emplace_back(ia, n1 + ib);
                            graph_add(C, out, ng, (e ? Scalar(-1) : Scalar(1)) * v1 * v2 * P);
                        }
        }
    return out;
}

}  // namespace

GraphChain graph_bracket(const GraphContext& C, const GraphChain& c1, const GraphChain& c2) {
    GraphChain out = half_bracket(C, c1, c2);
    for (const auto& [g1, v1] : c1)
        for (const auto& [g2, v2] : c2) {
            Scalar s = Scalar(-1) * sign_pow((long)(graph_degree(C, g1) + 1) *
                                             (graph_degree(C, g2) + 1));
            GraphChain one1{{g1, Scalar(1)}}, one2{{g2, Scalar(1)}};
            for (const auto& [gg, vv] : half_bracket(C, one2, one1)) {
                auto it = out.find(gg);
                Scalar add = s * vv * v1 * v2;
                if (it == out.end()) out.emplace(gg, add);
                else {
                    it->second += add;
                    if (it->second == 0) out.erase(it);
                }
            }
        }
    for (auto& [g, v] : out) v /= 2;
    return out;
}

GraphChain mc_z(const GraphContext& C, int j_max, bool reduced) {
    const FrobeniusAlgebra& A = C.algebra();
    GraphChain out;
    const int jr = reduced ? 0 : j_max;
    Scalar fact(1);
    for (int j = 0; j <= jr; ++j) {
        if (j > 0) fact /= j;
        std::vector<int> ones(j, A.unit());
        {
            DecoratedGraph g;
            g.vertices = 1;
            g.decorations = {ones};
            g.decorations[0].push_back(A.omega());
            graph_add(C, out, g, fact);
        }
        for (const auto& t : A.diagonal().terms) {
            const int dl = A.degree(t.left), dr = A.degree(t.right);
            if (dl == 0 || dl == A.top_degree() || dr == 0 || dr == A.top_degree()) continue;
            DecoratedGraph g;
            g.vertices = 1;
            g.decorations = {ones};
            g.decorations[0].push_back(t.left);
            g.decorations[0].push_back(t.right);
            graph_add(C, out, g, fact * t.coeff / 2);
        }
    }
    return out;
}

bool GraphBounds::admits(const DecoratedGraph& g) const {
    return g.vertices <= max_vertices && loop_order(g) <= max_loops;
}

GraphChain mc_residual(const GraphContext& C, const GraphChain& z, const GraphBounds& b) {
    GraphChain res = graph_differential(C, z);
    for (const auto& [g, v] : graph_bracket(C, z, z)) {
        auto it = res.find(g);
        Scalar add = v / 2;
        if (it == res.end()) res.emplace(g, add);
        else {
            it->second += add;
            if (it->second == 0) res.erase(it);
        }
    }
    for (auto it = res.begin(); it != res.end();)
        it = b.admits(it->first) ? std::next(it) : res.erase(it);
    return res;
}

GraphChain reduce_to_full(const GraphContext& C, const GraphChain& c, int j_max) {
    const int unit = C.algebra().unit();
    GraphChain out;
    for (const auto& [g, v] : c) {
        // per-vertex 1*-dressings with total <= j_max per vertex, coefficient prod 1/j_i!
        std::vector<int> js(g.vertices, 0);
        std::function<void(int, Scalar)> rec = [&](int i, Scalar coeff) {
            if (i == g.vertices) {
                DecoratedGraph ng = g;
                for (int t = 0; t < g.vertices; ++t)
                    for (int r = 0; r < js[t]; ++r) ng.decorations[t].push_back(unit);
                graph_add(C, out, ng, v * coeff);
                return;
            }
            Scalar f(1);
            for (int j = 0; j <= j_max; ++j) {
                if (j > 0) f /= j;
                js[i] = j;
                rec(i + 1, coeff * f);
            }
            js[i] = 0;
        };
        rec(0, Scalar(1));
    }
    return out;
}

GraphChain loop_filter(const GraphChain& c, int loops) {
    GraphChain out;
    for (const auto& [g, v] : c)
        if (loop_order(g) == loops) out.emplace(g, v);
    return out;
}

}  // namespace stringtop
