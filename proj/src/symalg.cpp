#include "stringtop/symalg.hpp"

#include <algorithm>
#include <sstream>

namespace stringtop {

bool SymBounds::admits(const SymMonomial& m) const {
    if (m.hbar > hbar_max) return false;
    if ((int)m.factors.size() > max_factors) return false;
    for (const auto& w : m.factors)
        if ((int)w.letters.size() > max_word_len) return false;
    return true;
}

int fpar(const CyclicContext& C, const CyclicWord& w) {
    int d = C.word_degree(w) + C.algebra().top_degree() + 1;
    return ((d % 2) + 2) % 2;
}

void sym_add(const CyclicContext& C, SymSeries& s, int hbar, std::vector<CyclicWord> factors,
             const Scalar& v, const SymBounds& b) {
    if (v == 0) return;
    // insertion sort with fpar Koszul
    int sign = 1;
    for (size_t i = 1; i < factors.size(); ++i)
        for (size_t j = i; j > 0 && factors[j] < factors[j - 1]; --j) {
            if (fpar(C, factors[j]) && fpar(C, factors[j - 1])) sign = -sign;
            std::swap(factors[j], factors[j - 1]);
        }
    for (size_t i = 1; i < factors.size(); ++i)
        if (factors[i] == factors[i - 1] && fpar(C, factors[i])) return;
    SymMonomial m{hbar, std::move(factors)};
    if (!b.admits(m)) return;
    auto it = s.find(m);
    Scalar add = (sign < 0) ? Scalar(-v) : v;
    if (it == s.end()) s.emplace(std::move(m), add);
    else {
        it->second += add;
        if (it->second == 0) s.erase(it);
    }
}

SymSeries sym_sum(const SymSeries& a, const SymSeries& b) {
    SymSeries out = a;
    for (const auto& [m, v] : b) {
        auto it = out.find(m);
        if (it == out.end()) out.emplace(m, v);
        else {
            it->second += v;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

SymSeries sym_scale(const SymSeries& a, const Scalar& s) {
    SymSeries out;
    if (s == 0) return out;
    for (const auto& [m, v] : a) out.emplace(m, v * s);
    return out;
}

SymSeries delta_c(const CyclicContext& C, const SymSeries& s, const SymBounds& b) {
    SymSeries out;
    for (const auto& [m, v] : s) {
        const int r = (int)m.factors.size();
        int pre = 0;
        for (int i = 0; i < r; ++i) {
            CyclicChain one{{m.factors[i], Scalar(1)}};
            for (const auto& [uv, cv] : cobracket(C, one)) {
                std::vector<CyclicWord> nf;
                nf.reserve(r + 1);
                nf.push_back(uv.first);
                nf.push_back(uv.second);
                for (int t = 0; t < r; ++t)
                    if (t != i) nf.push_back(m.factors[t]);
                sym_add(C, out, m.hbar, std::move(nf), v * cv * sign_pow(pre), b);
            }
            pre += fpar(C, m.factors[i]);
        }
    }
    return out;
}

SymSeries delta_b_op(const CyclicContext& C, const SymSeries& s, const SymBounds& b) {
    SymSeries out;
    for (const auto& [m, v] : s) {
        const int r = (int)m.factors.size();
        std::vector<int> fp(r);
        for (int i = 0; i < r; ++i) fp[i] = fpar(C, m.factors[i]);
        for (int i = 0; i < r; ++i) {
            int pre_i = 0;
            for (int t = 0; t < i; ++t) pre_i += fp[t];
            for (int j = i + 1; j < r; ++j) {
                int pre_j = -fp[i];
                for (int t = 0; t < j; ++t) pre_j += fp[t];
                long e = (long)fp[i] * pre_i + (long)fp[j] * ((pre_j % 2 + 2) % 2) + fp[i];
                CyclicChain ci{{m.factors[i], Scalar(1)}}, cj{{m.factors[j], Scalar(1)}};
                for (const auto& [w, cv] : bracket(C, ci, cj)) {
                    std::vector<CyclicWord> nf;
                    nf.reserve(r - 1);
                    nf.push_back(w);
                    for (int t = 0; t < r; ++t)
                        if (t != i && t != j) nf.push_back(m.factors[t]);
                    sym_add(C, out, m.hbar + 1, std::move(nf), v * cv * sign_pow(e), b);
                }
            }
        }
    }
    return out;
}

SymSeries delta_g_op(const CyclicContext& C, const SymSeries& s, const WordDifferential& dg,
                     const SymBounds& b) {
    SymSeries out;
    if (!dg) return out;
    for (const auto& [m, v] : s) {
        const int r = (int)m.factors.size();
        int pre = 0;
        for (int i = 0; i < r; ++i) {
            CyclicChain one{{m.factors[i], Scalar(1)}};
            for (const auto& [w, cv] : dg(one)) {
                std::vector<CyclicWord> nf = m.factors;
                nf[i] = w;
                sym_add(C, out, m.hbar, std::move(nf), v * cv * sign_pow(pre), b);
            }
            pre += fpar(C, m.factors[i]);
        }
    }
    return out;
}

SymSeries bv_delta0(const CyclicContext& C, const SymSeries& s, const WordDifferential& dg,
                    const SymBounds& b) {
    SymSeries out = delta_c(C, s, b);
    out = sym_sum(out, delta_b_op(C, s, b));
    if (dg) out = sym_sum(out, delta_g_op(C, s, dg, b));
    return out;
}

SymSeries sym_bracket(const CyclicContext& C, const SymSeries& x, const SymSeries& y,
                      const SymBounds& b) {
    SymSeries out;
    for (const auto& [m1, v1] : x) {
        const int r1 = (int)m1.factors.size();
        std::vector<int> fp1(r1);
        int tot1 = 0;
        for (int i = 0; i < r1; ++i) {
            fp1[i] = fpar(C, m1.factors[i]);
            tot1 += fp1[i];
        }
        for (const auto& [m2, v2] : y) {
            const int r2 = (int)m2.factors.size();
            for (int i = 0; i < r1; ++i) {
                int pre_i = 0;
                for (int t = 0; t < i; ++t) pre_i += fp1[t];
                for (int j = 0; j < r2; ++j) {
                    int pre_j = 0;
                    for (int t = 0; t < j; ++t) pre_j += fpar(C, m2.factors[t]);
                    int fj = fpar(C, m2.factors[j]);
                    // move factor i of x to front, factor j of y next to it
                    int mid = (((tot1 - fp1[i]) % 2) + 2) % 2;
                    long e = (long)fp1[i] * pre_i + (long)fj * pre_j + (long)fj * mid;
                    CyclicChain ci{{m1.factors[i], Scalar(1)}}, cj{{m2.factors[j], Scalar(1)}};
                    for (const auto& [w, cv] : bracket(C, ci, cj)) {
                        std::vector<CyclicWord> nf;
                        nf.reserve(r1 + r2 - 1);
                        nf.push_back(w);
                        for (int t = 0; t < r1; ++t)
                            if (t != i) nf.push_back(m1.factors[t]);
                        for (int t = 0; t < r2; ++t)
                            if (t != j) nf.push_back(m2.factors[t]);
                        sym_add(C, out, m1.hbar + m2.hbar, std::move(nf), v1 * v2 * cv * sign_pow(e),
                                b);
                    }
                }
            }
        }
    }
    return out;
}

SymSeries mc_residual_cyc(const CyclicContext& C, const SymSeries& z, const WordDifferential& dg,
                          const SymBounds& b) {
    SymSeries out = bv_delta0(C, z, dg, b);
    out = sym_sum(out, sym_scale(sym_bracket(C, z, z, b), Scalar(1, 2)));
    return out;
}

SymSeries twist_apply(const CyclicContext& C, const SymSeries& z, const SymSeries& s,
                      const WordDifferential& dg, const SymBounds& b) {
    return sym_sum(bv_delta0(C, s, dg, b), sym_bracket(C, z, s, b));
}

IblReport ibl_check(const CyclicContext& C, const SymSeries& z, const WordDifferential& dg,
                    const std::vector<SymMonomial>& sample, const SymBounds& b) {
    IblReport rep;
    auto res = mc_residual_cyc(C, z, dg, b);
    if (!res.empty()) {
        rep.mc_pass = false;
        std::ostringstream os;
        os << "master equation residual has " << res.size() << " terms";
        rep.witness = os.str();
    }
    for (const auto& m : sample) {
        SymSeries one{{m, Scalar(1)}};
        auto once = twist_apply(C, z, one, dg, b);
        auto twice = twist_apply(C, z, once, dg, b);
        if (!twice.empty()) {
            rep.square_pass = false;
            if (rep.witness.empty()) rep.witness = "Delta_Z^2 != 0 on a sample monomial";
        }
        // reduced preservation: acting on reduced factors must not create unit letters
        bool reduced_input = true;
        for (const auto& w : m.factors)
            for (int x : w.letters)
                if (C.algebra().degree(x) == 0) reduced_input = false;
        if (reduced_input) {
            for (const auto& [mm, vv] : once)
                for (const auto& w : mm.factors)
                    for (int x : w.letters)
                        if (C.algebra().degree(x) == 0) {
                            rep.reduced_preserved = false;
                            if (rep.witness.empty()) rep.witness = "unit letter produced";
                        }
        }
    }
    return rep;
}

// ------------------------------------------------- involutivity / axiom suite

AxiomReport involutivity_check(const CyclicContext& C, const std::vector<CyclicWord>& sample) {
    AxiomReport rep;
    const int n = C.algebra().top_degree();
    auto deg = [&](const CyclicWord& w) { return C.word_degree(w); };
    auto one = [](const CyclicWord& w) { return CyclicChain{{w, Scalar(1)}}; };
    auto wname = [&](const CyclicWord& w) {
        std::ostringstream os;
        os << "(";
        for (size_t i = 0; i < w.letters.size(); ++i)
            os << (i ? " " : "") << C.algebra().basis_name(w.letters[i]) << "*";
        os << ")";
        return os.str();
    };

    // antisymmetry and Jacobi, (deg+n)-twisted
    for (const auto& x : sample)
        for (const auto& y : sample) {
            auto d = bracket(C, one(x), one(y));
            Scalar s = sign_pow((long)(deg(x) + n) * (deg(y) + n));
            for (const auto& [w, v] : bracket(C, one(y), one(x))) {
                auto it = d.find(w);
                Scalar add = s * v;
                if (it == d.end()) d.emplace(w, add);
                else {
                    it->second += add;
                    if (it->second == 0) d.erase(it);
                }
            }
            if (!d.empty()) rep.fail("antisymmetry fails at " + wname(x) + ", " + wname(y));
        }
    for (const auto& x : sample)
        for (const auto& y : sample)
            for (const auto& z : sample) {
                auto lhs = bracket(C, one(x), bracket(C, one(y), one(z)));
                auto r1 = bracket(C, bracket(C, one(x), one(y)), one(z));
                auto r2 = bracket(C, one(y), bracket(C, one(x), one(z)));
                Scalar s = sign_pow((long)(deg(x) + n) * (deg(y) + n));
                CyclicChain d = lhs;
                for (const auto& [w, v] : r1) {
                    auto it = d.find(w);
                    if (it == d.end()) d.emplace(w, -v);
                    else {
                        it->second -= v;
                        if (it->second == 0) d.erase(it);
                    }
                }
                for (const auto& [w, v] : r2) {
                    Scalar add = -s * v;
                    auto it = d.find(w);
                    if (it == d.end()) d.emplace(w, add);
                    else {
                        it->second += add;
                        if (it->second == 0) d.erase(it);
                    }
                }
                if (!d.empty())
                    rep.fail("Jacobi fails at " + wname(x) + ", " + wname(y) + ", " + wname(z));
            }

    // co-antisymmetry, (deg+n+1)-twisted
    for (const auto& x : sample) {
        auto cb = cobracket(C, one(x));
        auto d = cb;
        for (const auto& [uv, v] : cb) {
            Scalar s = sign_pow((long)(deg(uv.first) + n + 1) * (deg(uv.second) + n + 1));
            auto key = std::make_pair(uv.second, uv.first);
            Scalar add = s * v;
            auto it = d.find(key);
            if (it == d.end()) d.emplace(key, add);
            else {
                it->second += add;
                if (it->second == 0) d.erase(it);
            }
        }
        if (!d.empty()) rep.fail("co-antisymmetry fails at " + wname(x));
    }

    // co-Jacobi: (1 + sigma + sigma^2)(Delta (x) 1)Delta = 0, (deg+n)-twisted cyclings
    for (const auto& x : sample) {
        std::map<std::tuple<CyclicWord, CyclicWord, CyclicWord>, Scalar> three, acc;
        for (const auto& [uv, v] : cobracket(C, one(x)))
            for (const auto& [u2, v2] : cobracket(C, one(uv.first))) {
                auto key = std::make_tuple(u2.first, u2.second, uv.second);
                three[key] += v * v2;
            }
        for (const auto& [k3, v] : three) {
            if (v == 0) continue;
            const auto& [a, b, c] = k3;
            long da = deg(a) + n, db = deg(b) + n, dc = deg(c) + n;
            acc[std::make_tuple(a, b, c)] += v;
            acc[std::make_tuple(c, a, b)] += v * sign_pow(dc * (da + db));
            acc[std::make_tuple(b, c, a)] += v * sign_pow((db + dc) * da);
        }
        for (const auto& [k3, v] : acc)
            if (v != 0) {
                rep.fail("co-Jacobi fails at " + wname(x));
                break;
            }
    }

    // involutivity [,] o Delta = 0
    for (const auto& x : sample) {
        CyclicChain acc;
        for (const auto& [uv, v] : cobracket(C, one(x)))
            for (const auto& [w, v2] : bracket(C, one(uv.first), one(uv.second))) {
                auto it = acc.find(w);
                Scalar add = v * v2;
                if (it == acc.end()) acc.emplace(w, add);
                else {
                    it->second += add;
                    if (it->second == 0) acc.erase(it);
                }
            }
        if (!acc.empty()) rep.fail("involutivity fails at " + wname(x));
    }

    // Drinfeld compatibility, BV cross-term form:
    // (delta_c delta_b + delta_b delta_c)(x.y) = 0 on two-factor monomials
    SymBounds b;
    b.hbar_max = 4;
    b.max_factors = 8;
    b.max_word_len = 64;
    for (const auto& x : sample)
        for (const auto& y : sample) {
            SymSeries m;
            sym_add(C, m, 0, {x, y}, Scalar(1), b);
            if (m.empty()) continue;
            auto cross = sym_sum(delta_c(C, delta_b_op(C, m, b), b),
                                 delta_b_op(C, delta_c(C, m, b), b));
            if (!cross.empty())
                rep.fail("Drinfeld compatibility fails at " + wname(x) + ", " + wname(y));
        }
    return rep;
}

}  // namespace stringtop
