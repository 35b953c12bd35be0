#include "stringtop/hochschild.hpp"

#include <numeric>

namespace stringtop {

void chain_add(HochschildChain& c, const HochschildWord& w, const Scalar& v) {
    if (v == 0) return;
    auto it = c.find(w);
    if (it == c.end()) c.emplace(w, v);
    else {
        it->second += v;
        if (it->second == 0) c.erase(it);
    }
}

HochschildChain chain_scale(const HochschildChain& c, const Scalar& s) {
    HochschildChain out;
    if (s == 0) return out;
    for (const auto& [w, v] : c) out.emplace(w, v * s);
    return out;
}

HochschildChain chain_sum(const HochschildChain& a, const HochschildChain& b) {
    HochschildChain out = a;
    for (const auto& [w, v] : b) chain_add(out, w, v);
    return out;
}

int word_degree(const FrobeniusAlgebra& A, const HochschildWord& w) {
    int d = A.degree(w.head);
    for (int x : w.letters) d += A.degree(x) - 1;
    return d;
}

int word_weight(const HochschildWord& w) { return (int)w.letters.size(); }

namespace {

/* shifted letter degree */
inline int ell(const FrobeniusAlgebra& A, int x) { return A.degree(x) - 1; }

void d_word(const FrobeniusAlgebra& A, const HochschildWord& w, const Scalar& coeff,
            HochschildChain& out) {
    const int k = (int)w.letters.size();
    if (k == 0) return;
    // head merge: +(-1)^{|a0|}
    {
        Scalar s = coeff * sign_pow(A.degree(w.head));
        for (const auto& [m, c] : A.mul(w.head, w.letters[0])) {
            HochschildWord nw{m, {w.letters.begin() + 1, w.letters.end()}};
            chain_add(out, nw, s * c);
        }
    }
    // internal merges: (-1)^{pref(i) + ell_i}
    int pref = A.degree(w.head);
    for (int i = 0; i + 1 < k; ++i) {
        Scalar s = coeff * sign_pow(pref + ell(A, w.letters[i]));
        for (const auto& [m, c] : A.mul(w.letters[i], w.letters[i + 1])) {
            HochschildWord nw{w.head, {}};
            nw.letters.reserve(k - 1);
            for (int t = 0; t < i; ++t) nw.letters.push_back(w.letters[t]);
            if (m != A.unit()) nw.letters.push_back(m);  // unit letters drop out
            for (int t = i + 2; t < k; ++t) nw.letters.push_back(w.letters[t]);
            chain_add(out, nw, s * c);
        }
        pref += ell(A, w.letters[i]);
    }
    // wrap merge a_k a_0: -(-1)^{ell_k * pref(k)}
    {
        int prefk = A.degree(w.head);
        for (int t = 0; t + 1 < k; ++t) prefk += ell(A, w.letters[t]);
        Scalar s = coeff * Scalar(-1) * sign_pow((long)ell(A, w.letters[k - 1]) * prefk);
        for (const auto& [m, c] : A.mul(w.letters[k - 1], w.head)) {
            HochschildWord nw{m, {w.letters.begin(), w.letters.end() - 1}};
            chain_add(out, nw, s * c);
        }
    }
}

}  // namespace

HochschildChain hochschild_differential(const FrobeniusAlgebra& A, const HochschildChain& c) {
    HochschildChain out;
    for (const auto& [w, v] : c) d_word(A, w, v, out);
    return out;
}

HochschildChain hochschild_differential_reduced(const FrobeniusAlgebra& A,
                                                const HochschildChain& c) {
    HochschildChain out = hochschild_differential(A, c);
    for (auto it = out.begin(); it != out.end();)
        it = it->first.letters.empty() ? out.erase(it) : std::next(it);
    return out;
}

HochschildChain connes_B(const FrobeniusAlgebra& A, const HochschildChain& c) {
    HochschildChain out;
    for (const auto& [w, v] : c) {
        if (w.head == A.unit() && !w.letters.empty()) continue;  // unit letter would appear
        if (w.head == A.unit() && w.letters.empty()) continue;   // B(1) = 0
        std::vector<int> seq;
        seq.reserve(w.letters.size() + 1);
        seq.push_back(w.head);
        for (int x : w.letters) seq.push_back(x);
        const int k1 = (int)seq.size();
        std::vector<int> ls(k1);
        int tot = 0;
        for (int i = 0; i < k1; ++i) {
            ls[i] = ell(A, seq[i]);
            tot += ls[i];
        }
        int prefsum = 0;
        for (int j = 0; j < k1; ++j) {
            Scalar s = v * sign_pow((long)prefsum * (tot - prefsum));
            HochschildWord nw{A.unit(), {}};
            nw.letters.reserve(k1);
            for (int t = 0; t < k1; ++t) nw.letters.push_back(seq[(j + t) % k1]);
            chain_add(out, nw, s);
            prefsum += ls[j];
        }
    }
    return out;
}

HochschildChain shuffle_product(const FrobeniusAlgebra& A, const HochschildChain& c1,
                                const HochschildChain& c2) {
    HochschildChain out;
    for (const auto& [w1, v1] : c1)
        for (const auto& [w2, v2] : c2) {
            const auto& a = w1.letters;
            const auto& b = w2.letters;
            int La = 0;
            for (int x : a) La += ell(A, x);
            Scalar base = v1 * v2 * sign_pow((long)A.degree(w2.head) * La);
            const Element& heads = A.mul(w1.head, w2.head);
            if (heads.empty()) continue;
            // iterate (p,q)-shuffles as bitmask interleavings
            const int p = (int)a.size(), q = (int)b.size();
            std::vector<int> pick(p + q, 0);
            std::fill(pick.begin() + p, pick.end(), 1);
            std::sort(pick.begin(), pick.end());
            // enumerate all interleavings via next_permutation on the 0/1 multiset
            do {
                std::vector<int> letters;
                letters.reserve(p + q);
                int ia = 0, ib = 0, suffa = La, e = 0;
                for (int t = 0; t < p + q; ++t) {
                    if (pick[t] == 0) {
                        letters.push_back(a[ia]);
                        suffa -= ell(A, a[ia]);
                        ++ia;
                    } else {
                        letters.push_back(b[ib]);
                        e += ell(A, b[ib]) * suffa;
                        ++ib;
                    }
                }
                Scalar s = base * sign_pow(e);
                for (const auto& [m, cm] : heads)
                    chain_add(out, HochschildWord{m, letters}, s * cm);
            } while (std::next_permutation(pick.begin(), pick.end()));
        }
    return out;
}

HochschildChain string_product(const FrobeniusAlgebra& A, const HochschildChain& c1,
                               const HochschildChain& c2) {
    HochschildChain out;
    const int n = A.top_degree();
    for (const auto& [w1, v1] : c1) {
        int La = 0;
        for (int x : w1.letters) La += ell(A, x);
        const int da0 = A.degree(w1.head);
        for (const auto& [w2, v2] : c2) {
            const int db0 = A.degree(w2.head);
            for (const auto& t : A.diagonal().terms) {
                if (t.right == A.unit()) continue;  // the letter D'' may not be the unit
                long e = (long)db0 * (n + da0 + La) + (long)A.degree(t.right) * (da0 + La) +
                         db0 + A.degree(t.left) + da0 + La;
                Scalar s = v1 * v2 * t.coeff * sign_pow(e);
                // head = b0 * D' * a0
                for (const auto& [m1, cm1] : A.mul(w2.head, t.left))
                    for (const auto& [m2, cm2] : A.mul(m1, w1.head)) {
                        HochschildWord nw{m2, {}};
                        nw.letters.reserve(w1.letters.size() + 1 + w2.letters.size());
                        for (int x : w1.letters) nw.letters.push_back(x);
                        nw.letters.push_back(t.right);
                        for (int x : w2.letters) nw.letters.push_back(x);
                        chain_add(out, nw, s * cm1 * cm2);
                    }
            }
        }
    }
    return out;
}

HochschildTensor string_coproduct(const FrobeniusAlgebra& A, const HochschildChain& c) {
    HochschildTensor out;
    for (const auto& [w, v] : c) {
        const int k = (int)w.letters.size();
        const int da0 = A.degree(w.head);
        for (const auto& t : A.diagonal().terms) {
            const int dl = A.degree(t.left), dr = A.degree(t.right);
            int prefell = 0;
            for (int j = 0; j <= k; ++j) {
                long e = (long)dl * dr + (long)dl * da0 + (long)dr * (da0 + dl + prefell);
                Scalar s = v * t.coeff * sign_pow(e);
                for (const auto& [m, cm] : A.mul(w.head, t.left)) {
                    HochschildWord left{m, {w.letters.begin(), w.letters.begin() + j}};
                    HochschildWord right{t.right, {w.letters.begin() + j, w.letters.end()}};
                    auto key = std::make_pair(left, right);
                    auto it = out.find(key);
                    Scalar add = s * cm;
                    if (it == out.end()) out.emplace(key, add);
                    else {
                        it->second += add;
                        if (it->second == 0) out.erase(it);
                    }
                }
                if (j < k) prefell += ell(A, w.letters[j]);
            }
        }
    }
    return out;
}

// --------------------------------------------------------------- cyclic (algebra side)

namespace {

/* returns false for zero classes; else canonical letters and the sign
 * relating input = sign * canonical */
bool canonicalize_cycA(const FrobeniusAlgebra& A, const std::vector<int>& letters,
                       std::vector<int>& canon, Scalar& sign) {
    const int k = (int)letters.size();
    if (k == 0) {
        canon.clear();
        sign = 1;
        return true;
    }
    std::vector<int> ls(k);
    int tot = 0;
    for (int i = 0; i < k; ++i) {
        ls[i] = A.degree(letters[i]) - 1;
        tot += ls[i];
    }
    std::vector<int> best;
    int best_sign = 0;
    bool zero = false;
    int pref = 0;
    for (int r = 0; r < k; ++r) {
        std::vector<int> rot(k);
        for (int t = 0; t < k; ++t) rot[t] = letters[(r + t) % k];
        int sg = ((pref % 2) && ((tot - pref) % 2)) ? -1 : 1;
        if (best.empty() && best_sign == 0) {
            best = rot;
            best_sign = sg;
        } else if (rot < best) {
            best = rot;
            best_sign = sg;
        } else if (rot == best && sg != best_sign) {
            zero = true;
        }
        pref += ls[r];
    }
    if (zero) return false;
    canon = best;
    sign = Scalar(best_sign);
    return true;
}

}  // namespace

void cyclicA_add(const FrobeniusAlgebra& A, CyclicChainA& c, const std::vector<int>& letters,
                 const Scalar& v) {
    if (v == 0) return;
    std::vector<int> canon;
    Scalar sign;
    if (!canonicalize_cycA(A, letters, canon, sign)) return;
    CyclicWordA w{std::move(canon)};
    auto it = c.find(w);
    Scalar add = v * sign;
    if (it == c.end()) c.emplace(std::move(w), add);
    else {
        it->second += add;
        if (it->second == 0) c.erase(it);
    }
}

CyclicChainA pr(const FrobeniusAlgebra& A, const HochschildChain& c) {
    CyclicChainA out;
    for (const auto& [w, v] : c) {
        if (w.head != A.unit()) continue;
        cyclicA_add(A, out, w.letters, v);
    }
    return out;
}

HochschildChain iota(const FrobeniusAlgebra& A, const CyclicWordA& w) {
    HochschildChain out;
    const int k = (int)w.letters.size();
    if (k == 0) {
        chain_add(out, HochschildWord{A.unit(), {}}, Scalar(1));
        return out;
    }
    std::vector<int> ls(k);
    int tot = 0;
    for (int i = 0; i < k; ++i) {
        ls[i] = A.degree(w.letters[i]) - 1;
        tot += ls[i];
    }
    int pref = 0;
    for (int r = 0; r < k; ++r) {
        Scalar s = sign_pow((long)(pref % 2) * ((tot - pref) % 2));
        HochschildWord nw{A.unit(), {}};
        nw.letters.reserve(k);
        for (int t = 0; t < k; ++t) nw.letters.push_back(w.letters[(r + t) % k]);
        chain_add(out, nw, s);
        pref += ls[r];
    }
    return out;
}

HochschildChain iota(const FrobeniusAlgebra& A, const CyclicChainA& c) {
    HochschildChain out;
    for (const auto& [w, v] : c)
        for (const auto& [hw, hv] : iota(A, w)) chain_add(out, hw, v * hv);
    return out;
}

CyclicChainA cyclic_differential_alg(const FrobeniusAlgebra& A, const CyclicChainA& c) {
    CyclicChainA out;
    for (const auto& [w, v] : c) {
        const int k = (int)w.letters.size();
        if (k < 2) continue;
        std::vector<int> ls(k);
        int tot = 0;
        for (int i = 0; i < k; ++i) {
            ls[i] = A.degree(w.letters[i]) - 1;
            tot += ls[i];
        }
        int pref = 0;
        for (int r = 0; r < k; ++r) {
            int rotsign = ((pref % 2) && ((tot - pref) % 2)) ? -1 : 1;
            const int a = w.letters[r % k], b = w.letters[(r + 1) % k];
            Scalar s = v * Scalar(rotsign) * sign_pow(A.degree(a) - 1);
            for (const auto& [m, cm] : A.mul(a, b)) {
                if (m == A.unit()) continue;
                std::vector<int> nl;
                nl.reserve(k - 1);
                nl.push_back(m);
                for (int t = 2; t < k; ++t) nl.push_back(w.letters[(r + t) % k]);
                cyclicA_add(A, out, nl, s * cm);
            }
            pref += ls[r];
        }
    }
    return out;
}

void NegativeCyclicChain::add(int upow, const HochschildWord& w, const Scalar& v) {
    if (upow > u_truncation || v == 0) return;
    chain_add(coeffs[upow], w, v);
}

NegativeCyclicChain negative_cyclic_differential(const FrobeniusAlgebra& A,
                                                 const NegativeCyclicChain& c) {
    NegativeCyclicChain out;
    out.u_truncation = c.u_truncation;
    for (const auto& [p, ch] : c.coeffs) {
        for (const auto& [w, v] : hochschild_differential(A, ch)) out.add(p, w, v);
        for (const auto& [w, v] : connes_B(A, ch)) out.add(p + 1, w, v);
    }
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = it->second.empty() ? out.coeffs.erase(it) : std::next(it);
    return out;
}

}  // namespace stringtop
