#include "stringtop/cyclic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace stringtop {

namespace {

/* canonicalize letters under signed rotation for a given shifted-degree function.
 * input = sign * canonical; returns false for zero classes.  */
bool canonical_rotation(const std::vector<int>& letters, const std::function<int(int)>& ell,
                        std::vector<int>& canon, int& sign) {
    const int k = (int)letters.size();
    if (k == 0) {
        canon.clear();
        sign = 1;
        return true;
    }
    int tot = 0;
    std::vector<int> ls(k);
    for (int i = 0; i < k; ++i) {
        ls[i] = ell(letters[i]);
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
        if (best_sign == 0 || rot < best) {
            best = std::move(rot);
            best_sign = sg;
        } else if (rot == best && sg != best_sign) {
            zero = true;
        }
        pref += ls[r];
    }
    if (zero) return false;
    canon = std::move(best);
    sign = best_sign;
    return true;
}

void add_with(const std::function<int(int)>& ell, CyclicChain& c,
              const std::vector<int>& letters, const Scalar& v) {
    if (v == 0) return;
    std::vector<int> canon;
    int sign;
    if (!canonical_rotation(letters, ell, canon, sign)) return;
    CyclicWord w{std::move(canon)};
    auto it = c.find(w);
    Scalar add = (sign < 0) ? Scalar(-v) : v;
    if (it == c.end()) c.emplace(std::move(w), add);
    else {
        it->second += add;
        if (it->second == 0) c.erase(it);
    }
}

}  // namespace

CyclicContext::CyclicContext(const FrobeniusAlgebra& A, bool reduced)
    : A_(&A), reduced_(reduced) {
    for (int i = 0; i < A.dim(); ++i)
        if (!reduced || A.degree(i) >= 1) letters_.push_back(i);
}

int CyclicContext::word_degree(const CyclicWord& w) const {
    int d = 0;
    for (int x : w.letters) d += ell(x);
    return d;
}

bool CyclicContext::allowed(int q) const {
    return !reduced_ || A_->degree(q) >= 1;
}

void cyclic_add(const CyclicContext& C, CyclicChain& c, const std::vector<int>& letters,
                const Scalar& v) {
    add_with([&C](int q) { return C.ell(q); }, c, letters, v);
}

void tensor_add(const CyclicContext& C, CyclicTensor& t, const std::vector<int>& l1,
                const std::vector<int>& l2, const Scalar& v) {
    if (v == 0) return;
    std::vector<int> c1, c2;
    int s1, s2;
    auto ell = [&C](int q) { return C.ell(q); };
    if (!canonical_rotation(l1, ell, c1, s1)) return;
    if (!canonical_rotation(l2, ell, c2, s2)) return;
    auto key = std::make_pair(CyclicWord{std::move(c1)}, CyclicWord{std::move(c2)});
    Scalar add = v * Scalar(s1 * s2);
    auto it = t.find(key);
    if (it == t.end()) t.emplace(std::move(key), add);
    else {
        it->second += add;
        if (it->second == 0) t.erase(it);
    }
}

CyclicChain cyclic_scale(const CyclicChain& c, const Scalar& s) {
    CyclicChain out;
    if (s == 0) return out;
    for (const auto& [w, v] : c) out.emplace(w, v * s);
    return out;
}

CyclicChain cyclic_sum(const CyclicChain& a, const CyclicChain& b) {
    CyclicChain out = a;
    for (const auto& [w, v] : b) {
        auto it = out.find(w);
        if (it == out.end()) out.emplace(w, v);
        else {
            it->second += v;
            if (it->second == 0) out.erase(it);
        }
    }
    return out;
}

CyclicChain bracket(const CyclicContext& C, const CyclicChain& c1, const CyclicChain& c2) {
    CyclicChain out;
    for (const auto& [w1, v1] : c1) {
        const int k1 = (int)w1.letters.size();
        const int D1 = C.word_degree(w1);
        int tot1 = D1;
        int pref1 = 0;
        for (int r1 = 0; r1 < k1; ++r1) {
            const int a = w1.letters[r1];
            int rot1 = ((pref1 % 2) && ((tot1 - pref1) % 2)) ? -1 : 1;
            for (const auto& [w2, v2] : c2) {
                const int k2 = (int)w2.letters.size();
                int tot2 = C.word_degree(w2);
                int pref2 = 0;
                for (int r2 = 0; r2 < k2; ++r2) {
                    const int b = w2.letters[r2];
                    int rot2 = ((pref2 % 2) && ((tot2 - pref2) % 2)) ? -1 : 1;
                    pref2 += C.ell(b);
                    Scalar P = C.pairing(a, b);
                    if (P == 0) continue;
                    long e = (long)C.ell(a) * (C.ell(b) + D1) + C.ell(b);
                    Scalar s = v1 * v2 * P * Scalar(rot1 * rot2) * sign_pow(e);
                    std::vector<int> fused;
                    fused.reserve(k1 + k2 - 2);
                    for (int t = 1; t < k1; ++t) fused.push_back(w1.letters[(r1 + t) % k1]);
                    for (int t = 1; t < k2; ++t) fused.push_back(w2.letters[(r2 + t) % k2]);
                    if (C.reduced() && fused.empty()) continue;  // empty word absent in Cyc-bar
                    cyclic_add(C, out, fused, s);
                }
            }
            pref1 += C.ell(a);
        }
    }
    return out;
}

CyclicTensor cobracket(const CyclicContext& C, const CyclicChain& c) {
    CyclicTensor out;
    for (const auto& [w, v] : c) {
        const int k = (int)w.letters.size();
        if (k < 2) continue;
        const int tot = C.word_degree(w);
        int pref = 0;
        for (int r = 0; r < k; ++r) {
            const int a = w.letters[r];
            int rot = ((pref % 2) && ((tot - pref) % 2)) ? -1 : 1;
            pref += C.ell(a);
            for (int m = 1; m < k; ++m) {
                const int b = w.letters[(r + m) % k];
                Scalar P = C.pairing(a, b);
                if (P == 0) continue;
                std::vector<int> arcA, arcB;
                for (int t = 1; t < m; ++t) arcA.push_back(w.letters[(r + t) % k]);
                for (int t = m + 1; t < k; ++t) arcB.push_back(w.letters[(r + t) % k]);
                if (C.reduced() && (arcA.empty() || arcB.empty())) continue;
                int LA = 0, LB = 0;
                for (int x : arcA) LA += C.ell(x);
                for (int x : arcB) LB += C.ell(x);
                long e = (long)C.ell(b) * LA + (long)LA * LB;
                Scalar s = v * P * Scalar(rot) * sign_pow(e);
                tensor_add(C, out, arcB, arcA, s);
            }
        }
    }
    return out;
}

CyclicChain ceg_z(const FrobeniusAlgebra& A) {
    CyclicContext C(A, false);
    CyclicChain out;
    const int d = A.dim();
    const Scalar third(1, 3);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
            for (const auto& [pq, cpq] : A.mul(p, q))
                for (int r = 0; r < d; ++r) {
                    Scalar val(0);
                    for (const auto& [m, cm] : A.mul(pq, r)) val += cm * A.eps(m);
                    val *= cpq;
                    if (val == 0) continue;
                    Scalar s = sign_pow(C.ell(p) + C.ell(r));
                    cyclic_add(C, out, {p, q, r}, third * val * s);
                }
    return out;
}

CyclicChain ceg_differential_direct(const CyclicContext& C, const CyclicChain& c) {
    const FrobeniusAlgebra& A = C.algebra();
    CyclicChain out;
    for (const auto& [w, v] : c) {
        const int k = (int)w.letters.size();
        const int tot = C.word_degree(w);
        int pref = 0;
        for (int r = 0; r < k; ++r) {
            const int x = w.letters[r];
            int rot = ((pref % 2) && ((tot - pref) % 2)) ? -1 : 1;
            pref += C.ell(x);
            for (int a : C.letters())
                for (int b : C.letters()) {
                    auto it = A.mul(a, b).find(x);
                    if (it == A.mul(a, b).end()) continue;
                    Scalar s = v * it->second * Scalar(rot) * sign_pow(C.ell(a));
                    std::vector<int> nl;
                    nl.reserve(k + 1);
                    nl.push_back(a);
                    nl.push_back(b);
                    for (int t = 1; t < k; ++t) nl.push_back(w.letters[(r + t) % k]);
                    cyclic_add(C, out, nl, s);
                }
        }
    }
    return out;
}

CyclicChain ceg_differential_bracket(const CyclicContext& C, const CyclicChain& c) {
    CyclicContext full(C.algebra(), false);
    CyclicChain z = ceg_z(C.algebra());
    CyclicChain out = bracket(full, z, c);
    if (C.reduced()) {
        for (auto it = out.begin(); it != out.end();) {
            bool has_unit = false;
            for (int x : it->first.letters)
                if (C.algebra().degree(x) == 0) has_unit = true;
            it = (has_unit || it->first.letters.empty()) ? out.erase(it) : std::next(it);
        }
    }
    return out;
}

// ------------------------------------------------------------ cohomology side

int CohCyclicContext::word_degree(const CyclicWord& w) const {
    int d = 0;
    for (int x : w.letters) d += ell(x);
    return d;
}

void coh_cyclic_add(const CohCyclicContext& C, CyclicChain& c, const std::vector<int>& letters,
                    const Scalar& v) {
    add_with([&C](int q) { return C.ell(q); }, c, letters, v);
}

OneLoopFunctional OneLoopFunctional::indicator(const CohCyclicContext& C,
                                               const std::vector<int>& word,
                                               const Scalar& value) {
    OneLoopFunctional f;
    std::vector<int> canon;
    int sign;
    if (canonical_rotation(word, [&C](int q) { return C.ell(q); }, canon, sign)) {
        f.values_[CyclicWord{canon}] = value * Scalar(sign);
        f.degree = C.word_degree(CyclicWord{canon});
    }
    return f;
}

Scalar OneLoopFunctional::operator()(const CohCyclicContext& C,
                                     const std::vector<int>& letters) const {
    if (values_.empty()) return Scalar(0);
    std::vector<int> canon;
    int sign;
    if (!canonical_rotation(letters, [&C](int q) { return C.ell(q); }, canon, sign))
        return Scalar(0);
    auto it = values_.find(CyclicWord{canon});
    if (it == values_.end()) return Scalar(0);
    return it->second * Scalar(sign);
}

CyclicTensor string_bracket(const CohCyclicContext& C, const CyclicWord& w) {
    const FrobeniusAlgebra& A = C.algebra();
    CyclicTensor out;
    const int k = (int)w.letters.size();
    if (k == 0) return out;
    const int tot = C.word_degree(w);
    int pref = 0;
    auto ell = [&C](int q) { return C.ell(q); };
    for (int r = 0; r < k; ++r) {
        int rot = ((pref % 2) && ((tot - pref) % 2)) ? -1 : 1;
        for (int j = 0; j <= k; ++j) {
            for (const auto& t : A.diagonal().terms) {
                if (t.left == A.unit() || t.right == A.unit()) continue;  // unit letter kills
                std::vector<int> left, right;
                left.reserve(j + 1);
                right.reserve(k - j + 1);
                for (int q = 0; q < j; ++q) left.push_back(w.letters[(r + q) % k]);
                left.push_back(t.left);
                right.push_back(t.right);
                for (int q = j; q < k; ++q) right.push_back(w.letters[(r + q) % k]);
                // canonicalize both factors with cohomology-side shifts
                std::vector<int> cl, cr;
                int sl, sr;
                if (!canonical_rotation(left, ell, cl, sl)) continue;
                if (!canonical_rotation(right, ell, cr, sr)) continue;
                auto key = std::make_pair(CyclicWord{cl}, CyclicWord{cr});
                Scalar add = t.coeff * Scalar(rot * sl * sr);
                auto it = out.find(key);
                if (it == out.end()) out.emplace(key, add);
                else {
                    it->second += add;
                    if (it->second == 0) out.erase(it);
                }
            }
        }
        pref += C.ell(w.letters[r]);
    }
    return out;
}

namespace {

/* rotations of a word with Koszul signs (cohomology-side shifts) */
std::vector<std::pair<std::vector<int>, int>> rotations_coh(const CohCyclicContext& C,
                                                            const CyclicWord& w) {
    std::vector<std::pair<std::vector<int>, int>> out;
    const int k = (int)w.letters.size();
    if (k == 0) {
        out.push_back({{}, 1});
        return out;
    }
    const int tot = C.word_degree(w);
    int pref = 0;
    for (int r = 0; r < k; ++r) {
        std::vector<int> rot(k);
        for (int t = 0; t < k; ++t) rot[t] = w.letters[(r + t) % k];
        int sg = ((pref % 2) && ((tot - pref) % 2)) ? -1 : 1;
        out.push_back({std::move(rot), sg});
        pref += C.ell(w.letters[r]);
    }
    return out;
}

}  // namespace

CyclicChain string_cobracket(const CohCyclicContext& C, const CyclicWord& alpha,
                             const CyclicWord& beta, const OneLoopFunctional& z1) {
    const FrobeniusAlgebra& A = C.algebra();
    const int n = A.top_degree();
    CyclicChain out;
    auto rots_a = rotations_coh(C, alpha);
    auto rots_b = rotations_coh(C, beta);

    // first term: (alpha e_i beta | e^i) through pr -- only e^i = 1 survives
    for (const auto& t : A.diagonal().terms) {
        if (t.right != A.unit()) continue;
        if (t.left == A.unit()) continue;  // unit letter in the output word
        for (const auto& [ra, sa] : rots_a)
            for (const auto& [rb, sb] : rots_b) {
                std::vector<int> word;
                word.reserve(ra.size() + rb.size() + 1);
                for (int x : ra) word.push_back(x);
                word.push_back(t.left);
                for (int x : rb) word.push_back(x);
                coh_cyclic_add(C, out, word, t.coeff * Scalar(sa * sb));
            }
    }

    if (z1.is_zero()) return out;

    // corrections: (alpha'|e_i) z1(e^i alpha'' beta) with e_i = 1, e^i dual to the unit
    auto correction = [&](const std::vector<std::pair<std::vector<int>, int>>& rots_x,
                          const std::vector<std::pair<std::vector<int>, int>>& rots_y,
                          const Scalar& pre) {
        for (const auto& t : A.diagonal().terms) {
            if (t.left != A.unit()) continue;
            for (const auto& [rx, sx] : rots_x)
                for (const auto& [ry, sy] : rots_y) {
                    const int kx = (int)rx.size();
                    for (int j = 0; j <= kx; ++j) {
                        std::vector<int> prime(rx.begin(), rx.begin() + j);
                        std::vector<int> second(rx.begin() + j, rx.end());
                        int L2 = 0;
                        for (int x : second) L2 += C.ell(x);
                        std::vector<int> arg;
                        arg.reserve(second.size() + ry.size() + 1);
                        arg.push_back(t.right);
                        for (int x : second) arg.push_back(x);
                        for (int x : ry) arg.push_back(x);
                        Scalar val = z1(C, arg);
                        if (val == 0) continue;
                        Scalar s = pre * t.coeff * Scalar(sx * sy) * sign_pow((long)n * L2) * val;
                        coh_cyclic_add(C, out, prime, s);
                    }
                }
        }
    };
    correction(rots_a, rots_b, Scalar(1));
    long da = 0, db = 0;
    for (int x : alpha.letters) da += C.ell(x);
    for (int x : beta.letters) db += C.ell(x);
    correction(rots_b, rots_a, sign_pow(da * db));
    return out;
}

std::vector<CyclicWord> all_cyclic_words(const CyclicContext& C, int max_len) {
    std::vector<CyclicWord> out;
    std::vector<int> cur;
    auto ell = [&C](int q) { return C.ell(q); };
    std::function<void(int)> rec = [&](int len) {
        if ((int)cur.size() == len) {
            std::vector<int> canon;
            int sign;
            if (canonical_rotation(cur, ell, canon, sign) && canon == cur)
                out.push_back(CyclicWord{cur});
            return;
        }
        for (int q : C.letters()) {
            cur.push_back(q);
            rec(len);
            cur.pop_back();
        }
    };
    for (int len = 1; len <= max_len; ++len) rec(len);
    return out;
}

}  // namespace stringtop
