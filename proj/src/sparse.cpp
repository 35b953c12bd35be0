#include "stringtop/core.hpp"

#include <algorithm>
#include <cassert>

namespace stringtop {

Scalar koszul_sign(std::span<const int> perm, std::span<const int> degrees) {
    if (perm.size() != degrees.size())
        throw std::invalid_argument("koszul_sign: length mismatch");
    int s = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                s += degrees[perm[i]] * degrees[perm[j]];
    return sign_pow(s);
}

int koszul_parity(std::span<const int> perm, std::span<const int> parities) {
    int s = 0;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j])
                s ^= (parities[perm[i]] & parities[perm[j]] & 1);
    return s;
}

void SparseMatrix::add(int r, int c, const Scalar& v) {
    if (v == 0) return;
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("SparseMatrix::add: index out of declared basis");
    auto key = std::make_pair(r, c);
    auto it = data_.find(key);
    if (it == data_.end()) data_.emplace(key, v);
    else {
        it->second += v;
        if (it->second == 0) data_.erase(it);
    }
}

namespace {

/* dense integer row after clearing denominators */
struct Row {
    std::vector<mpz_class> a;
};

}  // namespace

RankKernel rank_and_kernel(const SparseMatrix& m) {
    const int nr = m.rows(), nc = m.cols();
    RankKernel out;
    if (nc == 0) return out;

    // assemble dense rows, clear denominators per row
    std::vector<Row> rows(nr);
    for (auto& r : rows) r.a.assign(nc, mpz_class(0));
    {
        std::vector<mpz_class> den(nr, mpz_class(1));
        for (const auto& [rc, v] : m.entries())
            mpz_lcm(den[rc.first].get_mpz_t(), den[rc.first].get_mpz_t(),
                    v.get_den().get_mpz_t());
        for (const auto& [rc, v] : m.entries()) {
            mpz_class t = den[rc.first] / v.get_den();
            rows[rc.first].a[rc.second] = v.get_num() * t;
        }
    }

    // fraction-free elimination, deterministic column order, smallest-|pivot| row choice
    std::vector<int> pivot_col;     // pivot column of eliminated row k
    std::vector<int> where(nc, -1); // column -> eliminated row index
    mpz_class prev(1);
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int pr = -1;
        for (int i = r; i < nr; ++i) {
            if (rows[i].a[c] == 0) continue;
            if (pr < 0 || mpz_cmpabs(rows[i].a[c].get_mpz_t(), rows[pr].a[c].get_mpz_t()) < 0)
                pr = i;
        }
        if (pr < 0) continue;
        std::swap(rows[r], rows[pr]);
        const mpz_class piv = rows[r].a[c];
        for (int i = r + 1; i < nr; ++i) {
            for (int j = c + 1; j < nc; ++j) {
                mpz_class t = rows[i].a[j] * piv - rows[i].a[c] * rows[r].a[j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                rows[i].a[j] = t;
            }
            rows[i].a[c] = 0;
        }
        prev = piv;
        pivot_col.push_back(c);
        where[c] = r;
        ++r;
    }
    out.rank = r;

    // kernel: for each free column f, back-substitute over Q
    for (int f = 0; f < nc; ++f) {
        if (where[f] >= 0) continue;
        std::vector<Scalar> x(nc, Scalar(0));
        x[f] = 1;
        for (int k = (int)pivot_col.size() - 1; k >= 0; --k) {
            const int pc = pivot_col[k];
            const Row& rw = rows[k];
            Scalar s(0);
            for (int j = pc + 1; j < nc; ++j) {
                if (rw.a[j] == 0 || x[j] == 0) continue;
                s += Scalar(rw.a[j]) * x[j];
            }
            if (s == 0) { x[pc] = 0; continue; }
            x[pc] = -s / Scalar(rw.a[pc]);
            x[pc].canonicalize();
        }
        // clear denominators for a tidy basis vector
        mpz_class den(1);
        for (const auto& q : x)
            if (q != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
        SparseVector v;
        for (int j = 0; j < nc; ++j)
            if (x[j] != 0) v.add(j, x[j] * Scalar(den));
        out.kernel.push_back(std::move(v));
    }
    return out;
}

}  // namespace stringtop
