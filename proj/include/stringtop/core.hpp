#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stringtop {

/* Exact rational scalars. mpq_class keeps lowest terms / positive denominator
 * after canonicalize(); all arithmetic below goes through canonical values. */
using Scalar = mpq_class;

inline Scalar scalar_from_string(const std::string& s) {
    Scalar q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline std::string scalar_to_string(const Scalar& q) { return q.get_str(); }

/* (-1)^e as a Scalar */
inline Scalar sign_pow(long e) { return (e % 2) ? Scalar(-1) : Scalar(1); }

struct GradedSymbol {
    int id = 0;
    int degree = 0;  // Koszul-relevant degree, shifts already applied
};

/* Koszul sign of a permutation acting on graded symbols.
 * perm[i] = index (into degrees) of the symbol landing in position i. */
Scalar koszul_sign(std::span<const int> perm, std::span<const int> degrees);

/* parity-only version used in hot paths: degrees mod 2 */
int koszul_parity(std::span<const int> perm, std::span<const int> parities);

// ---------------------------------------------------------------------------
// sparse exact linear algebra

class SparseVector {
public:
    void add(int i, const Scalar& c) {
        if (c == 0) return;
        auto it = data_.find(i);
        if (it == data_.end()) data_.emplace(i, c);
        else {
            it->second += c;
            if (it->second == 0) data_.erase(it);
        }
    }
    const std::map<int, Scalar>& entries() const { return data_; }
    bool empty() const { return data_.empty(); }
    bool operator==(const SparseVector&) const = default;

private:
    std::map<int, Scalar> data_;
};

class SparseMatrix {
public:
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
    void add(int r, int c, const Scalar& v);
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::map<std::pair<int, int>, Scalar>& entries() const { return data_; }

private:
    int rows_, cols_;
    std::map<std::pair<int, int>, Scalar> data_;
};

struct RankKernel {
    int rank = 0;
    std::vector<SparseVector> kernel;  // spans ker(m); size = cols - rank
};

/* Exact rank and kernel over Q. Fraction-free (Bareiss) elimination on
 * denominator-cleared rows; smallest-|pivot| partial pivoting; deterministic
 * column order. */
RankKernel rank_and_kernel(const SparseMatrix& m);

}  // namespace stringtop
