#pragma once

#include "stringtop/cyclic.hpp"

#include <functional>

namespace stringtop {

/* monomial in S(Cyc(H*)[n-3])[[hbar]]: hbar power and sorted factor list */
struct SymMonomial {
    int hbar = 0;
    std::vector<CyclicWord> factors;
    auto operator<=>(const SymMonomial&) const = default;
};

using SymSeries = std::map<SymMonomial, Scalar>;

struct SymBounds {
    int hbar_max = 2;
    int max_factors = 4;
    int max_word_len = 6;
    bool admits(const SymMonomial& m) const;
};

/* factor parity: (deg + n + 1) mod 2 */
int fpar(const CyclicContext& C, const CyclicWord& w);

/* canonical-sort the factors with Koszul signs; repeated odd factors vanish */
void sym_add(const CyclicContext& C, SymSeries& s, int hbar, std::vector<CyclicWord> factors,
             const Scalar& v, const SymBounds& b);

SymSeries sym_sum(const SymSeries& a, const SymSeries& b);
SymSeries sym_scale(const SymSeries& a, const Scalar& s);

/* optional internal differential on single cyclic words (delta_g); may be null */
using WordDifferential = std::function<CyclicChain(const CyclicChain&)>;

SymSeries delta_c(const CyclicContext& C, const SymSeries& s, const SymBounds& b);
SymSeries delta_b_op(const CyclicContext& C, const SymSeries& s, const SymBounds& b);
SymSeries delta_g_op(const CyclicContext& C, const SymSeries& s, const WordDifferential& dg,
                     const SymBounds& b);

/* Delta0 = delta_g + delta_c + hbar delta_b */
SymSeries bv_delta0(const CyclicContext& C, const SymSeries& s, const WordDifferential& dg,
                    const SymBounds& b);

/* Lie bracket extended as a biderivation: one factor from each argument */
SymSeries sym_bracket(const CyclicContext& C, const SymSeries& x, const SymSeries& y,
                      const SymBounds& b);

/* master-equation residual: Delta0(Z) + 1/2 [Z,Z] */
SymSeries mc_residual_cyc(const CyclicContext& C, const SymSeries& z, const WordDifferential& dg,
                          const SymBounds& b);

/* twisted operator Delta_Z = Delta0 + [Z,-] */
SymSeries twist_apply(const CyclicContext& C, const SymSeries& z, const SymSeries& s,
                      const WordDifferential& dg, const SymBounds& b);

struct IblReport {
    bool mc_pass = true;
    bool square_pass = true;
    bool reduced_preserved = true;
    std::string witness;
};

/* verify Delta_Z^2 = 0 on the sample and that no unit letters appear when acting
 * on reduced inputs */
IblReport ibl_check(const CyclicContext& C, const SymSeries& z, const WordDifferential& dg,
                    const std::vector<SymMonomial>& sample, const SymBounds& b);

}  // namespace stringtop
