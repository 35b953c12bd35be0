#pragma once

#include "stringtop/frobenius.hpp"

#include <compare>

namespace stringtop {

/* (a0; a1,...,ak): head first, letters in the augmentation ideal */
struct HochschildWord {
    int head = 0;
    std::vector<int> letters;
    auto operator<=>(const HochschildWord&) const = default;
};

using HochschildChain = std::map<HochschildWord, Scalar>;
using HochschildTensor = std::map<std::pair<HochschildWord, HochschildWord>, Scalar>;

void chain_add(HochschildChain& c, const HochschildWord& w, const Scalar& v);
HochschildChain chain_scale(const HochschildChain& c, const Scalar& s);
HochschildChain chain_sum(const HochschildChain& a, const HochschildChain& b);

int word_degree(const FrobeniusAlgebra& A, const HochschildWord& w);
int word_weight(const HochschildWord& w);

/* d_H: merges of adjacent letters, head merge, wrap merge; degree +1 */
HochschildChain hochschild_differential(const FrobeniusAlgebra& A, const HochschildChain& c);
/* projection of d_H to the weight >= 1 quotient complex */
HochschildChain hochschild_differential_reduced(const FrobeniusAlgebra& A, const HochschildChain& c);

/* Connes' rotation operator; degree -1 */
HochschildChain connes_B(const FrobeniusAlgebra& A, const HochschildChain& c);

/* shuffle product of the commutative Hochschild complex */
HochschildChain shuffle_product(const FrobeniusAlgebra& A, const HochschildChain& c1,
                                const HochschildChain& c2);

/* chain-level string product (loop coproduct formula): degree n-1, metadata */
HochschildChain string_product(const FrobeniusAlgebra& A, const HochschildChain& c1,
                               const HochschildChain& c2);

/* chain-level string coproduct (loop product formula): degree n, metadata */
HochschildTensor string_coproduct(const FrobeniusAlgebra& A, const HochschildChain& c);

// ---------------------------------------------------------------------------
// cyclic words on the algebra side (letters in the reduced basis, shift [1])

struct CyclicWordA {
    std::vector<int> letters;  // canonical rotation representative
    auto operator<=>(const CyclicWordA&) const = default;
};

using CyclicChainA = std::map<CyclicWordA, Scalar>;

/* canonicalize: lex-least rotation with Koszul rotation signs; zero classes dropped */
void cyclicA_add(const FrobeniusAlgebra& A, CyclicChainA& c, const std::vector<int>& letters,
                 const Scalar& v);

/* natural projection: unit heads to cyclic classes, the rest to zero */
CyclicChainA pr(const FrobeniusAlgebra& A, const HochschildChain& c);
/* sum of rotations with unit head */
HochschildChain iota(const FrobeniusAlgebra& A, const CyclicWordA& w);
HochschildChain iota(const FrobeniusAlgebra& A, const CyclicChainA& c);
/* cyclic differential on Cyc(A-bar): adjacent merges around the circle */
CyclicChainA cyclic_differential_alg(const FrobeniusAlgebra& A, const CyclicChainA& c);

// ---------------------------------------------------------------------------
// negative cyclic complex: polynomials in u (deg 2) with Hochschild coefficients

struct NegativeCyclicChain {
    int u_truncation = 4;
    std::map<int, HochschildChain> coeffs;  // u-power -> chain

    void add(int upow, const HochschildWord& w, const Scalar& v);
};

/* d_H + u B, truncated at c.u_truncation */
NegativeCyclicChain negative_cyclic_differential(const FrobeniusAlgebra& A,
                                                 const NegativeCyclicChain& c);

}  // namespace stringtop
