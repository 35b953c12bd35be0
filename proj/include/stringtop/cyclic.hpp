#pragma once

#include "stringtop/frobenius.hpp"

namespace stringtop {

/* Cyclic words in the dual space: letter q stands for e_q^*, shifted degree
 * ell(q) = 1 - |e_q|. Canonical representative = lex-least signed rotation. */
struct CyclicWord {
    std::vector<int> letters;
    auto operator<=>(const CyclicWord&) const = default;
    bool empty() const { return letters.empty(); }
    size_t size() const { return letters.size(); }
};

using CyclicChain = std::map<CyclicWord, Scalar>;
using CyclicTensor = std::map<std::pair<CyclicWord, CyclicWord>, Scalar>;

/* context: which letters are allowed and the pairing used by the operations */
class CyclicContext {
public:
    /* reduced: letters restricted to the augmentation ideal (Cyc(H-bar*)) */
    CyclicContext(const FrobeniusAlgebra& A, bool reduced);

    const FrobeniusAlgebra& algebra() const { return *A_; }
    bool reduced() const { return reduced_; }
    int ell(int q) const { return 1 - A_->degree(q); }
    int word_degree(const CyclicWord& w) const;
    /* copairing <e_p^*, e_q^*> = coefficient of e_p (x) e_q in the diagonal */
    Scalar pairing(int p, int q) const { return A_->copairing(p, q); }
    const std::vector<int>& letters() const { return letters_; }
    bool allowed(int q) const;

private:
    const FrobeniusAlgebra* A_;
    bool reduced_;
    std::vector<int> letters_;
};

/* canonicalize and add; words with a sign-reversing rotation are zero */
void cyclic_add(const CyclicContext& C, CyclicChain& c, const std::vector<int>& letters,
                const Scalar& v);
void tensor_add(const CyclicContext& C, CyclicTensor& t, const std::vector<int>& l1,
                const std::vector<int>& l2, const Scalar& v);

CyclicChain cyclic_scale(const CyclicChain& c, const Scalar& s);
CyclicChain cyclic_sum(const CyclicChain& a, const CyclicChain& b);

/* degree-(n-2) Lie bracket on cyclic words */
CyclicChain bracket(const CyclicContext& C, const CyclicChain& c1, const CyclicChain& c2);
/* degree-(n-2) Lie cobracket (antisymmetrized via the ordered pair sum) */
CyclicTensor cobracket(const CyclicContext& C, const CyclicChain& c);

/* cubic element z of the CEG construction, over the full basis */
CyclicChain ceg_z(const FrobeniusAlgebra& A);
/* cyclic differential on Cyc(H*) dual to the product (direct implementation) */
CyclicChain ceg_differential_direct(const CyclicContext& C, const CyclicChain& c);
/* same map as [z, -]; the two must agree exactly */
CyclicChain ceg_differential_bracket(const CyclicContext& C, const CyclicChain& c);

// ---------------------------------------------------------------------------
// string bracket / cobracket on cohomology-side cyclic words (thm-level formulas)

/* Cohomology-side cyclic words: letter q stands for e_q, shifted degree |e_q|-1.
 * Reuses CyclicWord with a separate context. */
class CohCyclicContext {
public:
    explicit CohCyclicContext(const FrobeniusAlgebra& A) : A_(&A) {}
    const FrobeniusAlgebra& algebra() const { return *A_; }
    int ell(int q) const { return A_->degree(q) - 1; }
    int word_degree(const CyclicWord& w) const;

private:
    const FrobeniusAlgebra* A_;
};

void coh_cyclic_add(const CohCyclicContext& C, CyclicChain& c, const std::vector<int>& letters,
                    const Scalar& v);

/* one-loop functional z1: degree-homogeneous linear functional on cyclic words */
class OneLoopFunctional {
public:
    OneLoopFunctional() = default;  // zero functional
    static OneLoopFunctional zero() { return {}; }
    /* indicator functional of a word class (for tests) */
    static OneLoopFunctional indicator(const CohCyclicContext& C, const std::vector<int>& word,
                                       const Scalar& value);
    Scalar operator()(const CohCyclicContext& C, const std::vector<int>& letters) const;
    bool is_zero() const { return values_.empty(); }
    std::optional<int> degree;  // declared degree; checked where relevant

    std::map<CyclicWord, Scalar> values_;
};

/* sum over rotations and split points with dual-basis insertion; outputs
 * reduced (unit letters kill a factor) */
CyclicTensor string_bracket(const CohCyclicContext& C, const CyclicWord& w);

/* first term (alpha e_i beta | e^i) through pr, plus the two z1 corrections */
CyclicChain string_cobracket(const CohCyclicContext& C, const CyclicWord& alpha,
                             const CyclicWord& beta, const OneLoopFunctional& z1);

// ---------------------------------------------------------------------------
// axiom suites

struct AxiomReport {
    bool pass = true;
    std::string witness;  // first failing identity, if any
    void fail(const std::string& w) {
        if (pass) witness = w;
        pass = false;
    }
};

/* antisymmetry, Jacobi, co-antisymmetry, co-Jacobi, Drinfeld compatibility
 * (BV cross-term form), involutivity on the given sample of words */
AxiomReport involutivity_check(const CyclicContext& C, const std::vector<CyclicWord>& sample);

/* exhaustive canonical words with letters in C, lengths 1..max_len */
std::vector<CyclicWord> all_cyclic_words(const CyclicContext& C, int max_len);

}  // namespace stringtop
