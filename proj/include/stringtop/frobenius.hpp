#pragma once

#include "stringtop/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stringtop {

/* element of A as a sparse coefficient vector over the basis */
using Element = std::map<int, Scalar>;

void elem_add(Element& e, int idx, const Scalar& c);

/* D = sum coeff * (left (x) right) */
struct DiagonalElement {
    struct Term {
        Scalar coeff;
        int left, right;
    };
    std::vector<Term> terms;
};

/* Finite-dimensional graded commutative Frobenius algebra, basis-presented.
 * Degree-0 part is spanned by the unit, degree-n part by omega with eps(omega)=1. */
class FrobeniusAlgebra {
public:
    FrobeniusAlgebra(std::string name, int top_degree, std::vector<std::string> basis_names,
                     std::vector<int> degrees, int unit_index,
                     std::vector<std::vector<Element>> mult_table,
                     std::map<int, Scalar> pairing_functional);

    // catalog: sphere(n), torus(n), cp(m), connected_sum(g,n), product(A,B)
    static FrobeniusAlgebra sphere(int n);
    static FrobeniusAlgebra torus(int n);
    static FrobeniusAlgebra cp(int m);
    static FrobeniusAlgebra connected_sum(int g, int n);
    static FrobeniusAlgebra product(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b);
    static FrobeniusAlgebra builtin(const std::string& key);  // "sphere:3", "cs:1,3", ...

    const std::string& name() const { return name_; }
    int dim() const { return (int)degrees_.size(); }
    int top_degree() const { return n_; }
    int unit() const { return unit_; }
    int omega() const { return omega_; }
    int degree(int i) const { return degrees_[i]; }
    const std::string& basis_name(int i) const { return names_[i]; }
    std::optional<int> index_of(const std::string& name) const;

    const Element& mul(int i, int j) const { return mult_[i][j]; }
    Element mul(const Element& x, const Element& y) const;
    Scalar eps(int i) const;                 // functional on the top degree
    Scalar eps(const Element& x) const;
    Scalar pairing(int i, int j) const;      // eps(e_i e_j)

    /* reduced basis: indices with degree >= 1 (the augmentation ideal) */
    const std::vector<int>& reduced_basis() const { return reduced_; }

    const DiagonalElement& diagonal() const { return diagonal_; }
    /* copairing component: coefficient of e_p (x) e_q in the diagonal */
    Scalar copairing(int p, int q) const;
    Element euler_element() const;           // m(D) = chi * omega
    int euler_characteristic() const;

    bool simply_connected_model() const;     // no degree-1 classes

    /* throws std::invalid_argument naming the violated invariant */
    void validate() const;

private:
    void build_dual_and_diagonal();

    std::string name_;
    int n_ = 0;
    std::vector<std::string> names_;
    std::vector<int> degrees_;
    int unit_ = 0, omega_ = 0;
    std::vector<std::vector<Element>> mult_;
    std::map<int, Scalar> eps_;
    std::vector<int> reduced_;
    DiagonalElement diagonal_;
    std::map<std::pair<int, int>, Scalar> copair_;
};

}  // namespace stringtop
