#include "stringtop/frobenius.hpp"

#include <algorithm>
#include <sstream>

namespace stringtop {

void elem_add(Element& e, int idx, const Scalar& c) {
    if (c == 0) return;
    auto it = e.find(idx);
    if (it == e.end()) e.emplace(idx, c);
    else {
        it->second += c;
        if (it->second == 0) e.erase(it);
    }
}

FrobeniusAlgebra::FrobeniusAlgebra(std::string name, int top_degree,
                                   std::vector<std::string> basis_names,
                                   std::vector<int> degrees, int unit_index,
                                   std::vector<std::vector<Element>> mult_table,
                                   std::map<int, Scalar> pairing_functional)
    : name_(std::move(name)),
      n_(top_degree),
      names_(std::move(basis_names)),
      degrees_(std::move(degrees)),
      unit_(unit_index),
      mult_(std::move(mult_table)),
      eps_(std::move(pairing_functional)) {
    omega_ = -1;
    for (int i = 0; i < dim(); ++i) {
        if (degrees_[i] == n_) omega_ = i;
        if (degrees_[i] >= 1) reduced_.push_back(i);
    }
    validate();
    build_dual_and_diagonal();
}

std::optional<int> FrobeniusAlgebra::index_of(const std::string& nm) const {
    for (int i = 0; i < dim(); ++i)
        if (names_[i] == nm) return i;
    return std::nullopt;
}

Element FrobeniusAlgebra::mul(const Element& x, const Element& y) const {
    Element out;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y)
            for (const auto& [k, ck] : mult_[i][j])
                elem_add(out, k, ci * cj * ck);
    return out;
}

Scalar FrobeniusAlgebra::eps(int i) const {
    auto it = eps_.find(i);
    return it == eps_.end() ? Scalar(0) : it->second;
}

Scalar FrobeniusAlgebra::eps(const Element& x) const {
    Scalar s(0);
    for (const auto& [i, c] : x) s += c * eps(i);
    return s;
}

Scalar FrobeniusAlgebra::pairing(int i, int j) const {
    Scalar s(0);
    for (const auto& [k, c] : mult_[i][j]) s += c * eps(k);
    return s;
}

Scalar FrobeniusAlgebra::copairing(int p, int q) const {
    auto it = copair_.find({p, q});
    return it == copair_.end() ? Scalar(0) : it->second;
}

Element FrobeniusAlgebra::euler_element() const {
    Element out;
    for (const auto& t : diagonal_.terms)
        for (const auto& [k, c] : mult_[t.left][t.right])
            elem_add(out, k, t.coeff * c);
    return out;
}

int FrobeniusAlgebra::euler_characteristic() const {
    int chi = 0;
    for (int i = 0; i < dim(); ++i) chi += (degrees_[i] % 2 == 0) ? 1 : -1;
    return chi;
}

bool FrobeniusAlgebra::simply_connected_model() const {
    for (int i = 0; i < dim(); ++i)
        if (degrees_[i] == 1) return false;
    return true;
}

void FrobeniusAlgebra::validate() const {
    const int d = dim();
    if ((int)names_.size() != d || (int)mult_.size() != d)
        throw std::invalid_argument("algebra tables sized inconsistently");
    if (unit_ < 0 || unit_ >= d || degrees_[unit_] != 0)
        throw std::invalid_argument("unit must be the degree-0 basis element");
    int dim0 = 0, dimn = 0;
    for (int i = 0; i < d; ++i) {
        if (degrees_[i] < 0 || degrees_[i] > n_)
            throw std::invalid_argument("basis degree outside [0, n]: " + names_[i]);
        if (degrees_[i] == 0) ++dim0;
        if (degrees_[i] == n_) ++dimn;
    }
    if (dim0 != 1) throw std::invalid_argument("degree-0 part must be one-dimensional");
    if (dimn != 1) throw std::invalid_argument("top-degree part must be one-dimensional");
    if (omega_ < 0 || eps(omega_) != 1)
        throw std::invalid_argument("pairing must be normalized with eps(omega) = 1");
    for (const auto& [i, c] : eps_)
        if (degrees_[i] != n_ && c != 0)
            throw std::invalid_argument("eps supported outside top degree");
    // unitality
    for (int i = 0; i < d; ++i) {
        Element l = mul(unit_, i);
        Element r = mul(i, unit_);
        Element e{{i, Scalar(1)}};
        if (l != e || r != e) throw std::invalid_argument("unit axiom fails at " + names_[i]);
    }
    // graded structure, commutativity, associativity
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            for (const auto& [k, c] : mult_[i][j])
                if (degrees_[k] != degrees_[i] + degrees_[j])
                    throw std::invalid_argument("product not degree-homogeneous");
            Element ba;
            Scalar s = sign_pow((long)degrees_[i] * degrees_[j]);
            for (const auto& [k, c] : mult_[j][i]) elem_add(ba, k, s * c);
            if (ba != mult_[i][j])
                throw std::invalid_argument("graded commutativity fails at (" + names_[i] +
                                            ", " + names_[j] + ")");
            for (int k = 0; k < d; ++k) {
                Element lhs, rhs;
                for (const auto& [m, c] : mult_[i][j])
                    for (const auto& [t, c2] : mult_[m][k]) elem_add(lhs, t, c * c2);
                for (const auto& [m, c] : mult_[j][k])
                    for (const auto& [t, c2] : mult_[i][m]) elem_add(rhs, t, c * c2);
                if (lhs != rhs)
                    throw std::invalid_argument("associativity fails at (" + names_[i] + ", " +
                                                names_[j] + ", " + names_[k] + ")");
            }
        }
    // Gram nondegeneracy per complementary degree pair
    for (int deg = 0; deg <= n_; ++deg) {
        std::vector<int> rows, cols;
        for (int i = 0; i < d; ++i) {
            if (degrees_[i] == deg) rows.push_back(i);
            if (degrees_[i] == n_ - deg) cols.push_back(i);
        }
        if (rows.size() != cols.size())
            throw std::invalid_argument("Poincare duality fails: unbalanced dimensions in degree " +
                                        std::to_string(deg));
        if (rows.empty()) continue;
        SparseMatrix g((int)rows.size(), (int)cols.size());
        for (size_t a = 0; a < rows.size(); ++a)
            for (size_t b = 0; b < cols.size(); ++b) g.add((int)a, (int)b, pairing(rows[a], cols[b]));
        if (rank_and_kernel(g).rank != (int)rows.size())
            throw std::invalid_argument("pairing degenerate in degree " + std::to_string(deg));
    }
}

void FrobeniusAlgebra::build_dual_and_diagonal() {
    const int d = dim();
    // e^q solves eps(e_q e^q) = 1, eps(e_r e^q) = 0 for other r of the same degree
    for (int q = 0; q < d; ++q) {
        std::vector<int> rows, cols;
        for (int i = 0; i < d; ++i) {
            if (degrees_[i] == degrees_[q]) rows.push_back(i);
            if (degrees_[i] == n_ - degrees_[q]) cols.push_back(i);
        }
        // solve G x = delta_q by augmenting and taking the kernel of [G | -delta]
        const int m = (int)rows.size();
        SparseMatrix aug(m, m + 1);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) aug.add(a, b, pairing(rows[a], cols[b]));
            if (rows[a] == q) aug.add(a, m, Scalar(-1));
        }
        auto rk = rank_and_kernel(aug);
        // exactly one kernel vector with nonzero last coordinate (G invertible)
        for (const auto& v : rk.kernel) {
            auto it = v.entries().find(m);
            if (it == v.entries().end()) continue;
            Scalar norm = it->second;
            Scalar ds = sign_pow(degrees_[q]);
            for (const auto& [idx, c] : v.entries()) {
                if (idx == m) continue;
                Scalar coeff = c / norm;
                coeff.canonicalize();
                if (coeff != 0)
                    diagonal_.terms.push_back({ds * coeff, q, cols[idx]});
            }
            break;
        }
    }
    std::sort(diagonal_.terms.begin(), diagonal_.terms.end(),
              [](const DiagonalElement::Term& a, const DiagonalElement::Term& b) {
                  return std::tie(a.left, a.right) < std::tie(b.left, b.right);
              });
    for (const auto& t : diagonal_.terms) copair_[{t.left, t.right}] = t.coeff;
}

// ----------------------------------------------------------------- builtins

FrobeniusAlgebra FrobeniusAlgebra::sphere(int n) {
    if (n < 1) throw std::invalid_argument("sphere(n): n >= 1 required");
    std::vector<std::vector<Element>> mult(2, std::vector<Element>(2));
    mult[0][0] = {{0, Scalar(1)}};
    mult[0][1] = {{1, Scalar(1)}};
    mult[1][0] = {{1, Scalar(1)}};
    mult[1][1] = {};
    return FrobeniusAlgebra("sphere:" + std::to_string(n), n, {"1", "w"}, {0, n}, 0,
                            std::move(mult), {{1, Scalar(1)}});
}

FrobeniusAlgebra FrobeniusAlgebra::cp(int m) {
    if (m < 1) throw std::invalid_argument("cp(m): m >= 1 required");
    const int d = m + 1;
    std::vector<std::string> names;
    std::vector<int> degs;
    for (int i = 0; i <= m; ++i) {
        names.push_back(i == 0 ? "1" : (i == 1 ? "h" : "h" + std::to_string(i)));
        degs.push_back(2 * i);
    }
    std::vector<std::vector<Element>> mult(d, std::vector<Element>(d));
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j)
            if (i + j <= m) mult[i][j] = {{i + j, Scalar(1)}};
    return FrobeniusAlgebra("cp:" + std::to_string(m), 2 * m, std::move(names), std::move(degs),
                            0, std::move(mult), {{m, Scalar(1)}});
}

FrobeniusAlgebra FrobeniusAlgebra::connected_sum(int g, int n) {
    if (g < 1) throw std::invalid_argument("connected_sum(g,n): g >= 1 required");
    if (n < 1) throw std::invalid_argument("connected_sum(g,n): n >= 1 required");
    const int d = 2 * g + 2;
    const int W = d - 1;
    std::vector<std::string> names{"1"};
    std::vector<int> degs{0};
    for (int i = 1; i <= g; ++i) { names.push_back("x" + std::to_string(i)); degs.push_back(n); }
    for (int i = 1; i <= g; ++i) { names.push_back("y" + std::to_string(i)); degs.push_back(n); }
    names.push_back("w");
    degs.push_back(2 * n);
    std::vector<std::vector<Element>> mult(d, std::vector<Element>(d));
    for (int i = 0; i < d; ++i) {
        mult[0][i] = {{i, Scalar(1)}};
        mult[i][0] = {{i, Scalar(1)}};
    }
    mult[0][0] = {{0, Scalar(1)}};
    Scalar s = sign_pow(n);
    for (int i = 1; i <= g; ++i) {
        mult[i][g + i] = {{W, Scalar(1)}};
        mult[g + i][i] = {{W, s}};
    }
    return FrobeniusAlgebra("cs:" + std::to_string(g) + "," + std::to_string(n), 2 * n,
                            std::move(names), std::move(degs), 0, std::move(mult),
                            {{W, Scalar(1)}});
}

FrobeniusAlgebra FrobeniusAlgebra::torus(int n) {
    if (n < 1) throw std::invalid_argument("torus(n): n >= 1 required");
    // exterior algebra on x1..xn, subsets as basis
    std::vector<std::vector<int>> subsets;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) s.push_back(i);
        subsets.push_back(s);
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    const int d = (int)subsets.size();
    std::map<std::vector<int>, int> idx;
    std::vector<std::string> names;
    std::vector<int> degs;
    for (int i = 0; i < d; ++i) {
        idx[subsets[i]] = i;
        std::string nm = subsets[i].empty() ? "1" : "x";
        for (int t : subsets[i]) nm += std::to_string(t + 1);
        names.push_back(nm);
        degs.push_back((int)subsets[i].size());
    }
    std::vector<std::vector<Element>> mult(d, std::vector<Element>(d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            std::vector<int> merged = subsets[a];
            bool dis = true;
            for (int t : subsets[b]) {
                if (std::find(merged.begin(), merged.end(), t) != merged.end()) { dis = false; break; }
                merged.push_back(t);
            }
            if (!dis) continue;
            // sort, counting inversions (all letters odd)
            int inv = 0;
            for (size_t i = 0; i < merged.size(); ++i)
                for (size_t j = i + 1; j < merged.size(); ++j)
                    if (merged[i] > merged[j]) ++inv;
            std::sort(merged.begin(), merged.end());
            mult[a][b] = {{idx[merged], sign_pow(inv)}};
        }
    std::vector<int> top;
    for (int i = 0; i < n; ++i) top.push_back(i);
    return FrobeniusAlgebra("torus:" + std::to_string(n), n, std::move(names), std::move(degs), 0,
                            std::move(mult), {{idx[top], Scalar(1)}});
}

FrobeniusAlgebra FrobeniusAlgebra::product(const FrobeniusAlgebra& A, const FrobeniusAlgebra& B) {
    const int da = A.dim(), db = B.dim();
    const int d = da * db;
    auto pack = [db](int i, int j) { return i * db + j; };
    std::vector<std::string> names(d);
    std::vector<int> degs(d);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) {
            names[pack(i, j)] = A.basis_name(i) + "*" + B.basis_name(j);
            degs[pack(i, j)] = A.degree(i) + B.degree(j);
        }
    std::vector<std::vector<Element>> mult(d, std::vector<Element>(d));
    for (int i1 = 0; i1 < da; ++i1)
        for (int j1 = 0; j1 < db; ++j1)
            for (int i2 = 0; i2 < da; ++i2)
                for (int j2 = 0; j2 < db; ++j2) {
                    Scalar s = sign_pow((long)B.degree(j1) * A.degree(i2));
                    Element& out = mult[pack(i1, j1)][pack(i2, j2)];
                    for (const auto& [ka, ca] : A.mul(i1, i2))
                        for (const auto& [kb, cb] : B.mul(j1, j2))
                            elem_add(out, pack(ka, kb), s * ca * cb);
                }
    std::map<int, Scalar> eps;
    eps[pack(A.omega(), B.omega())] = Scalar(1);
    return FrobeniusAlgebra("product(" + A.name() + "," + B.name() + ")",
                            A.top_degree() + B.top_degree(), std::move(names), std::move(degs),
                            pack(A.unit(), B.unit()), std::move(mult), std::move(eps));
}

FrobeniusAlgebra FrobeniusAlgebra::builtin(const std::string& key) {
    auto colon = key.find(':');
    std::string kind = colon == std::string::npos ? key : key.substr(0, colon);
    std::string args = colon == std::string::npos ? "" : key.substr(colon + 1);
    auto parse2 = [&]() {
        auto comma = args.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("builtin " + kind + " expects two parameters");
        return std::pair<int, int>{std::stoi(args.substr(0, comma)),
                                   std::stoi(args.substr(comma + 1))};
    };
    if (kind == "sphere") return sphere(std::stoi(args));
    if (kind == "torus") return torus(std::stoi(args));
    if (kind == "cp") return cp(std::stoi(args));
    if (kind == "connected_sum" || kind == "cs") {
        auto [g, n] = parse2();
        return connected_sum(g, n);
    }
    if (kind == "product") {
        auto comma = args.rfind(';');
        if (comma == std::string::npos)
            throw std::invalid_argument("product expects 'product:KEY1;KEY2'");
        return product(builtin(args.substr(0, comma)), builtin(args.substr(comma + 1)));
    }
    throw std::invalid_argument("unknown builtin algebra: " + key);
}

}  // namespace stringtop
