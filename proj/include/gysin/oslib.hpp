#pragma once

#include "gysin/exactq.hpp"
#include "gysin/matroid.hpp"
#include "gysin/polynomial.hpp"

#include <map>
#include <tuple>

namespace gysin {

// Element of the Orlik-Solomon algebra, supported on the per-flat nbc
// bases: (flat id, basis index) -> coefficient.
struct OSElement {
    std::map<std::pair<int, int>, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    void add(int flat, int idx, const Rational& c);
    OSElement scaled(const Rational& c) const;
    OSElement plus(const OSElement& other) const;
    bool operator==(const OSElement& o) const { return terms == o.terms; }
};

// The graded algebra A(L) with its stratum decomposition: per-flat nbc
// bases and a rewrite table sending every independent monomial to the nbc
// span of its flat.
struct OSAlgebra {
    Arrangement arr;
    FlatPoset poset;
    std::vector<Mask> circuit_list;

    std::vector<std::vector<Mask>> nbc;                       // per flat, lex order
    std::vector<std::unordered_map<Mask, int>> nbc_index;     // per flat
    std::vector<std::unordered_map<Mask, SparseVec>> rewrite; // per flat: independent mask -> nbc combo

    int flat_of_independent(Mask I) const;  // closure lookup
    // e_I reduced to the nbc basis of its flat; I must be independent
    // with a nonempty stratum.
    const SparseVec& reduce_monomial(int flat, Mask I) const;

    OSElement monomial(Mask I) const;  // 0 if null or dependent
    int dim_flat(int flat) const { return static_cast<int>(nbc[flat].size()); }
    int dim_degree(int k) const;
    int total_dim() const;
};

OSAlgebra build_os(const Arrangement& arr);

OSElement os_product(const OSAlgebra& os, const OSElement& a, const OSElement& b);
OSElement os_delta(const OSAlgebra& os, const OSElement& a);
// Single delta component A_S -> A_T of a basis monomial.
void os_delta_basis(const OSAlgebra& os, int flat, int idx, OSElement& out);

Polynomial poincare_polynomial(const OSAlgebra& os);

// Deletion and restriction with respect to the last hypersurface.
struct DeletionRestriction {
    OSAlgebra deleted;     // L' on labels 1..l-1
    OSAlgebra restricted;  // L'' on the distinct nonempty strata L_l cap L_i
    std::vector<int> lambda;  // label i (0-based, i<l-1) -> label of L'' (0-based), -1 if empty

    // i : A_k(L') -> A_k(L), j : A_k(L) -> A_{k-1}(L'') in the nbc bases.
    SparseMatrix inclusion_matrix(const OSAlgebra& os, int k) const;
    SparseMatrix restriction_matrix(const OSAlgebra& os, int k) const;
};

DeletionRestriction deletion_restriction(const OSAlgebra& os);

// Small dense integer matrix of vanishing multiplicities.
struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<std::vector<Integer>> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(r, std::vector<Integer>(c, Integer(0))) {}
    Integer minor_det(const std::vector<int>& ri, const std::vector<int>& ci) const;
    IntMatrix multiply(const IntMatrix& other) const;
};

// Graded algebra map A(L') -> A(L) determined by e'_j -> sum_i m_ij e_i,
// stored as the image of every source basis monomial.
struct OSMap {
    std::map<std::pair<int, int>, OSElement> image;  // source (flat, idx) -> target element

    OSElement apply(const OSElement& x) const;
};

// m has target.arr.size rows and source.arr.size columns, entries >= 0.
OSMap os_functorial_map(const OSAlgebra& source, const OSAlgebra& target, const IntMatrix& m);

}  // namespace gysin
