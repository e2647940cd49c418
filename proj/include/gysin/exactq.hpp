#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gysin {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// "p/q" or "p"; always canonical (lowest terms, positive denominator).
std::string rat_to_string(const Rational& r);
Rational rat_from_string(std::string_view s);

// Sparse vector: (index, value) pairs sorted by index, no zero values.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sv_normalize(SparseVec v);
SparseVec sv_scale(const SparseVec& v, const Rational& a);
// x + a*y
SparseVec sv_axpy(const SparseVec& x, const Rational& a, const SparseVec& y);
bool sv_equal(const SparseVec& a, const SparseVec& b);
std::vector<Rational> sv_dense(const SparseVec& v, int n);

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols);
    SparseMatrix(int rows, int cols, const std::map<std::pair<int, int>, Rational>& entries);
    static SparseMatrix from_rows(int rows, int cols, std::vector<SparseVec> r);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const SparseVec& row(int i) const { return row_[i]; }
    Rational entry(int i, int j) const;
    long long nonzeros() const;

    SparseMatrix transpose() const;
    SparseMatrix multiply(const SparseMatrix& other) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    bool operator==(const SparseMatrix& other) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<SparseVec> row_;
};

// Helper for assembling a matrix entry by entry; values accumulate.
class MatrixBuilder {
public:
    MatrixBuilder(int rows, int cols) : rows_(rows), cols_(cols) {}
    void add(int i, int j, const Rational& v);
    SparseMatrix build() const;

private:
    int rows_, cols_;
    std::map<std::pair<int, int>, Rational> entries_;
};

struct RrefResult {
    int rank = 0;
    std::vector<SparseVec> rows;  // fully reduced, pivot coefficient 1
    std::vector<int> pivots;      // pivot column of each row, increasing
    std::vector<int> free_cols;   // non-pivot columns, increasing
};

// Reduced row echelon form. The forward pass is fraction-free: rows are
// cleared to primitive integer vectors and updated by cross-multiplication
// with a gcd division, so all intermediates are integers; the single
// rational division per row happens at the end. Pivots are chosen
// left-to-right (smallest column index first); RREF is canonical, so the
// output does not depend on internal row choices.
RrefResult rref(const SparseMatrix& m);

int rank(const SparseMatrix& m);
int cokernel_dim(const SparseMatrix& m);

// Basis of the right kernel, one vector per free column in increasing
// order; vector k has a unit in its free coordinate and zeros in the
// other free coordinates (reduced column-echelon shape).
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);

// Incremental row-space echelon with optional coordinate tracking:
// tracked insertions get unit coordinates, and reduce() reports the
// combination of tracked vectors appearing in the input.
class EchelonBasis {
public:
    explicit EchelonBasis(int width) : width_(width) {}

    // Returns true if v increased the rank.
    bool insert(const SparseVec& v, bool track = false);
    // Remainder of v after reduction; if coords is non-null it receives
    // the coefficients over the tracked insertions.
    SparseVec reduce(const SparseVec& v, std::vector<Rational>* coords = nullptr) const;
    bool contains(const SparseVec& v) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    int tracked_count() const { return tracked_; }
    int width() const { return width_; }

private:
    struct Row {
        SparseVec v;  // pivot coefficient 1
        std::vector<std::pair<int, Rational>> coords;  // over tracked indices
        int pivot;
    };
    int width_;
    int tracked_ = 0;
    std::vector<Row> rows_;
};

}  // namespace gysin
