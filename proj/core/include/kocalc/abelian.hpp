#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kocalc/rational.hpp"

namespace kocalc {

/// Dense matrix over Z with exact entries.
class IntMat {
public:
    IntMat() = default;
    IntMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows, std::vector<Int>(cols, 0)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Int& at(size_t r, size_t c) { return a_[r][c]; }
    const Int& at(size_t r, size_t c) const { return a_[r][c]; }

    static IntMat identity(size_t n);
    IntMat times(const IntMat& o) const;
    std::vector<Int> apply(const std::vector<Int>& x) const;

    void swap_rows(size_t i, size_t j);
    void swap_cols(size_t i, size_t j);
    void add_row_multiple(size_t dst, size_t src, const Int& c);  // row dst += c * row src
    void add_col_multiple(size_t dst, size_t src, const Int& c);
    void negate_row(size_t i);
    void negate_col(size_t i);

    std::string str() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<Int>> a_;
};

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
struct SmithForm {
    IntMat d, u, v;
    std::vector<Int> diagonal() const;
};

SmithForm smith_normal_form(const IntMat& a);

/// Basis of the integer kernel lattice {x : Ax = 0}, as columns.
std::vector<std::vector<Int>> kernel_lattice(const IntMat& a);

/// One integer solution of Ax = b, if any.
std::optional<std::vector<Int>> solve(const IntMat& a, const std::vector<Int>& b);

/// Column-style Hermite reduction: returns a basis (as columns) of the
/// lattice spanned by the given columns.
std::vector<std::vector<Int>> lattice_basis(const std::vector<std::vector<Int>>& spanning,
                                            size_t dim);

/// Finitely generated abelian group in normal form. orders[i] is the order of
/// the i-th cyclic factor, with 0 meaning an infinite-cyclic Z factor.
struct FgGroup {
    std::vector<Int> orders;
    std::vector<std::string> labels;  // one per factor, may be empty

    static FgGroup zero() { return {}; }
    static FgGroup free(unsigned rank);

    bool is_zero() const { return orders.empty(); }
    unsigned free_rank() const;
    std::vector<Int> torsion() const;
    std::string str() const;

    friend bool operator==(const FgGroup& a, const FgGroup& b) { return a.orders == b.orders; }
};

/// The subquotient ker(out)/im(in) of a group A in normal form.
///   A      : orders (0 = free factor)
///   out    : matrix of a homomorphism A -> B, entries in B's coordinates
///   b_orders : orders of B (out must be well defined: out*diag(a_orders)=0 mod B)
///   images : incoming image vectors, in A's coordinates
/// Throws std::logic_error if an image vector is not a cycle (d after d != 0).
FgGroup subquotient(const FgGroup& a, const IntMat& out, const std::vector<Int>& b_orders,
                    const std::vector<std::vector<Int>>& images);

/// Matrix over F2 with Gaussian-elimination services.
class F2Mat {
public:
    F2Mat() = default;
    F2Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows, std::vector<uint8_t>(cols, 0)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    uint8_t& at(size_t r, size_t c) { return a_[r][c]; }
    uint8_t at(size_t r, size_t c) const { return a_[r][c]; }

    F2Mat times(const F2Mat& o) const;
    std::vector<uint8_t> apply(const std::vector<uint8_t>& x) const;

    size_t rank() const;
    std::vector<std::vector<uint8_t>> kernel_basis() const;
    std::optional<std::vector<uint8_t>> solve(const std::vector<uint8_t>& b) const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<std::vector<uint8_t>> a_;
};

}  // namespace kocalc
