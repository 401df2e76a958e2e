#include "kocalc/abelian.hpp"

#include <algorithm>
#include <stdexcept>

namespace kocalc {

IntMat IntMat::identity(size_t n) {
    IntMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat IntMat::times(const IntMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMat::times: shape mismatch");
    IntMat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            if (a_[i][k] == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a_[i][k] * o.at(k, j);
        }
    return r;
}

std::vector<Int> IntMat::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("IntMat::apply: shape mismatch");
    std::vector<Int> r(rows_, 0);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (a_[i][j] != 0) r[i] += a_[i][j] * x[j];
    return r;
}

void IntMat::swap_rows(size_t i, size_t j) { std::swap(a_[i], a_[j]); }
void IntMat::swap_cols(size_t i, size_t j) {
    for (size_t r = 0; r < rows_; ++r) std::swap(a_[r][i], a_[r][j]);
}
void IntMat::add_row_multiple(size_t dst, size_t src, const Int& c) {
    for (size_t j = 0; j < cols_; ++j) a_[dst][j] += c * a_[src][j];
}
void IntMat::add_col_multiple(size_t dst, size_t src, const Int& c) {
    for (size_t r = 0; r < rows_; ++r) a_[r][dst] += c * a_[r][src];
}
void IntMat::negate_row(size_t i) {
    for (auto& x : a_[i]) x = -x;
}
void IntMat::negate_col(size_t i) {
    for (size_t r = 0; r < rows_; ++r) a_[r][i] = -a_[r][i];
}

std::string IntMat::str() const {
    std::string s;
    for (size_t i = 0; i < rows_; ++i) {
        s += "[";
        for (size_t j = 0; j < cols_; ++j) {
            if (j) s += " ";
            s += a_[i][j].str();
        }
        s += "]\n";
    }
    return s;
}

std::vector<Int> SmithForm::diagonal() const {
    std::vector<Int> out;
    size_t n = std::min(d.rows(), d.cols());
    for (size_t i = 0; i < n; ++i) out.push_back(d.at(i, i));
    return out;
}

SmithForm smith_normal_form(const IntMat& a) {
    SmithForm f{a, IntMat::identity(a.rows()), IntMat::identity(a.cols())};
    IntMat& d = f.d;
    size_t n = std::min(d.rows(), d.cols());

    for (size_t t = 0; t < n; ++t) {
        // find a pivot: smallest nonzero |entry| in the lower right block
        while (true) {
            size_t pr = t, pc = t;
            Int best = 0;
            for (size_t i = t; i < d.rows(); ++i)
                for (size_t j = t; j < d.cols(); ++j) {
                    Int v = d.at(i, j) < 0 ? Int(-d.at(i, j)) : d.at(i, j);
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
            if (best == 0) break;  // block is zero, done
            if (pr != t) {
                d.swap_rows(t, pr);
                f.u.swap_rows(t, pr);
            }
            if (pc != t) {
                d.swap_cols(t, pc);
                f.v.swap_cols(t, pc);
            }
            if (d.at(t, t) < 0) {
                d.negate_row(t);
                f.u.negate_row(t);
            }
            // clear row and column t
            bool dirty = false;
            for (size_t i = t + 1; i < d.rows(); ++i) {
                Int q = d.at(i, t) / d.at(t, t);
                if (q != 0) {
                    d.add_row_multiple(i, t, -q);
                    f.u.add_row_multiple(i, t, -q);
                }
                if (d.at(i, t) != 0) dirty = true;
            }
            for (size_t j = t + 1; j < d.cols(); ++j) {
                Int q = d.at(t, j) / d.at(t, t);
                if (q != 0) {
                    d.add_col_multiple(j, t, -q);
                    f.v.add_col_multiple(j, t, -q);
                }
                if (d.at(t, j) != 0) dirty = true;
            }
            if (!dirty) {
                // enforce divisibility d_t | entries below-right
                bool divides_all = true;
                for (size_t i = t + 1; i < d.rows() && divides_all; ++i)
                    for (size_t j = t + 1; j < d.cols() && divides_all; ++j)
                        if (d.at(i, j) % d.at(t, t) != 0) {
                            d.add_row_multiple(t, i, 1);
                            f.u.add_row_multiple(t, i, 1);
                            divides_all = false;
                        }
                if (divides_all) break;
            }
        }
        if (d.at(t, t) == 0) break;
    }
    return f;
}

std::vector<std::vector<Int>> kernel_lattice(const IntMat& a) {
    if (a.cols() == 0) return {};
    if (a.rows() == 0) {
        std::vector<std::vector<Int>> basis;
        for (size_t j = 0; j < a.cols(); ++j) {
            std::vector<Int> e(a.cols(), 0);
            e[j] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    SmithForm f = smith_normal_form(a);
    std::vector<std::vector<Int>> basis;
    for (size_t j = 0; j < a.cols(); ++j) {
        bool in_kernel = j >= std::min(a.rows(), a.cols()) || f.d.at(j, j) == 0;
        if (!in_kernel) continue;
        std::vector<Int> col(a.cols());
        for (size_t i = 0; i < a.cols(); ++i) col[i] = f.v.at(i, j);
        basis.push_back(col);
    }
    return basis;
}

std::optional<std::vector<Int>> solve(const IntMat& a, const std::vector<Int>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
    if (a.cols() == 0) {
        for (const auto& x : b)
            if (x != 0) return std::nullopt;
        return std::vector<Int>{};
    }
    SmithForm f = smith_normal_form(a);
    std::vector<Int> ub = f.u.apply(b);
    std::vector<Int> y(a.cols(), 0);
    size_t n = std::min(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        Int di = i < n ? f.d.at(i, i) : Int(0);
        if (di == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % di != 0) return std::nullopt;
            if (i < a.cols()) y[i] = ub[i] / di;
        }
    }
    return f.v.apply(y);
}

std::vector<std::vector<Int>> lattice_basis(const std::vector<std::vector<Int>>& spanning,
                                            size_t dim) {
    if (spanning.empty()) return {};
    IntMat m(dim, spanning.size());
    for (size_t j = 0; j < spanning.size(); ++j)
        for (size_t i = 0; i < dim; ++i) m.at(i, j) = spanning[j][i];
    // Column HNF via the Smith machinery: basis = nonzero columns of M*V'
    // where V' reduces columns; simplest correct route is integer column
    // elimination.
    size_t pivot_row = 0, pivot_col = 0;
    while (pivot_row < dim && pivot_col < m.cols()) {
        // find column with smallest nonzero entry in pivot_row among >= pivot_col
        size_t best = m.cols();
        for (size_t j = pivot_col; j < m.cols(); ++j)
            if (m.at(pivot_row, j) != 0 &&
                (best == m.cols() ||
                 abs(m.at(pivot_row, j)) < abs(m.at(pivot_row, best))))
                best = j;
        if (best == m.cols()) {
            ++pivot_row;
            continue;
        }
        m.swap_cols(pivot_col, best);
        // reduce other columns against pivot_col until row is cleared
        while (true) {
            bool cleared = true;
            for (size_t j = pivot_col + 1; j < m.cols(); ++j) {
                if (m.at(pivot_row, j) == 0) continue;
                Int q = m.at(pivot_row, j) / m.at(pivot_row, pivot_col);
                m.add_col_multiple(j, pivot_col, -q);
                if (m.at(pivot_row, j) != 0) {
                    m.swap_cols(pivot_col, j);
                    cleared = false;
                }
            }
            if (cleared) break;
        }
        ++pivot_row;
        ++pivot_col;
    }
    std::vector<std::vector<Int>> basis;
    for (size_t j = 0; j < m.cols(); ++j) {
        std::vector<Int> col(dim);
        bool nonzero = false;
        for (size_t i = 0; i < dim; ++i) {
            col[i] = m.at(i, j);
            nonzero = nonzero || col[i] != 0;
        }
        if (nonzero) basis.push_back(col);
    }
    return basis;
}

FgGroup FgGroup::free(unsigned rank) {
    FgGroup g;
    g.orders.assign(rank, 0);
    return g;
}

unsigned FgGroup::free_rank() const {
    unsigned r = 0;
    for (const auto& d : orders)
        if (d == 0) ++r;
    return r;
}

std::vector<Int> FgGroup::torsion() const {
    std::vector<Int> t;
    for (const auto& d : orders)
        if (d >= 2) t.push_back(d);
    return t;
}

std::string FgGroup::str() const {
    if (orders.empty()) return "0";
    std::string s;
    for (const auto& d : orders) {
        if (!s.empty()) s += " + ";
        s += d == 0 ? "Z" : "Z/" + d.str();
    }
    return s;
}

FgGroup subquotient(const FgGroup& a, const IntMat& out, const std::vector<Int>& b_orders,
                    const std::vector<std::vector<Int>>& images) {
    size_t n = a.orders.size();
    if (out.cols() != n && !(out.rows() == 0 && out.cols() == 0))
        throw std::invalid_argument("subquotient: out matrix shape mismatch");
    size_t rb = b_orders.size();

    // kernel of the induced map: x with out*x = 0 in B, x taken mod A-orders.
    // Solve [out | diag(b_orders)] (x, y) = 0 and project to x.
    std::vector<std::vector<Int>> kernel_cols;
    if (rb == 0 || out.rows() == 0) {
        for (size_t j = 0; j < n; ++j) {
            std::vector<Int> e(n, 0);
            e[j] = 1;
            kernel_cols.push_back(e);
        }
    } else {
        IntMat big(rb, n + rb);
        for (size_t i = 0; i < rb; ++i) {
            for (size_t j = 0; j < n; ++j) big.at(i, j) = out.at(i, j);
            big.at(i, n + i) = b_orders[i];
        }
        for (const auto& col : kernel_lattice(big)) {
            std::vector<Int> x(col.begin(), col.begin() + n);
            kernel_cols.push_back(std::move(x));
        }
    }
    // relations of A live in the kernel as well
    for (size_t i = 0; i < n; ++i) {
        if (a.orders[i] == 0) continue;
        std::vector<Int> e(n, 0);
        e[i] = a.orders[i];
        kernel_cols.push_back(std::move(e));
    }

    std::vector<std::vector<Int>> kbasis = lattice_basis(kernel_cols, n);
    size_t k = kbasis.size();

    IntMat kmat(n, k);
    for (size_t j = 0; j < k; ++j)
        for (size_t i = 0; i < n; ++i) kmat.at(i, j) = kbasis[j][i];

    // subgroup to kill: A's relations plus the incoming images, in K-coordinates
    std::vector<std::vector<Int>> sub;
    for (size_t i = 0; i < n; ++i) {
        if (a.orders[i] == 0) continue;
        std::vector<Int> e(n, 0);
        e[i] = a.orders[i];
        sub.push_back(std::move(e));
    }
    for (const auto& img : images) {
        if (img.size() != n) throw std::invalid_argument("subquotient: image vector shape");
        sub.push_back(img);
    }

    IntMat y(k, sub.size());
    for (size_t j = 0; j < sub.size(); ++j) {
        auto coords = solve(kmat, sub[j]);
        if (!coords)
            throw std::logic_error("subquotient: incoming image is not a cycle (d after d != 0)");
        for (size_t i = 0; i < k; ++i) y.at(i, j) = (*coords)[i];
    }

    SmithForm f = smith_normal_form(y);
    FgGroup result;
    for (size_t i = 0; i < k; ++i) {
        Int d = (i < std::min(y.rows(), y.cols())) ? f.d.at(i, i) : Int(0);
        if (d == 1) continue;  // killed factor
        result.orders.push_back(d);
    }
    std::sort(result.orders.begin(), result.orders.end(), [](const Int& x, const Int& y2) {
        if (x == 0) return false;
        if (y2 == 0) return true;
        return x < y2;
    });
    return result;
}

F2Mat F2Mat::times(const F2Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("F2Mat::times: shape mismatch");
    F2Mat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k)
            if (a_[i][k])
                for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) ^= o.at(k, j);
    return r;
}

std::vector<uint8_t> F2Mat::apply(const std::vector<uint8_t>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("F2Mat::apply: shape mismatch");
    std::vector<uint8_t> r(rows_, 0);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r[i] ^= a_[i][j] & x[j];
    return r;
}

namespace {

// row echelon over F2; returns pivot columns
std::vector<size_t> echelon(std::vector<std::vector<uint8_t>>& m) {
    std::vector<size_t> pivots;
    size_t rows = m.size();
    if (rows == 0) return pivots;
    size_t cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && !m[p][c]) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (size_t i = 0; i < rows; ++i)
            if (i != r && m[i][c])
                for (size_t j = 0; j < cols; ++j) m[i][j] ^= m[r][j];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

size_t F2Mat::rank() const {
    auto m = a_;
    return echelon(m).size();
}

std::vector<std::vector<uint8_t>> F2Mat::kernel_basis() const {
    auto m = a_;
    auto pivots = echelon(m);
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<uint8_t>> basis;
    for (size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        std::vector<uint8_t> v(cols_, 0);
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            if (r < m.size() && m[r][c]) v[pivots[r]] = 1;
        basis.push_back(v);
    }
    return basis;
}

std::optional<std::vector<uint8_t>> F2Mat::solve(const std::vector<uint8_t>& b) const {
    if (b.size() != rows_) throw std::invalid_argument("F2Mat::solve: shape mismatch");
    std::vector<std::vector<uint8_t>> m(rows_, std::vector<uint8_t>(cols_ + 1, 0));
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) m[i][j] = a_[i][j];
        m[i][cols_] = b[i];
    }
    auto pivots = echelon(m);
    std::vector<uint8_t> x(cols_, 0);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols_) return std::nullopt;  // pivot in augmented column
        x[pivots[r]] = m[r][cols_];
    }
    return x;
}

}  // namespace kocalc
