#pragma once

// Dense exact linear algebra over a field.
//
// Every routine here pivots on the least-indexed admissible row and column, so
// results (kernel bases, particular solutions, chosen column bases) are fully
// determined by the input.  The intended field is mpq_class, but anything with
// the usual arithmetic operators and comparison against 0 works.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ihgysin {

template <class Field>
using Vector = std::vector<Field>;

template <class Field>
bool is_zero_vector(const Vector<Field>& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

template <class Field>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Field(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Matrix from_columns(std::size_t rows, const std::vector<Vector<Field>>& columns)
    {
        Matrix m(rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].size() != rows)
                throw std::invalid_argument("Matrix::from_columns: column length mismatch");
            for (std::size_t r = 0; r < rows; ++r)
                m(r, c) = columns[c][r];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Field& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Field& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector<Field> column(std::size_t c) const
    {
        Vector<Field> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            v[r] = (*this)(r, c);
        return v;
    }

    void set_column(std::size_t c, const Vector<Field>& v)
    {
        if (v.size() != rows_)
            throw std::invalid_argument("Matrix::set_column: length mismatch");
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, c) = v[r];
    }

    std::vector<Vector<Field>> columns() const
    {
        std::vector<Vector<Field>> out;
        out.reserve(cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            out.push_back(column(c));
        return out;
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (x != 0)
                return false;
        return true;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix select_rows(const std::vector<std::size_t>& idx) const
    {
        Matrix m(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t c = 0; c < cols_; ++c)
                m(i, c) = (*this)(idx[i], c);
        return m;
    }

    Matrix select_columns(const std::vector<std::size_t>& idx) const
    {
        Matrix m(rows_, idx.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t i = 0; i < idx.size(); ++i)
                m(r, i) = (*this)(r, idx[i]);
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("Matrix product: dimension mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Field& x = a(r, k);
                if (x == 0)
                    continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    if (b(k, c) != 0)
                        m(r, c) += x * b(k, c);
            }
        return m;
    }

    friend Vector<Field> operator*(const Matrix& a, const Vector<Field>& v)
    {
        if (a.cols_ != v.size())
            throw std::invalid_argument("Matrix-vector product: dimension mismatch");
        Vector<Field> out(a.rows_, Field(0));
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (v[k] == 0)
                continue;
            for (std::size_t r = 0; r < a.rows_; ++r)
                if (a(r, k) != 0)
                    out[r] += a(r, k) * v[k];
        }
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("Matrix sum: dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("Matrix difference: dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }

    friend Matrix operator*(const Field& s, Matrix a)
    {
        for (auto& x : a.data_)
            x *= s;
        return a;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Field> data_;
};

template <class Field>
Matrix<Field> hstack(const Matrix<Field>& a, const Matrix<Field>& b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack: row count mismatch");
    Matrix<Field> m(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            m(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c)
            m(r, a.cols() + c) = b(r, c);
    }
    return m;
}

template <class Field>
Matrix<Field> vstack(const Matrix<Field>& a, const Matrix<Field>& b)
{
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack: column count mismatch");
    Matrix<Field> m(a.rows() + b.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        for (std::size_t r = 0; r < a.rows(); ++r)
            m(r, c) = a(r, c);
        for (std::size_t r = 0; r < b.rows(); ++r)
            m(a.rows() + r, c) = b(r, c);
    }
    return m;
}

template <class Field>
Vector<Field> add(Vector<Field> a, const Vector<Field>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector sum: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

template <class Field>
Vector<Field> subtract(Vector<Field> a, const Vector<Field>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector difference: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

template <class Field>
Vector<Field> scale(const Field& s, Vector<Field> a)
{
    for (auto& x : a)
        x *= s;
    return a;
}

/// Reduced row echelon form together with its pivot columns.
template <class Field>
struct Echelon {
    Matrix<Field> reduced;
    std::vector<std::size_t> pivot_columns;

    std::size_t rank() const { return pivot_columns.size(); }
};

/// Gauss-Jordan elimination.  Columns are scanned left to right and the pivot
/// row is the first remaining row with a nonzero entry.
template <class Field>
Echelon<Field> echelon(Matrix<Field> m)
{
    Echelon<Field> out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != row)
            for (std::size_t c = 0; c < m.cols(); ++c)
                std::swap(m(pivot, c), m(row, c));
        const Field inv = Field(1) / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c)
            m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0)
                continue;
            const Field factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (m(row, c) != 0)
                    m(r, c) -= factor * m(row, c);
        }
        out.pivot_columns.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

template <class Field>
std::size_t rank(const Matrix<Field>& m)
{
    return echelon(m).rank();
}

/// Basis of the null space, one column per free variable (in increasing order).
template <class Field>
Matrix<Field> kernel(const Matrix<Field>& m)
{
    const auto e = echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_columns)
        is_pivot[c] = true;
    std::vector<Vector<Field>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector<Field> v(m.cols(), Field(0));
        v[f] = 1;
        for (std::size_t r = 0; r < e.pivot_columns.size(); ++r)
            v[e.pivot_columns[r]] = -e.reduced(r, f);
        basis.push_back(std::move(v));
    }
    return Matrix<Field>::from_columns(m.cols(), basis);
}

/// A particular solution of m x = b with every free variable set to zero, or
/// nothing when the system is inconsistent.
template <class Field>
std::optional<Vector<Field>> solve(const Matrix<Field>& m, const Vector<Field>& b)
{
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: right-hand side length mismatch");
    Matrix<Field> aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    const auto e = echelon(std::move(aug));
    if (!e.pivot_columns.empty() && e.pivot_columns.back() == m.cols())
        return std::nullopt;
    Vector<Field> x(m.cols(), Field(0));
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r)
        x[e.pivot_columns[r]] = e.reduced(r, m.cols());
    return x;
}

/// Indices of a maximal independent subset of columns, chosen greedily from the left.
template <class Field>
std::vector<std::size_t> independent_columns(const Matrix<Field>& m)
{
    return echelon(m).pivot_columns;
}

template <class Field>
Matrix<Field> column_basis(const Matrix<Field>& m)
{
    return m.select_columns(independent_columns(m));
}

template <class Field>
std::optional<Matrix<Field>> inverse(const Matrix<Field>& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    const std::size_t n = m.rows();
    const auto e = echelon(hstack(m, Matrix<Field>::identity(n)));
    if (e.rank() < n || (n > 0 && e.pivot_columns[n - 1] != n - 1))
        return std::nullopt;
    Matrix<Field> inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv(r, c) = e.reduced(r, n + c);
    return inv;
}

/// Coordinates of the columns of `targets` in the (independent) column basis
/// `basis`, or nothing if some column is outside its span.
template <class Field>
std::optional<Matrix<Field>> coordinates_in(const Matrix<Field>& basis, const Matrix<Field>& targets)
{
    if (basis.rows() != targets.rows())
        throw std::invalid_argument("coordinates_in: ambient dimension mismatch");
    const auto e = echelon(hstack(basis, targets));
    for (auto c : e.pivot_columns)
        if (c >= basis.cols())
            return std::nullopt;
    Matrix<Field> coords(basis.cols(), targets.cols());
    for (std::size_t t = 0; t < targets.cols(); ++t)
        for (std::size_t r = 0; r < e.pivot_columns.size(); ++r)
            coords(e.pivot_columns[r], t) = e.reduced(r, basis.cols() + t);
    return coords;
}

} // namespace ihgysin
