#ifndef OPDOP_LINALG_HPP
#define OPDOP_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "opdop/scalar.hpp"

namespace opdop {

/// Small dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = T(1);
        }
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) {
            return;
        }
        for (std::size_t k = 0; k < c_; ++k) {
            std::swap((*this)(i, k), (*this)(j, k));
        }
    }

    std::vector<T> multiply(const std::vector<T>& x) const
    {
        std::vector<T> y(r_, T(0));
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < c_; ++j) {
                y[i] += (*this)(i, j) * x[j];
            }
        }
        return y;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i) {
            for (std::size_t k = 0; k < a.c_; ++k) {
                if (a(i, k) == T(0)) {
                    continue;
                }
                for (std::size_t j = 0; j < b.c_; ++j) {
                    m(i, j) += a(i, k) * b(k, j);
                }
            }
        }
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

private:
    std::size_t r_{0};
    std::size_t c_{0};
    std::vector<T> a_;
};

/// Square matrix with the given column removed from an n x (n+1) block.
template <class T>
Matrix<T> delete_column(const Matrix<T>& m, std::size_t col)
{
    Matrix<T> out(m.rows(), m.cols() - 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::size_t jj = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j != col) {
                out(i, jj++) = m(i, j);
            }
        }
    }
    return out;
}

/// Determinant: fraction-free Bareiss elimination for exact scalars,
/// partial-pivoting LU otherwise. The empty matrix has determinant 1.
template <class T>
T determinant(Matrix<T> a)
{
    const std::size_t n = a.rows();
    if (n == 0) {
        return T(1);
    }
    if constexpr (is_exact_v<T>) {
        T sign(1);
        T prev(1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (a(k, k) == T(0)) {
                std::size_t p = k + 1;
                while (p < n && a(p, k) == T(0)) {
                    ++p;
                }
                if (p == n) {
                    return T(0);
                }
                a.swap_rows(k, p);
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
                }
                a(i, k) = T(0);
            }
            prev = a(k, k);
        }
        return sign * a(n - 1, n - 1);
    } else {
        T det(1);
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (abs_value(a(i, k)) > abs_value(a(p, k))) {
                    p = i;
                }
            }
            if (a(p, k) == T(0)) {
                return T(0);
            }
            if (p != k) {
                a.swap_rows(k, p);
                det = -det;
            }
            det *= a(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                const T f = a(i, k) / a(k, k);
                for (std::size_t j = k + 1; j < n; ++j) {
                    a(i, j) -= f * a(k, j);
                }
            }
        }
        return det;
    }
}

/// Solves a square system by Gaussian elimination. Throws MathError when singular.
template <class T>
std::vector<T> solve_linear(Matrix<T> a, std::vector<T> b)
{
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        if constexpr (is_exact_v<T>) {
            while (p < n && a(p, k) == T(0)) {
                ++p;
            }
            if (p == n) {
                throw MathError("singular linear system");
            }
        } else {
            for (std::size_t i = k + 1; i < n; ++i) {
                if (abs_value(a(i, k)) > abs_value(a(p, k))) {
                    p = i;
                }
            }
            if (a(p, k) == T(0)) {
                throw MathError("singular linear system");
            }
        }
        a.swap_rows(k, p);
        std::swap(b[k], b[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == T(0)) {
                continue;
            }
            const T f = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= f * a(k, j);
            }
            b[i] -= f * b[k];
        }
    }
    std::vector<T> x(n, T(0));
    for (std::size_t ii = n; ii-- > 0;) {
        T s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) {
            s -= a(ii, j) * x[j];
        }
        x[ii] = s / a(ii, ii);
    }
    return x;
}

/// Reduced row echelon form over an exact field, with the transform E such that E * A == R.
template <class T>
struct Rref {
    Matrix<T> reduced;
    Matrix<T> transform;
    std::vector<std::size_t> pivot_cols;
};

template <class T>
Rref<T> rref(const Matrix<T>& a)
{
    static_assert(is_exact_v<T>, "rref needs exact arithmetic");
    Rref<T> out{a, Matrix<T>::identity(a.rows()), {}};
    Matrix<T>& r = out.reduced;
    Matrix<T>& e = out.transform;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t p = row;
        while (p < r.rows() && r(p, col) == T(0)) {
            ++p;
        }
        if (p == r.rows()) {
            continue;
        }
        r.swap_rows(row, p);
        e.swap_rows(row, p);
        const T inv = T(1) / r(row, col);
        for (std::size_t j = 0; j < r.cols(); ++j) {
            r(row, j) *= inv;
        }
        for (std::size_t j = 0; j < e.cols(); ++j) {
            e(row, j) *= inv;
        }
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col) == T(0)) {
                continue;
            }
            const T f = r(i, col);
            for (std::size_t j = 0; j < r.cols(); ++j) {
                r(i, j) -= f * r(row, j);
            }
            for (std::size_t j = 0; j < e.cols(); ++j) {
                e(i, j) -= f * e(row, j);
            }
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    return out;
}

template <class T>
std::size_t exact_rank(const Matrix<T>& a)
{
    return rref(a).pivot_cols.size();
}

/// Basis of {x : A x = 0}, one vector per free column, with a 1 at that column.
template <class T>
std::vector<std::vector<T>> null_space(const Matrix<T>& a)
{
    const Rref<T> rr = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : rr.pivot_cols) {
        is_pivot[c] = true;
    }
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) {
            continue;
        }
        std::vector<T> v(a.cols(), T(0));
        v[f] = T(1);
        for (std::size_t k = 0; k < rr.pivot_cols.size(); ++k) {
            v[rr.pivot_cols[k]] = -rr.reduced(k, f);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Singular values (descending) by one-sided Jacobi rotations; double or Extended.
template <class T>
std::vector<T> singular_values(Matrix<T> a)
{
    using std::sqrt;
    // Work on the orientation with at least as many rows as columns.
    if (a.rows() < a.cols()) {
        Matrix<T> t(a.cols(), a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                t(j, i) = a(i, j);
            }
        }
        a = std::move(t);
    }
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    const T eps = std::numeric_limits<T>::epsilon();
    for (int sweep = 0; sweep < 80; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                T alpha(0), beta(0), gamma(0);
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += a(i, p) * a(i, p);
                    beta += a(i, q) * a(i, q);
                    gamma += a(i, p) * a(i, q);
                }
                if (gamma == T(0) || abs_value(gamma) <= eps * sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const T zeta = (beta - alpha) / (T(2) * gamma);
                const T sgn = zeta < T(0) ? T(-1) : T(1);
                const T t = sgn / (abs_value(zeta) + sqrt(T(1) + zeta * zeta));
                const T c = T(1) / sqrt(T(1) + t * t);
                const T s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    const T ap = a(i, p);
                    const T aq = a(i, q);
                    a(i, p) = c * ap - s * aq;
                    a(i, q) = s * ap + c * aq;
                }
            }
        }
        if (!rotated) {
            break;
        }
    }
    std::vector<T> sv(n, T(0));
    for (std::size_t j = 0; j < n; ++j) {
        T s(0);
        for (std::size_t i = 0; i < m; ++i) {
            s += a(i, j) * a(i, j);
        }
        sv[j] = sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), [](const T& x, const T& y) { return x > y; });
    return sv;
}

/// Number of singular values above rel * largest.
template <class T>
std::size_t numeric_rank(const Matrix<T>& a, double rel)
{
    if (a.rows() == 0 || a.cols() == 0) {
        return 0;
    }
    const auto sv = singular_values(a);
    if (sv.front() == T(0)) {
        return 0;
    }
    std::size_t r = 0;
    for (const auto& s : sv) {
        if (s > T(rel) * sv.front()) {
            ++r;
        }
    }
    return r;
}

} // namespace opdop

#endif // OPDOP_LINALG_HPP
