#include "mollify/linalg.hpp"

#include "mollify/errors.hpp"

#include <utility>

namespace mollify {

bool RationalMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if ((*this)(i, j) != (*this)(j, i)) return false;
        }
    }
    return true;
}

std::vector<Rational> RationalMatrix::multiply(std::span<const Rational> x) const {
    std::vector<Rational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    }
    return y;
}

Rational RationalMatrix::quadratic_form(std::span<const Rational> x) const { return dot(x, multiply(x)); }

RationalMatrix RationalMatrix::submatrix(std::span<const std::size_t> keep) const {
    RationalMatrix r(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = 0; j < keep.size(); ++j) r(i, j) = (*this)(keep[i], keep[j]);
    }
    return r;
}

Rational dot(std::span<const Rational> x, std::span<const Rational> y) {
    Rational s;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) s += x[i] * y[i];
    return s;
}

LinearSolution bareiss_solve(const RationalMatrix& A, std::span<const Rational> b) {
    const std::size_t n = A.rows();
    if (A.cols() != n || b.size() != n) throw DomainError("bareiss_solve: dimension mismatch");

    // Integer augmented matrix [A | b], each row scaled by the lcm of its denominators.
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j <= n; ++j) {
            const Rational& e = j < n ? A(i, j) : b[i];
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.raw().get_den_mpz_t());
        }
        for (std::size_t j = 0; j <= n; ++j) {
            const Rational& e = j < n ? A(i, j) : b[i];
            M[i][j] = e.raw().get_num() * (l / e.raw().get_den());
        }
    }

    LinearSolution out;
    std::vector<std::size_t> pivot_cols;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = r;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) {
            out.free_columns.push_back(c);
            continue;
        }
        std::swap(M[p], M[r]);
        for (std::size_t i = r + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j <= n; ++j) {
                mpz_class t = M[r][c] * M[i][j] - M[i][c] * M[r][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][c] = 0;
        }
        prev = M[r][c];
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < n; ++i) {
        if (M[i][n] != 0) throw InfeasibleError("right-hand side is outside the column space");
    }

    out.x.assign(n, Rational(0));
    for (std::size_t k = pivot_cols.size(); k-- > 0;) {
        const std::size_t c = pivot_cols[k];
        Rational acc(mpq_class(M[k][n]));
        for (std::size_t kk = k + 1; kk < pivot_cols.size(); ++kk) {
            acc -= Rational(mpq_class(M[k][pivot_cols[kk]])) * out.x[pivot_cols[kk]];
        }
        out.x[c] = acc / Rational(mpq_class(M[k][c]));
    }
    return out;
}

}  // namespace mollify
