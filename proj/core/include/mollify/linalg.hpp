#pragma once

#include "mollify/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mollify {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_symmetric() const;
    std::vector<Rational> multiply(std::span<const Rational> x) const;
    /// x^T A x
    Rational quadratic_form(std::span<const Rational> x) const;
    RationalMatrix submatrix(std::span<const std::size_t> keep) const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Rational dot(std::span<const Rational> x, std::span<const Rational> y);

struct LinearSolution {
    std::vector<Rational> x;
    /// Columns without a pivot; the corresponding unknowns are set to zero.
    std::vector<std::size_t> free_columns;
};

/// Solves A x = b for square A by fraction-free (Bareiss) elimination on the
/// integer matrix obtained by clearing row denominators. Columns that are
/// linearly dependent on earlier ones are reported as free. Throws
/// InfeasibleError when b is outside the column space.
LinearSolution bareiss_solve(const RationalMatrix& A, std::span<const Rational> b);

}  // namespace mollify
