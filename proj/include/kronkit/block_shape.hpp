#pragma once

#include <cstddef>

#include "kronkit/dense.hpp"
#include "kronkit/errors.hpp"

namespace kronkit {

// Partition of an (m*p) x (n*q) matrix into an m x n grid of p x q blocks.
// Block (i, j) is the submatrix rows [i*p, (i+1)*p), cols [j*q, (j+1)*q).
struct BlockShape {
    std::size_t grid_rows;  // m
    std::size_t grid_cols;  // n
    std::size_t block_rows; // p
    std::size_t block_cols; // q

    BlockShape(std::size_t m, std::size_t n, std::size_t p, std::size_t q);

    std::size_t host_rows() const { return checked_mul(grid_rows, block_rows); }
    std::size_t host_cols() const { return checked_mul(grid_cols, block_cols); }
    std::size_t grid_size() const { return checked_mul(grid_rows, grid_cols); }
    std::size_t block_size() const { return checked_mul(block_rows, block_cols); }
};

// Throws ShapeError unless a is exactly (m*p) x (n*q).
void require_consistent(const BlockShape& shape, const DenseMatrix& a);

} // namespace kronkit
