#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kronkit/dense.hpp"

namespace kronkit {

// Malformed text input; carries the 1-based line the problem was found on.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Malformed binary input (bad magic, truncation, dim overflow).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text format: header line `matrix <rows> <cols>` or
// `tensor <d> <n_1> ... <n_d>`, then exactly prod(n_k) whitespace-separated
// finite decimal values in column-major order. `#` starts a comment.
DenseTensor read_tensor_text(std::istream& in);
void write_tensor_text(std::ostream& out, const DenseTensor& x);
void write_matrix_text(std::ostream& out, const DenseMatrix& a);

// Binary format: magic "TEN1" | u32 LE order d | d x u64 LE dims |
// prod(n_k) x f64 LE values, column-major. Roundtrips bit-identically.
std::vector<std::uint8_t> write_tensor_binary(const DenseTensor& x);
DenseTensor read_tensor_binary(std::span<const std::uint8_t> bytes);

// File-level helpers; reading sniffs the binary magic and falls back to text.
DenseTensor read_tensor_path(const std::string& path);
void write_tensor_path(const std::string& path, const DenseTensor& x, bool binary);
void write_matrix_path(const std::string& path, const DenseMatrix& a, bool binary);

} // namespace kronkit
