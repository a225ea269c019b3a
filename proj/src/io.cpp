#include "kronkit/io.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace kronkit {

namespace {

constexpr char kMagic[4] = {'T', 'E', 'N', '1'};

std::string_view strip_comment(std::string_view line) {
    const std::size_t hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::vector<std::string_view> tokenize(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
        std::size_t end = pos;
        while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
        if (end > pos) tokens.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return tokens;
}

std::size_t parse_extent(std::string_view token, std::size_t line_no) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("malformed header extent '" + std::string(token) + "'", line_no);
    }
    if (value == 0) throw ParseError("extents must be positive", line_no);
    return value;
}

double parse_value(std::string_view token, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("malformed value '" + std::string(token) + "'", line_no);
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite value '" + std::string(token) + "'", line_no);
    }
    return value;
}

void append_shortest(std::string& out, double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, ptr);
}

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

void put_u64le(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

std::uint32_t get_u32le(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = (v << 8) | p[k];
    return v;
}

std::uint64_t get_u64le(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | p[k];
    return v;
}

} // namespace

DenseTensor read_tensor_text(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    std::vector<std::size_t> dims;
    bool have_header = false;
    std::size_t expected = 0;
    std::vector<double> values;

    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = tokenize(strip_comment(line));
        if (tokens.empty()) continue;
        if (!have_header) {
            if (tokens[0] == "matrix") {
                if (tokens.size() != 3) {
                    throw ParseError("matrix header needs exactly rows and cols", line_no);
                }
                dims = {parse_extent(tokens[1], line_no), parse_extent(tokens[2], line_no)};
            } else if (tokens[0] == "tensor") {
                if (tokens.size() < 2) {
                    throw ParseError("tensor header needs an order", line_no);
                }
                const std::size_t d = parse_extent(tokens[1], line_no);
                if (tokens.size() != 2 + d) {
                    throw ParseError("tensor header dim count does not match order", line_no);
                }
                for (std::size_t k = 0; k < d; ++k) {
                    dims.push_back(parse_extent(tokens[2 + k], line_no));
                }
            } else {
                throw ParseError("header must start with 'matrix' or 'tensor'", line_no);
            }
            have_header = true;
            expected = 1;
            try {
                for (std::size_t n : dims) expected = checked_mul(expected, n);
            } catch (const SizeError&) {
                throw ParseError("dimension product overflows", line_no);
            }
            values.reserve(std::min<std::size_t>(expected, 1u << 20));
            continue;
        }
        for (const auto token : tokens) {
            if (values.size() == expected) {
                throw ParseError("more values than the header announced", line_no);
            }
            values.push_back(parse_value(token, line_no));
        }
    }
    if (!have_header) throw ParseError("empty input, header expected", line_no);
    if (values.size() != expected) {
        throw ParseError("expected " + std::to_string(expected) + " values, got " +
                             std::to_string(values.size()),
                         line_no);
    }
    return DenseTensor(std::move(dims), std::move(values));
}

void write_tensor_text(std::ostream& out, const DenseTensor& x) {
    std::string text = "tensor " + std::to_string(x.order());
    for (std::size_t n : x.dims()) text += " " + std::to_string(n);
    text += "\n";
    // One mode-0 fiber per line keeps lines short and the order obvious.
    const std::size_t fiber = x.dims()[0];
    const auto values = x.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k % fiber != 0) text += " ";
        append_shortest(text, values[k]);
        if ((k + 1) % fiber == 0) text += "\n";
    }
    out << text;
}

void write_matrix_text(std::ostream& out, const DenseMatrix& a) {
    std::string text = "matrix " + std::to_string(a.rows()) + " " +
                       std::to_string(a.cols()) + "\n";
    const auto values = a.values();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k % a.rows() != 0) text += " ";
        append_shortest(text, values[k]);
        if ((k + 1) % a.rows() == 0) text += "\n";
    }
    out << text;
}

std::vector<std::uint8_t> write_tensor_binary(const DenseTensor& x) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(8 + 8 * x.order() + 8 * x.size());
    for (char c : kMagic) bytes.push_back(static_cast<std::uint8_t>(c));
    put_u32le(bytes, static_cast<std::uint32_t>(x.order()));
    for (std::size_t n : x.dims()) put_u64le(bytes, static_cast<std::uint64_t>(n));
    for (double v : x.values()) put_u64le(bytes, std::bit_cast<std::uint64_t>(v));
    return bytes;
}

DenseTensor read_tensor_binary(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8) throw FormatError("truncated header");
    for (int k = 0; k < 4; ++k) {
        if (bytes[k] != static_cast<std::uint8_t>(kMagic[k])) {
            throw FormatError("bad magic, not a TEN1 stream");
        }
    }
    const std::uint32_t d = get_u32le(bytes.data() + 4);
    if (d == 0) throw FormatError("tensor order must be positive");
    const std::size_t dims_end = 8 + 8 * static_cast<std::size_t>(d);
    if (bytes.size() < dims_end) throw FormatError("truncated dims");

    std::vector<std::size_t> dims(d);
    std::size_t expected = 1;
    for (std::uint32_t k = 0; k < d; ++k) {
        const std::uint64_t n = get_u64le(bytes.data() + 8 + 8 * k);
        if (n == 0) throw FormatError("extents must be positive");
        if (n > std::numeric_limits<std::size_t>::max()) throw FormatError("dim overflow");
        dims[k] = static_cast<std::size_t>(n);
        try {
            expected = checked_mul(expected, dims[k]);
            checked_mul(expected, sizeof(double));
        } catch (const SizeError&) {
            throw FormatError("dim overflow");
        }
    }
    if (bytes.size() != dims_end + 8 * expected) {
        throw FormatError(bytes.size() < dims_end + 8 * expected
                              ? "truncated payload"
                              : "trailing bytes after payload");
    }
    std::vector<double> values(expected);
    for (std::size_t k = 0; k < expected; ++k) {
        values[k] = std::bit_cast<double>(get_u64le(bytes.data() + dims_end + 8 * k));
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw FormatError("non-finite value in payload");
    }
    return DenseTensor(std::move(dims), std::move(values));
}

DenseTensor read_tensor_path(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ParseError("cannot open '" + path + "'", 0);
    std::stringstream buffer;
    buffer << file.rdbuf();
    const std::string content = buffer.str();
    if (content.size() >= 4 && content.compare(0, 4, kMagic, 4) == 0) {
        return read_tensor_binary(std::span<const std::uint8_t>(
            reinterpret_cast<const std::uint8_t*>(content.data()), content.size()));
    }
    std::istringstream text(content);
    return read_tensor_text(text);
}

void write_tensor_path(const std::string& path, const DenseTensor& x, bool binary) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw FormatError("cannot write '" + path + "'");
    if (binary) {
        const auto bytes = write_tensor_binary(x);
        file.write(reinterpret_cast<const char*>(bytes.data()),
                   static_cast<std::streamsize>(bytes.size()));
    } else {
        write_tensor_text(file, x);
    }
}

void write_matrix_path(const std::string& path, const DenseMatrix& a, bool binary) {
    if (binary) {
        write_tensor_path(path, DenseTensor::from_matrix(a), true);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw FormatError("cannot write '" + path + "'");
    write_matrix_text(file, a);
}

} // namespace kronkit
