#include <chrono>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kronkit/bench.hpp"
#include "kronkit/dense.hpp"
#include "kronkit/io.hpp"
#include "kronkit/kron.hpp"
#include "kronkit/nkp.hpp"
#include "kronkit/rearrange.hpp"
#include "kronkit/svd.hpp"
#include "kronkit/threading.hpp"
#include "kronkit/unfold.hpp"

namespace {

using namespace kronkit;

// Machine-parsable run report: one `key value...` line per fact. Every
// residual printed here is recomputed from materialized outputs.
struct RunReport {
    std::vector<std::string> lines;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void add(std::string line) { lines.push_back(std::move(line)); }

    void print() const {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        for (const auto& line : lines) std::cout << line << "\n";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "wall_s %.6f", wall);
        std::cout << buf << "\n";
    }
};

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string dims_string(const std::vector<std::size_t>& dims) {
    std::string s;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (k > 0) s += "x";
        s += std::to_string(dims[k]);
    }
    return s;
}

std::string resolve_out(const std::string& path) {
    const char* dir = std::getenv("KRONKIT_OUTPUT_DIR");
    if (dir == nullptr || *dir == '\0') return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

DenseTensor load_tensor(const std::string& path, RunReport& report) {
    DenseTensor x = read_tensor_path(path);
    report.add("input " + path + " dims " + dims_string(x.dims()) + " fro_norm " +
               fmt6(fro_norm(x)));
    return x;
}

DenseMatrix load_matrix(const std::string& path, RunReport& report) {
    DenseTensor x = load_tensor(path, report);
    if (x.order() == 2) return x.to_matrix();
    if (x.order() == 1) {
        return DenseMatrix(x.dims()[0], 1,
                           {x.values().begin(), x.values().end()});
    }
    throw ShapeError("'" + path + "' holds an order-" + std::to_string(x.order()) +
                     " tensor where a matrix is required");
}

std::size_t parse_extent_token(const std::string& text, const std::string& what) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        throw ShapeError(what + " expects a positive integer, got '" + text + "'");
    }
    return value;
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text,
                                               const std::string& flag) {
    const std::size_t pos = text.find_first_of("xX");
    if (pos == std::string::npos || pos == 0 || pos + 1 >= text.size()) {
        throw ShapeError(flag + " expects the form MxN, got '" + text + "'");
    }
    return {parse_extent_token(text.substr(0, pos), flag),
            parse_extent_token(text.substr(pos + 1), flag)};
}

std::vector<std::size_t> parse_target_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        out.push_back(parse_extent_token(text.substr(pos, comma - pos), "--target"));
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

std::string sigma_prefix_line(std::span<const double> sigma, std::size_t limit) {
    std::string line = "sigma";
    for (std::size_t k = 0; k < std::min(sigma.size(), limit); ++k) {
        line += " " + fmt6(sigma[k]);
    }
    return line;
}

DenseMatrix svd_reconstruction(const SvdResult& svd) {
    DenseMatrix scaled = svd.u;
    for (std::size_t j = 0; j < svd.sigma.size(); ++j) {
        for (std::size_t i = 0; i < scaled.rows(); ++i) {
            scaled(i, j) *= svd.sigma[j];
        }
    }
    return matmul(scaled, transpose(svd.v));
}

struct Options {
    std::string file_a, file_b, out;
    std::string grid, block, target;
    std::size_t rank = 0;
    double tol = 1e-10;
    std::size_t mode = 0;
    std::size_t bm = 64, bn = 64, bp = 64, bq = 64, reps = 20;
    bool binary = false;
    int threads = 0;
};

void run_kron(const Options& opt, RunReport& report) {
    const DenseMatrix a = load_matrix(opt.file_a, report);
    const DenseMatrix c = load_matrix(opt.file_b, report);
    const DenseMatrix k = kron(a, c);
    const std::string out = resolve_out(opt.out);
    write_matrix_path(out, k, opt.binary);
    report.add("wrote " + out + " dims " + std::to_string(k.rows()) + "x" +
               std::to_string(k.cols()));
}

void run_nkp(const Options& opt, RunReport& report) {
    const DenseMatrix a = load_matrix(opt.file_a, report);
    const auto [m, n] = parse_pair(opt.grid, "--grid");
    const auto [p, q] = parse_pair(opt.block, "--block");
    const BlockShape shape(m, n, p, q);
    report.add("grid " + std::to_string(m) + "x" + std::to_string(n) + " block " +
               std::to_string(p) + "x" + std::to_string(q));

    const std::string ext = opt.binary ? ".ten" : ".txt";
    std::string wrote = "wrote";
    if (opt.rank <= 1) {
        const NearestKron result = nearest_kron(a, shape);
        const std::string bpath = resolve_out(opt.out + "_B0" + ext);
        const std::string cpath = resolve_out(opt.out + "_C0" + ext);
        write_matrix_path(bpath, result.left, opt.binary);
        write_matrix_path(cpath, result.right, opt.binary);
        // fro(left)*fro(right) recovers the folded singular value.
        report.add("sigma " + fmt6(fro_norm(result.left) * fro_norm(result.right)));
        report.add("residual " + fmt_full(result.residual));
        report.add(wrote + " " + bpath + " " + cpath);
        return;
    }
    const KronSumApprox result = kron_sum_approx(a, shape, opt.rank);
    for (std::size_t k = 0; k < result.terms.rank(); ++k) {
        const std::string bpath =
            resolve_out(opt.out + "_B" + std::to_string(k) + ext);
        const std::string cpath =
            resolve_out(opt.out + "_C" + std::to_string(k) + ext);
        write_matrix_path(bpath, result.terms.terms()[k].left, opt.binary);
        write_matrix_path(cpath, result.terms.terms()[k].right, opt.binary);
        wrote += " " + bpath + " " + cpath;
    }
    report.add(sigma_prefix_line(result.terms.sigmas(), result.terms.rank()));
    const double residual = fro_dist(a.values(), result.terms.materialize().values());
    report.add("residual " + fmt_full(residual));
    report.add(wrote);
}

void run_rearrange(const Options& opt, RunReport& report) {
    const DenseMatrix a = load_matrix(opt.file_a, report);
    const auto [m, n] = parse_pair(opt.grid, "--grid");
    const auto [p, q] = parse_pair(opt.block, "--block");
    const DenseMatrix t = rearrange(a, BlockShape(m, n, p, q));
    const std::string out = resolve_out(opt.out);
    write_matrix_path(out, t, opt.binary);
    report.add("wrote " + out + " dims " + std::to_string(t.rows()) + "x" +
               std::to_string(t.cols()));
}

void run_kron_rank(const Options& opt, RunReport& report) {
    const DenseMatrix a = load_matrix(opt.file_a, report);
    const auto [m, n] = parse_pair(opt.grid, "--grid");
    const auto [p, q] = parse_pair(opt.block, "--block");
    const std::size_t rank =
        kron_rank(a, BlockShape(m, n, p, q), RankTolerance{opt.tol});
    report.add("kron_rank " + std::to_string(rank));
}

void run_svd(const Options& opt, RunReport& report) {
    const DenseMatrix a = load_matrix(opt.file_a, report);
    if (opt.rank == 0) {
        const SvdResult svd = jacobi_svd(a);
        report.add(sigma_prefix_line(svd.sigma, svd.sigma.size()));
        return;
    }
    const auto [svd, formula_residual] = truncated_svd(a, opt.rank);
    (void)formula_residual;
    report.add(sigma_prefix_line(svd.sigma, svd.sigma.size()));
    const double residual = fro_dist(a.values(), svd_reconstruction(svd).values());
    report.add("residual " + fmt_full(residual));
}

void run_unfold(const Options& opt, RunReport& report) {
    const DenseTensor x = load_tensor(opt.file_a, report);
    const ModeUnfolding unf = mode_unfold(x, opt.mode);
    const std::string out = resolve_out(opt.out);
    write_matrix_path(out, unf.matrix, opt.binary);
    report.add("wrote " + out + " dims " + std::to_string(unf.matrix.rows()) + "x" +
               std::to_string(unf.matrix.cols()));
}

void run_mlrank(const Options& opt, RunReport& report) {
    const DenseTensor x = load_tensor(opt.file_a, report);
    const auto ranks = multilinear_rank(x, RankTolerance{opt.tol});
    std::string line = "mlrank";
    for (std::size_t r : ranks) line += " " + std::to_string(r);
    report.add(line);
}

void run_hosvd(const Options& opt, RunReport& report) {
    const DenseTensor x = load_tensor(opt.file_a, report);
    const auto target = parse_target_list(opt.target);
    const Hosvd result = hosvd(x, target);
    const std::string ext = opt.binary ? ".ten" : ".txt";
    const std::string core_path = resolve_out(opt.out + "_core" + ext);
    write_tensor_path(core_path, result.core, opt.binary);
    std::string wrote = "wrote " + core_path;
    for (std::size_t k = 0; k < result.factors.size(); ++k) {
        const std::string upath =
            resolve_out(opt.out + "_U" + std::to_string(k) + ext);
        write_matrix_path(upath, result.factors[k], opt.binary);
        wrote += " " + upath;
    }
    report.add("target " + dims_string(target));
    report.add("error " + fmt_full(result.error));
    report.add(wrote);
}

void run_bench(const Options& opt, RunReport& report) {
    const MatvecBenchResult result =
        bench_matvec(opt.bm, opt.bn, opt.bp, opt.bq, opt.reps);
    report.add("sizes m " + std::to_string(opt.bm) + " n " + std::to_string(opt.bn) +
               " p " + std::to_string(opt.bp) + " q " + std::to_string(opt.bq) +
               " reps " + std::to_string(opt.reps));
    report.add("explicit_median_s " + fmt_full(result.explicit_median_s));
    report.add("structured_median_s " + fmt_full(result.structured_median_s));
    report.add("speedup " + fmt6(result.speedup));
    report.add("max_abs_diff " + fmt6(result.max_abs_diff));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kronecker-structured dense linear algebra toolkit"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--threads", opt.threads, "thread cap for parallel kernels");
    app.add_flag("--binary", opt.binary, "write outputs in the TEN1 binary format");

    auto add_common = [&](CLI::App* sub) {
        sub->fallthrough();
        return sub;
    };

    auto* c_kron = add_common(app.add_subcommand("kron", "materialize kron(A, C)"));
    c_kron->add_option("A", opt.file_a)->required();
    c_kron->add_option("C", opt.file_b)->required();
    c_kron->add_option("-o", opt.out, "output file")->required();

    auto* c_nkp = add_common(app.add_subcommand(
        "nkp", "nearest Kronecker product / r-term Kronecker sum"));
    c_nkp->add_option("A", opt.file_a)->required();
    c_nkp->add_option("--grid", opt.grid, "block grid MxN")->required();
    c_nkp->add_option("--block", opt.block, "block size PxQ")->required();
    c_nkp->add_option("--rank", opt.rank, "number of Kronecker terms")
        ->check(CLI::PositiveNumber);
    c_nkp->add_option("-o", opt.out, "output prefix")->required();

    auto* c_rearr =
        add_common(app.add_subcommand("rearrange", "block rearrangement"));
    c_rearr->add_option("A", opt.file_a)->required();
    c_rearr->add_option("--grid", opt.grid)->required();
    c_rearr->add_option("--block", opt.block)->required();
    c_rearr->add_option("-o", opt.out)->required();

    auto* c_krank =
        add_common(app.add_subcommand("kron-rank", "Kronecker rank of A"));
    c_krank->add_option("A", opt.file_a)->required();
    c_krank->add_option("--grid", opt.grid)->required();
    c_krank->add_option("--block", opt.block)->required();
    c_krank->add_option("--tol", opt.tol, "relative rank tolerance")
        ->check(CLI::NonNegativeNumber);

    auto* c_svd = add_common(app.add_subcommand("svd", "singular values of A"));
    c_svd->add_option("A", opt.file_a)->required();
    c_svd->add_option("--rank", opt.rank, "truncation rank")->check(CLI::PositiveNumber);

    auto* c_unfold = add_common(app.add_subcommand("unfold", "mode-k unfolding"));
    c_unfold->add_option("X", opt.file_a)->required();
    c_unfold->add_option("--mode", opt.mode, "mode index, 0-based")->required();
    c_unfold->add_option("-o", opt.out)->required();

    auto* c_mlrank =
        add_common(app.add_subcommand("mlrank", "multilinear rank of X"));
    c_mlrank->add_option("X", opt.file_a)->required();
    c_mlrank->add_option("--tol", opt.tol, "relative rank tolerance")
        ->check(CLI::NonNegativeNumber);

    auto* c_hosvd = add_common(app.add_subcommand("hosvd", "truncated HOSVD"));
    c_hosvd->add_option("X", opt.file_a)->required();
    c_hosvd->add_option("--target", opt.target, "target ranks R1,...,Rd")->required();
    c_hosvd->add_option("-o", opt.out, "output prefix")->required();

    auto* c_bench = add_common(app.add_subcommand(
        "bench-matvec", "structured vs materialized Kronecker matvec"));
    c_bench->add_option("--m", opt.bm)->check(CLI::PositiveNumber);
    c_bench->add_option("--n", opt.bn)->check(CLI::PositiveNumber);
    c_bench->add_option("--p", opt.bp)->check(CLI::PositiveNumber);
    c_bench->add_option("--q", opt.bq)->check(CLI::PositiveNumber);
    c_bench->add_option("--reps", opt.reps)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 1;
    }

    if (opt.threads > 0) set_num_threads(opt.threads);

    RunReport report;
    try {
        if (c_kron->parsed()) {
            report.add("command kron");
            run_kron(opt, report);
        } else if (c_nkp->parsed()) {
            report.add("command nkp");
            run_nkp(opt, report);
        } else if (c_rearr->parsed()) {
            report.add("command rearrange");
            run_rearrange(opt, report);
        } else if (c_krank->parsed()) {
            report.add("command kron-rank");
            run_kron_rank(opt, report);
        } else if (c_svd->parsed()) {
            report.add("command svd");
            run_svd(opt, report);
        } else if (c_unfold->parsed()) {
            report.add("command unfold");
            run_unfold(opt, report);
        } else if (c_mlrank->parsed()) {
            report.add("command mlrank");
            run_mlrank(opt, report);
        } else if (c_hosvd->parsed()) {
            report.add("command hosvd");
            run_hosvd(opt, report);
        } else if (c_bench->parsed()) {
            report.add("command bench-matvec");
            run_bench(opt, report);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: parse: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: format: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 1;
    } catch (const RangeError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 1;
    } catch (const SizeError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 1;
    } catch (const ContractError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: convergence: " << e.what() << "\n";
        return 3;
    } catch (const DegenerateInputError& e) {
        std::cerr << "error: degenerate: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: numeric: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 3;
    }
    report.print();
    return 0;
}
