#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ospcert/cli_io.hpp"

using namespace ospcert;

namespace {

struct Flags {
    std::optional<int> m, n, max_m, max_n;
    std::optional<std::string> n_range, sector, out, data_dir;
    int jobs = 1;
    double row_cap = static_cast<double>(kDefaultRowCap);
    std::string frame = "orthonormal";
    bool tables = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--out", f.out, "write the machine-readable report to this file");
    sub->add_option("--data-dir", f.data_dir, std::string("structure directory (default $") + kDataDirEnv + " or ./data)");
    sub->add_option("--jobs", f.jobs, "worker threads for sector processing")->check(CLI::PositiveNumber);
    sub->add_option("--row-cap", f.row_cap, "refuse full systems with more rows than this (default 1e6)")->check(CLI::PositiveNumber);
    sub->add_option("--gamma-frame", f.frame, "Cartan coordinates for gamma: orthonormal or coroot")
        ->check(CLI::IsMember({"orthonormal", "coroot"}));
}

std::vector<int> n_values(const Flags& f, const std::string& fallback) {
    if (f.n && f.n_range) throw UsageError("give either --n or --n-range, not both");
    if (f.n) return {*f.n};
    if (f.n_range) return parse_n_range(*f.n_range);
    if (fallback.empty()) throw UsageError("--n or --n-range is required");
    return parse_n_range(fallback);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact coboundary and certificate checks for oscillator deformations of B(m,n) = osp(2m+1|2n)"};
    app.require_subcommand(1);
    Flags f;

    auto* gen = app.add_subcommand("generate", "build structure constants and gamma, write them as canonical JSON");
    gen->add_option("--m", f.m, "fermion count m (default 0)");
    gen->add_option("--n", f.n, "boson count n");
    gen->add_option("--n-range", f.n_range, "range of n, e.g. 1..5");

    auto* dim = app.add_subcommand("dim-check", "f-variable count and census of every short-root sector of B(0,n)");
    dim->add_option("--n", f.n);
    dim->add_option("--n-range", f.n_range, "default 2..5");

    auto* rank = app.add_subcommand("rank", "per-sector ranks of the coboundary system");
    rank->add_option("--m", f.m, "default 0");
    rank->add_option("--n", f.n);
    rank->add_option("--n-range", f.n_range, "default 1..5");
    rank->add_option("--sector", f.sector, "a single sector weight, e.g. +d1 or -d2");

    auto* certs = app.add_subcommand("verify-certs", "build and check the left-nullspace certificates of B(0,n)");
    certs->add_option("--n", f.n);
    certs->add_option("--n-range", f.n_range, "default 2..5");
    certs->add_flag("--tables", f.tables, "print the per-component contribution tables");

    auto* b01 = app.add_subcommand("verify-b01", "rank check and explicit primitive for B(0,1)");

    auto* bmn = app.add_subcommand("verify-bmn", "strong rank condition for B(m,n), m >= 1");
    bmn->add_option("--m", f.m, "single target together with --n");
    bmn->add_option("--n", f.n);
    bmn->add_option("--max-m", f.max_m, "grid bound (default 2)");
    bmn->add_option("--max-n", f.max_n, "grid bound (default 2)");

    for (auto* s : {gen, dim, rank, certs, b01, bmn}) add_common(s, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CommonOptions opt;
        opt.data_dir = resolve_data_dir(f.data_dir);
        opt.jobs = f.jobs;
        if (f.row_cap < 1 || f.row_cap > 1e15) throw UsageError("--row-cap out of range");
        opt.row_cap = static_cast<std::size_t>(f.row_cap);
        opt.frame = frame_parse(f.frame);
        opt.tables = f.tables;

        Report r;
        if (gen->parsed()) {
            r = cmd_generate(opt, f.m.value_or(0), n_values(f, ""));
        } else if (dim->parsed()) {
            r = cmd_dim_check(opt, n_values(f, "2..5"));
        } else if (rank->parsed()) {
            r = cmd_rank(opt, f.m.value_or(0), n_values(f, "1..5"), f.sector);
        } else if (certs->parsed()) {
            r = cmd_verify_certs(opt, n_values(f, "2..5"));
        } else if (b01->parsed()) {
            r = cmd_verify_b01(opt);
        } else {
            std::vector<std::pair<int, int>> targets;
            if (f.m || f.n) {
                if (!(f.m && f.n)) throw UsageError("verify-bmn needs both --m and --n for a single target");
                if (f.max_m || f.max_n) throw UsageError("give either --m/--n or --max-m/--max-n");
                targets.emplace_back(*f.m, *f.n);
            } else {
                targets = bmn_grid(f.max_m.value_or(2), f.max_n.value_or(2));
            }
            r = cmd_verify_bmn(opt, targets);
        }

        std::cout << r.text;
        if (f.out) {
            std::ofstream out(*f.out, std::ios::binary | std::ios::trunc);
            if (!out) throw UsageError("cannot write " + *f.out);
            out << report_text(r);
        }
        return r.exit_code;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity failure: " << e.what() << "\n";
        return 1;
    } catch (const MathError& e) {
        std::cerr << "math failure: " << e.what() << "\n";
        return 1;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource limit: out of memory\n";
        return 2;
    }
}
