#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "cli.hpp"

using namespace saddleli;
using namespace saddleli::cli;

namespace {

struct Options {
    RunConfig cfg;
    std::string n_range;
    std::string n_log;
    long count = 32;
    bool log_spaced = false;
    std::string methods = "all";
    std::string format = "csv";
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--precision-bits", o.cfg.precision_bits, "target precision in bits (>= 128)");
    cmd->add_option("--out", o.cfg.out, "output file, '-' for stdout");
    cmd->add_option("--format", o.format, "csv or structured");
    cmd->add_option("--threads", o.cfg.threads, "worker threads for the per-n sweep");
}

void add_range(CLI::App* cmd, Options& o) {
    auto* lin = cmd->add_option("--n", o.n_range, "A..B or A..B..STEP");
    auto* lg = cmd->add_option("--n-log", o.n_log, "A..B, log-spaced (see --count)");
    lin->excludes(lg);
    cmd->add_option("--count", o.count, "samples for log-spaced ranges");
    cmd->add_flag("--log", o.log_spaced, "treat --n A..B as log-spaced");
}

void resolve(Options& o, const std::string& default_range) {
    o.cfg.format = parse_format(o.format);
    if (!o.n_log.empty())
        o.cfg.ns = log_range(o.n_log, o.count);
    else if (o.log_spaced)
        o.cfg.ns = log_range(o.n_range.empty() ? default_range : o.n_range, o.count);
    else
        o.cfg.ns = parse_linear_range(o.n_range.empty() ? default_range : o.n_range);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Li coefficients of Selberg-class L-functions and the H_n(m,k) decomposition"};
    app.require_subcommand(1);
    Options o;
    o.cfg.threads = std::max(1u, std::thread::hardware_concurrency());

    auto* li = app.add_subcommand("li", "tabulate lambda_F(n) by zero sums, the arithmetic formula and the asymptotic law");
    add_common(li, o);
    add_range(li, o);
    auto* preset = li->add_option("--preset", o.cfg.preset, "riemann-zeta, dirichlet-chi4, hecke(N), gl(N)-toy");
    auto* desc = li->add_option("--descriptor", o.cfg.descriptor_path, "descriptor JSON file");
    preset->excludes(desc);
    li->add_option("--zeros", o.cfg.zeros_path, "zero table (one ordinate per line)");
    li->add_option("--methods", o.methods, "all, or a comma list of zero-sum, arithmetic, asymptotic");

    auto* hn = app.add_subcommand("hn", "direct H_n(m,k) against its main terms and a_n(m,k)");
    add_common(hn, o);
    add_range(hn, o);
    hn->add_option("--m", o.cfg.m, "m > 0, integer or p/q");
    hn->add_option("--k", o.cfg.k, "k > 0, integer or p/q");

    auto* st = app.add_subcommand("selftest", "calibration checks");
    st->add_option("--precision-bits", o.cfg.precision_bits, "target precision in bits (>= 128)");
    st->add_option("--zeros", o.cfg.zeros_path, "zero table for the lambda_1 check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*st) {
            const auto checks = run_selftest(o.cfg.precision_bits, o.cfg.zeros_path);
            bool all = true;
            for (const auto& c : checks) {
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
                all = all && c.passed;
            }
            return all ? exit_ok : exit_numeric;
        }
        if (*li) {
            o.cfg.methods = parse_methods(o.methods);
            resolve(o, "1..50");
            emit(run_li(o.cfg), o.cfg.format, o.cfg.out);
        } else {
            resolve(o, "2..64");
            emit(run_hn(o.cfg), o.cfg.format, o.cfg.out);
        }
    } catch (const std::exception& e) {
        std::cerr << "saddleli: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return exit_ok;
}
