#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>
#include <unistd.h>

#include "saddleli/licoeff.hpp"

namespace saddleli::cli {

/// Malformed command line or configuration.
class UsageError : public Error {
public:
    using Error::Error;
};

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_numeric = 2, exit_data = 3 };

/// DataError -> 3, ConvergenceError -> 2, everything else the caller can fix -> 1.
inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const DataError*>(&e)) return exit_data;
    if (dynamic_cast<const ConvergenceError*>(&e)) return exit_numeric;
    if (dynamic_cast<const Error*>(&e)) return exit_usage;
    return exit_numeric;
}

// ---------------------------------------------------------------- ranges

inline constexpr std::size_t max_range_length = 1'000'000;

inline long parse_long(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw UsageError("bad integer '" + s + "' in " + what);
    }
    if (used != s.size()) throw UsageError("bad integer '" + s + "' in " + what);
    return v;
}

/// "A..B" or "A..B..STEP", inclusive, STEP > 0.
inline std::vector<long> parse_linear_range(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    for (;;) {
        const auto dots = text.find("..", pos);
        parts.push_back(text.substr(pos, dots == std::string::npos ? std::string::npos : dots - pos));
        if (dots == std::string::npos) break;
        pos = dots + 2;
    }
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("range must look like A..B or A..B..STEP: '" + text + "'");
    const long a = parse_long(parts[0], "range"), b = parse_long(parts[1], "range");
    const long step = parts.size() == 3 ? parse_long(parts[2], "range") : 1;
    if (step <= 0) throw UsageError("range step must be positive");
    if (a > b) throw UsageError("empty range '" + text + "'");
    if (static_cast<unsigned long>((b - a) / step) >= max_range_length) throw UsageError("range too long");
    std::vector<long> out;
    for (long n = a; n <= b; n += step) out.push_back(n);
    return out;
}

/// `count` integers spread geometrically over [a, b], rounded and deduplicated.
inline std::vector<long> log_range(long a, long b, long count) {
    if (a < 1 || a > b) throw UsageError("log range needs 1 <= A <= B");
    if (count < 1 || static_cast<std::size_t>(count) > max_range_length) throw UsageError("bad --count");
    std::vector<long> out;
    for (long i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
        const long n = std::lround(std::exp(std::log(double(a)) + t * (std::log(double(b)) - std::log(double(a)))));
        const long c = std::clamp(n, a, b);
        if (out.empty() || out.back() < c) out.push_back(c);
    }
    return out;
}

inline std::vector<long> log_range(const std::string& text, long count) {
    const auto lin = parse_linear_range(text);
    return log_range(lin.front(), lin.back(), count);
}

// ---------------------------------------------------------------- config

enum class Method { zero_sum, arithmetic, asymptotic };
enum class Format { csv, structured };

inline std::string to_string(Method m) {
    switch (m) {
        case Method::zero_sum: return "zero-sum";
        case Method::arithmetic: return "arithmetic";
        case Method::asymptotic: return "asymptotic";
    }
    return "";
}

/// Comma list of zero-sum, arithmetic, asymptotic; "all" leaves the choice to
/// what the descriptor supports.
inline std::optional<std::vector<Method>> parse_methods(const std::string& text) {
    if (text.empty() || text == "all") return std::nullopt;
    std::vector<Method> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        Method m;
        if (item == "zero-sum") m = Method::zero_sum;
        else if (item == "arithmetic") m = Method::arithmetic;
        else if (item == "asymptotic") m = Method::asymptotic;
        else throw UsageError("unknown method '" + item + "'");
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    if (out.empty()) throw UsageError("empty method list");
    return out;
}

inline Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "structured") return Format::structured;
    throw UsageError("unknown format '" + s + "'");
}

inline constexpr int min_precision_bits = 128;

struct RunConfig {
    int precision_bits = 256;
    std::string preset;
    std::string descriptor_path;
    std::string zeros_path;
    std::vector<long> ns;
    std::optional<std::vector<Method>> methods;
    Format format = Format::csv;
    std::string out = "-";
    std::string m = "1", k = "1";
    unsigned threads = 1;

    void validate() const {
        if (precision_bits < min_precision_bits)
            throw UsageError("--precision-bits must be >= " + std::to_string(min_precision_bits));
        if (ns.empty()) throw UsageError("empty n range");
    }
};

inline selberg::SelbergDescriptor descriptor_of(const RunConfig& cfg) {
    if (!cfg.preset.empty() && !cfg.descriptor_path.empty())
        throw UsageError("--preset and --descriptor are mutually exclusive");
    if (!cfg.descriptor_path.empty()) return selberg::load_descriptor(cfg.descriptor_path);
    return selberg::preset(cfg.preset.empty() ? "riemann-zeta" : cfg.preset);
}

// ---------------------------------------------------------------- rendering

inline int output_digits(int target_bits) { return static_cast<int>(std::ceil(0.301 * target_bits)); }

/// Round-half-even at `digits` significant digits.
inline std::string render(const APReal& x, int digits) { return x.to_string(digits); }

/// Upper bounds are rounded up, to 8 digits: still bounds after printing.
inline std::string render_bound(const APReal& x) {
    if (x.is_zero()) return "0";
    if (!x.is_finite()) return x.to_string(8);
    mpfr_exp_t e = 0;
    char* buf = mpfr_get_str(nullptr, &e, 10, 8, x.raw(), MPFR_RNDU);
    std::string mant(buf);
    mpfr_free_str(buf);
    std::string out = mant.substr(0, 1) + "." + mant.substr(1);
    char tail[32];
    const long exp10 = static_cast<long>(e) - 1;
    std::snprintf(tail, sizeof tail, "e%c%02ld", exp10 < 0 ? '-' : '+', exp10 < 0 ? -exp10 : exp10);
    return out + tail;
}

inline const std::string not_available = "NA";

struct Table {
    std::string command;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

inline void write_table(const Table& t, Format f, std::ostream& os) {
    if (f == Format::csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << '\n';
        }
        return;
    }
    nlohmann::ordered_json j;
    j["command"] = t.command;
    j["config"] = t.meta;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i];
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
}

/// "-" is stdout; a file is written beside its destination and renamed into
/// place, so a failed run leaves nothing behind.
inline void emit(const Table& t, Format f, const std::string& path) {
    if (path == "-") {
        write_table(t, f, std::cout);
        std::cout.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path dest(path);
    const fs::path tmp = dest.parent_path() / (dest.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw DataError("cannot write '" + tmp.string() + "'");
        write_table(t, f, os);
        os.flush();
        if (!os) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw DataError("write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, dest, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw DataError("cannot move output into '" + path + "'");
    }
}

// ---------------------------------------------------------------- parallel sweep

/// fn(i) for i in [0, count) on `threads` workers; the first exception is
/// rethrown after every worker has stopped.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; !failed && (i = next.fetch_add(1)) < count;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, threads) && t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------- li

inline const std::vector<std::string>& li_columns() {
    static const std::vector<std::string> cols = {"n",          "zero_sum",   "zero_sum_tail_bound",
                                                  "arithmetic", "arithmetic_error_bound", "asymptotic",
                                                  "residual_asym", "residual_asym_bound", "positivity"};
    return cols;
}

/// Largest |n| the arithmetic route serves for `f` (bounded by the eta table).
inline long arithmetic_capacity(const selberg::SelbergDescriptor& f) {
    return (f.coefficients() == selberg::Coefficients::chi4 ? licoeff::eta_max_index - 1 : licoeff::eta_max_index) +
           1;
}

inline Table run_li(const RunConfig& cfg) {
    cfg.validate();
    const auto f = descriptor_of(cfg);
    const PrecisionContext ctx(cfg.precision_bits);
    const int digits = output_digits(cfg.precision_bits);

    std::string zeros_path = cfg.zeros_path;
    if (zeros_path.empty() && f.name() == "riemann-zeta") zeros_path = selberg::default_zeta_zero_table_path();

    std::vector<Method> methods;
    if (cfg.methods) {
        methods = *cfg.methods;
        for (Method m : methods) {
            if (m == Method::zero_sum && zeros_path.empty())
                throw DataError("zero-sum method requires a zero table (--zeros)");
            if (m == Method::arithmetic && !f.has_arithmetic_data())
                throw UnsupportedError("descriptor '" + f.name() + "' lacks arithmetic data (Lambda_F)");
        }
    } else {
        if (!zeros_path.empty()) methods.push_back(Method::zero_sum);
        if (f.has_arithmetic_data()) methods.push_back(Method::arithmetic);
        methods.push_back(Method::asymptotic);
    }
    auto uses = [&](Method m) { return std::find(methods.begin(), methods.end(), m) != methods.end(); };

    const auto& ns = cfg.ns;
    long n_abs_max = 0;
    for (long n : ns) n_abs_max = std::max(n_abs_max, std::labs(n));
    std::vector<licoeff::LiRecord> recs(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) recs[i].n = ns[i];

    std::optional<selberg::ZeroTable> zeros;
    if (uses(Method::zero_sum)) {
        zeros = selberg::load_zero_table(zeros_path, cfg.precision_bits);
        const auto sums = licoeff::lambda_zero_sums(*zeros, ns, std::nullopt, ctx, cfg.threads);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            recs[i].zero_sum = sums[i].value;
            recs[i].zero_sum_tail_bound = sums[i].tail_bound;
        }
    }

    const long cap = arithmetic_capacity(f);
    if (uses(Method::arithmetic)) {
        const long need = std::min(std::max(n_abs_max, 1L), cap);
        const auto eta = std::make_shared<const licoeff::EtaTable>(
            licoeff::eta_constants(f, static_cast<int>(need - 1), licoeff::EtaMethod::laurent_series, ctx));
        const licoeff::ArithmeticRoute route(f, eta, ctx, need);
        route.prime(need);
        parallel_for(ns.size(), cfg.threads, [&](std::size_t i) {
            const long a = std::labs(ns[i]);
            if (a == 0) {
                recs[i].arithmetic = APReal(ctx.working_bits());
                recs[i].arithmetic_error_bound = APReal(64);
            } else if (a <= cap) {
                auto r = route.evaluate(a);
                recs[i].arithmetic = std::move(r.value);
                recs[i].arithmetic_error_bound = std::move(r.error_bound);
            }
        });
    }

    const bool asym = uses(Method::asymptotic);
    for (auto& r : recs) {
        r.asymptotic = licoeff::lambda_asymptotic(f, std::labs(r.n), ctx);
        r.finalize();
    }

    Table t;
    t.command = "li";
    t.meta["descriptor"] = f.name();
    t.meta["precision_bits"] = cfg.precision_bits;
    t.meta["zeros"] = zeros ? zeros->label() : "";
    t.meta["zeros_used"] = zeros ? zeros->size() : 0;
    auto mj = nlohmann::ordered_json::array();
    for (Method m : methods) mj.push_back(to_string(m));
    t.meta["methods"] = mj;
    t.columns = li_columns();
    auto opt = [&](const std::optional<APReal>& v) { return v ? render(*v, digits) : not_available; };
    auto opt_bound = [&](const std::optional<APReal>& v) { return v ? render_bound(*v) : not_available; };
    for (const auto& r : recs) {
        const bool has_value = r.zero_sum || r.arithmetic;
        t.rows.push_back({std::to_string(r.n), opt(r.zero_sum), opt_bound(r.zero_sum_tail_bound), opt(r.arithmetic),
                          opt_bound(r.arithmetic_error_bound), asym ? render(r.asymptotic, digits) : not_available,
                          asym && has_value ? render(r.residual_asym, digits) : not_available,
                          asym && has_value ? render_bound(r.residual_asym_bound) : not_available,
                          licoeff::to_string(licoeff::classify(r))});
    }
    return t;
}

// ---------------------------------------------------------------- hn

inline const std::vector<std::string>& hn_columns() {
    static const std::vector<std::string> cols = {"n",            "direct", "main_terms", "residual",
                                                  "an_predicted", "ratio",  "error_bound"};
    return cols;
}

inline Table run_hn(const RunConfig& cfg) {
    cfg.validate();
    Rational m, k;
    try {
        m = parse_rational(cfg.m);
        k = parse_rational(cfg.k);
    } catch (const DataError& e) {
        throw UsageError(std::string("--m/--k: ") + e.what());
    }
    if (m <= 0 || k <= 0) throw UsageError("--m and --k must be positive");
    for (long n : cfg.ns)
        if (n < 1) throw UsageError("hn needs n >= 1");
    const PrecisionContext ctx(cfg.precision_bits);
    const int digits = output_digits(cfg.precision_bits);
    const long n_max = *std::max_element(cfg.ns.begin(), cfg.ns.end());
    const nrsum::HurwitzSequence seq(m, k, std::max(n_max, 2L), ctx.max_escalations());
    seq.prime(ctx.for_alternating_sum(n_max).working_bits());

    std::vector<std::vector<std::string>> rows(cfg.ns.size());
    parallel_for(cfg.ns.size(), cfg.threads, [&](std::size_t i) {
        const long n = cfg.ns[i];
        if (n == 1) {
            // empty sum: H_1 = 0 and every column of the decomposition is 0
            rows[i] = {"1", "0", "0", "0", "0", "0", "0"};
            return;
        }
        const auto b = nrsum::hn_breakdown(n, seq, ctx);
        const APReal ratio = b.residual / b.an_predicted;
        rows[i] = {std::to_string(n),        render(b.direct_value, digits), render(b.main_terms, digits),
                   render(b.residual, digits), render(b.an_predicted, digits), render(ratio, digits),
                   render_bound(b.direct_error_bound)};
    });

    Table t;
    t.command = "hn";
    t.meta["m"] = saddleli::to_string(m);
    t.meta["k"] = saddleli::to_string(k);
    t.meta["precision_bits"] = cfg.precision_bits;
    t.columns = hn_columns();
    t.rows = std::move(rows);
    return t;
}

// ---------------------------------------------------------------- selftest

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

inline std::vector<CheckResult> run_selftest(int precision_bits, const std::string& zeros_path) {
    if (precision_bits < min_precision_bits)
        throw UsageError("--precision-bits must be >= " + std::to_string(min_precision_bits));
    const PrecisionContext ctx(precision_bits);
    const int w = ctx.working_bits();
    const APReal tol = pow2(8 - precision_bits, 64);
    std::vector<CheckResult> out;
    auto run = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& check) {
        CheckResult r{name, false, ""};
        try {
            std::tie(r.passed, r.detail) = check();
        } catch (const std::exception& e) {
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    };

    run("lambda1-arithmetic", [&] {
        const APReal diff = licoeff::calibrate_eta_sign(ctx);
        return std::make_pair(true, "|diff| = " + render_bound(diff));
    });
    run("lambda1-zero-sum", [&] {
        const auto table = selberg::load_zero_table(
            zeros_path.empty() ? selberg::default_zeta_zero_table_path() : zeros_path, precision_bits);
        const auto r = licoeff::lambda_zero_sum(table, 1, std::nullopt, ctx);
        const APReal diff = licoeff::lambda1_closed_form(w) - r.value;
        // the truncated sum undershoots by at most the tail
        const bool ok = diff.sign() >= 0 && diff <= r.tail_bound;
        return std::make_pair(ok, "shortfall " + diff.to_string(8) + ", tail bound " + render_bound(r.tail_bound) +
                                      ", " + std::to_string(r.zeros_used) + " zeros");
    });
    run("hurwitz-zeta-at-zero", [&] {
        APReal worst(64);
        for (const Rational& q : {Rational(1, 3), Rational(2), Rational(7, 2), Rational(1, 1000)}) {
            const APReal v = specfun::hurwitz_zeta(0L, APReal(q, w), ctx);
            worst = max(worst, abs(v - (APReal(Rational(1, 2) - q, w))).rounded(64));
        }
        return std::make_pair(worst <= tol, "max deviation " + render_bound(worst));
    });
    run("residue-vs-sum", [&] {
        const nrsum::HolomorphicProvider f = [](const APComplex& s, int bits) { return exp(s / APReal(3L, bits)); };
        const nrsum::SequenceProvider g = [](long l, int bits) { return exp(APReal(Rational(l, 3), bits)); };
        APReal worst(64);
        for (long n : {3L, 8L, 13L}) {
            const APReal a = nrsum::nr_residue_check(f, n, 0, std::nullopt, 32, ctx);
            const APReal b = nrsum::alt_binomial_sum(g, n, 0, ctx);
            worst = max(worst, abs(a - b).rounded(64));
        }
        return std::make_pair(worst <= tol, "max deviation " + render_bound(worst));
    });
    return out;
}

}  // namespace saddleli::cli
