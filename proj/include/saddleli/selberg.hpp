#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cmath>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "saddleli/ap.hpp"
#include "saddleli/precision.hpp"
#include "saddleli/specfun.hpp"

namespace saddleli::selberg {

/// One Gamma(lambda s + mu) factor; both exact, lambda > 0, mu >= 0.
struct GammaFactor {
    Rational lambda;
    Rational mu;
    friend bool operator==(const GammaFactor&, const GammaFactor&) = default;
};

/// Q_F = sqrt(radicand) * pi^pi_exponent, radicand > 0.
struct ScaleFactor {
    Rational radicand{1};
    Rational pi_exponent{0};
    friend bool operator==(const ScaleFactor&, const ScaleFactor&) = default;

    APReal value(int bits) const {
        return exp(log_value(bits));
    }
    APReal log_value(int bits) const {
        return log(APReal(radicand, bits)) / 2L + log(const_pi(bits)) * APReal(pi_exponent, bits);
    }
};

/// Which Lambda_F(n) provider a descriptor carries.
enum class Coefficients {
    none,          // no arithmetic data (Hecke forms without an attached table)
    synthetic,     // toy descriptor: refuses every arithmetic operation
    von_mangoldt,  // Lambda(n)
    chi4,          // chi_{-4}(n) Lambda(n)
};

inline std::string to_string(Coefficients c) {
    switch (c) {
        case Coefficients::none: return "none";
        case Coefficients::synthetic: return "synthetic";
        case Coefficients::von_mangoldt: return "von-mangoldt";
        case Coefficients::chi4: return "dirichlet-chi4";
    }
    return "none";
}

inline Coefficients coefficients_from_string(const std::string& s) {
    if (s == "none") return Coefficients::none;
    if (s == "synthetic") return Coefficients::synthetic;
    if (s == "von-mangoldt") return Coefficients::von_mangoldt;
    if (s == "dirichlet-chi4") return Coefficients::chi4;
    throw DataError("unknown coefficient provider '" + s + "'");
}

/// Functional-equation data of F in the Selberg class, real mu_j only.
/// omega is kept as the two decimal strings it was given in; it never enters
/// a computed formula.
class SelbergDescriptor {
public:
    SelbergDescriptor(std::string name, unsigned pole_order, ScaleFactor q, std::vector<GammaFactor> factors,
                      Coefficients coefficients, std::string omega_re = "1", std::string omega_im = "0")
        : name_(std::move(name)),
          pole_order_(pole_order),
          q_(std::move(q)),
          factors_(std::move(factors)),
          coefficients_(coefficients),
          omega_re_(std::move(omega_re)),
          omega_im_(std::move(omega_im)) {
        validate();
    }

    const std::string& name() const noexcept { return name_; }
    unsigned pole_order() const noexcept { return pole_order_; }
    const ScaleFactor& scale() const noexcept { return q_; }
    const std::vector<GammaFactor>& gamma_factors() const noexcept { return factors_; }
    Coefficients coefficients() const noexcept { return coefficients_; }
    const std::string& omega_re() const noexcept { return omega_re_; }
    const std::string& omega_im() const noexcept { return omega_im_; }
    APComplex omega(int bits) const { return {APReal::parse(omega_re_, bits), APReal::parse(omega_im_, bits)}; }

    bool has_arithmetic_data() const noexcept {
        return coefficients_ == Coefficients::von_mangoldt || coefficients_ == Coefficients::chi4;
    }

    friend bool operator==(const SelbergDescriptor&, const SelbergDescriptor&) = default;

private:
    void validate() const {
        if (factors_.empty()) throw DomainError("descriptor '" + name_ + "': at least one gamma factor required");
        for (const auto& g : factors_) {
            if (g.lambda <= 0) throw DomainError("descriptor '" + name_ + "': lambda_j must be positive");
            if (g.mu < 0) throw DomainError("descriptor '" + name_ + "': mu_j must be non-negative");
        }
        if (q_.radicand <= 0) throw DomainError("descriptor '" + name_ + "': Q_F must be positive");
        // |omega| = 1 to 2^-100
        const APComplex w = omega(192);
        if (abs(norm(w) - 1L) > pow2(-100, 64))
            throw DomainError("descriptor '" + name_ + "': |omega| must be 1");
    }

    std::string name_;
    unsigned pole_order_;
    ScaleFactor q_;
    std::vector<GammaFactor> factors_;
    Coefficients coefficients_;
    std::string omega_re_, omega_im_;
};

/// d_F = 2 sum lambda_j
inline Rational degree(const SelbergDescriptor& f) {
    Rational d = 0;
    for (const auto& g : f.gamma_factors()) d += 2 * g.lambda;
    return d;
}

/// prod lambda_j^{2 lambda_j}, exact when every 2 lambda_j is an integer.
inline std::optional<Rational> lambda_invariant_exact(const SelbergDescriptor& f) {
    Rational out = 1;
    for (const auto& g : f.gamma_factors()) {
        const Rational e = 2 * g.lambda;
        if (e.get_den() != 1) return std::nullopt;
        Integer num, den;
        const unsigned long p = e.get_num().get_ui();
        mpz_pow_ui(num.get_mpz_t(), g.lambda.get_num_mpz_t(), p);
        mpz_pow_ui(den.get_mpz_t(), g.lambda.get_den_mpz_t(), p);
        out *= Rational(num, den);
    }
    out.canonicalize();
    return out;
}

/// log of prod lambda_j^{2 lambda_j}
inline APReal log_lambda_invariant(const SelbergDescriptor& f, int bits) {
    APReal total(bits);
    for (const auto& g : f.gamma_factors()) total += log(APReal(g.lambda, bits)) * APReal(2 * g.lambda, bits);
    return total;
}

inline APReal lambda_invariant(const SelbergDescriptor& f, const PrecisionContext& ctx) {
    if (auto exact = lambda_invariant_exact(f)) return APReal(*exact, ctx.working_bits());
    return exp(log_lambda_invariant(f, ctx.working_bits()));
}

/// c_F = (d_F/2)(gamma - 1) + (1/2) log(lambda Q_F^2)
inline APReal c_constant(const SelbergDescriptor& f, const PrecisionContext& ctx) {
    const int w = ctx.working_bits();
    const APReal half_degree(Rational(degree(f) / 2), w);
    return half_degree * (const_euler(w) - 1L) + log_lambda_invariant(f, w) / 2L + f.scale().log_value(w);
}

// ---------------------------------------------------------------- presets

namespace detail {

inline std::optional<long> parse_preset_arg(const std::string& name, const std::string& head,
                                            const std::string& tail) {
    if (name.size() <= head.size() + tail.size() + 2) return std::nullopt;
    if (name.compare(0, head.size() + 1, head + "(") != 0) return std::nullopt;
    const std::string end = ")" + tail;
    if (name.compare(name.size() - end.size(), end.size(), end) != 0) return std::nullopt;
    const std::string digits = name.substr(head.size() + 1, name.size() - head.size() - 1 - end.size());
    if (digits.empty() || digits.size() > 6 ||
        !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
        return std::nullopt;
    const long v = std::stol(digits);
    if (v < 1) return std::nullopt;
    return v;
}

}  // namespace detail

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"riemann-zeta", "dirichlet-chi4", "hecke(N)", "gl(N)-toy"};
    return names;
}

/// riemann-zeta, dirichlet-chi4, hecke(N), gl(N)-toy.
inline SelbergDescriptor preset(const std::string& name) {
    if (name == "riemann-zeta")
        return {name, 1, {1, Rational(-1, 2)}, {{Rational(1, 2), 0}}, Coefficients::von_mangoldt};
    if (name == "dirichlet-chi4")
        return {name, 0, {4, Rational(-1, 2)}, {{Rational(1, 2), Rational(1, 2)}}, Coefficients::chi4};
    if (auto level = detail::parse_preset_arg(name, "hecke", ""))
        return {name, 0, {Rational(*level, 4), -1}, {{1, Rational(1, 2)}}, Coefficients::none};
    if (auto n = detail::parse_preset_arg(name, "gl", "-toy"); n && *n <= 64)
        return {name, 0, {1, Rational(-*n, 2)}, std::vector<GammaFactor>(*n, {Rational(1, 2), 0}),
                Coefficients::synthetic};
    throw UnsupportedError("unknown preset '" + name + "' (known: riemann-zeta, dirichlet-chi4, hecke(N), gl(N)-toy)");
}

// ---------------------------------------------------------------- coefficients

/// Lambda_F(n) from the descriptor's provider, using the shared sieve.
class CoefficientProvider {
public:
    CoefficientProvider(const SelbergDescriptor& f, std::uint64_t limit) : kind_(f.coefficients()) {
        if (!f.has_arithmetic_data())
            throw UnsupportedError("descriptor '" + f.name() + "' lacks arithmetic data (Lambda_F)");
        sieve_ = specfun::shared_sieve(limit);
    }

    /// p if n = p^k contributes, with the sign of chi(n); 0 otherwise.
    long signed_base(std::uint64_t n) const {
        const long p = static_cast<long>(sieve_->prime_base(n));
        if (p == 0 || kind_ == Coefficients::von_mangoldt) return p;
        if (n % 2 == 0) return 0;
        return n % 4 == 1 ? p : -p;
    }

    APReal operator()(std::uint64_t n, int bits) const {
        const long p = signed_base(n);
        if (p == 0) return APReal(bits);
        const APReal v = log(APReal(p < 0 ? -p : p, bits));
        return p < 0 ? -v : v;
    }

    std::uint64_t limit() const noexcept { return sieve_->limit(); }

private:
    Coefficients kind_;
    std::shared_ptr<const specfun::VonMangoldtSieve> sieve_;
};

// ---------------------------------------------------------------- serialization

namespace detail {

inline Rational rational_field(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw DataError(where + ": missing '" + key + "'");
    const auto& v = j.at(key);
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of("iIjJ") != std::string::npos)
            throw UnsupportedError(where + ": complex '" + key + "' is not supported (real mu_j only)");
        return parse_rational(s);
    }
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_object() || v.is_array())
        throw UnsupportedError(where + ": complex '" + key + "' is not supported (real mu_j only)");
    throw DataError(where + ": '" + key + "' must be an exact decimal or rational string");
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const SelbergDescriptor& f) {
    nlohmann::ordered_json j;
    j["name"] = f.name();
    j["pole_order"] = f.pole_order();
    j["scale"] = {{"radicand", saddleli::to_string(f.scale().radicand)}, {"pi_exponent", saddleli::to_string(f.scale().pi_exponent)}};
    auto factors = nlohmann::ordered_json::array();
    for (const auto& g : f.gamma_factors())
        factors.push_back({{"lambda", saddleli::to_string(g.lambda)}, {"mu", saddleli::to_string(g.mu)}});
    j["gamma_factors"] = factors;
    j["omega"] = {{"re", f.omega_re()}, {"im", f.omega_im()}};
    j["coefficients"] = to_string(f.coefficients());
    return j;
}

inline SelbergDescriptor from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw DataError("descriptor: top level must be an object");
        const std::string name = j.value("name", std::string("custom"));
        const long pole_order = j.value("pole_order", 0L);
        if (pole_order < 0) throw DataError("descriptor: pole_order must be >= 0");
        ScaleFactor q;
        if (j.contains("scale")) {
            const auto& s = j.at("scale");
            q.radicand = detail::rational_field(s, "radicand", "scale");
            q.pi_exponent = s.contains("pi_exponent") ? detail::rational_field(s, "pi_exponent", "scale") : Rational(0);
        }
        if (!j.contains("gamma_factors") || !j.at("gamma_factors").is_array())
            throw DataError("descriptor: 'gamma_factors' must be a list");
        std::vector<GammaFactor> factors;
        for (const auto& g : j.at("gamma_factors"))
            factors.push_back({detail::rational_field(g, "lambda", "gamma factor"),
                               detail::rational_field(g, "mu", "gamma factor")});
        std::string re = "1", im = "0";
        if (j.contains("omega")) {
            re = j.at("omega").value("re", std::string("1"));
            im = j.at("omega").value("im", std::string("0"));
        }
        const Coefficients c = coefficients_from_string(j.value("coefficients", std::string("none")));
        return {name, static_cast<unsigned>(pole_order), q, std::move(factors), c, re, im};
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("descriptor: ") + e.what());
    }
}

inline std::string serialize(const SelbergDescriptor& f) { return to_json(f).dump(2) + "\n"; }

inline SelbergDescriptor deserialize(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("descriptor: ") + e.what());
    }
    return from_json(j);
}

inline SelbergDescriptor load_descriptor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open descriptor file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return deserialize(buffer.str());
}

// ---------------------------------------------------------------- zero tables

/// Positive ordinates gamma of zeros 1/2 + i gamma, strictly increasing.
/// Conjugates are implied.
class ZeroTable {
public:
    ZeroTable(std::vector<APReal> ordinates, int source_precision_bits, std::string label, double max_abs_error)
        : ordinates_(std::move(ordinates)),
          bits_(source_precision_bits),
          label_(std::move(label)),
          max_abs_error_(max_abs_error) {}

    const std::vector<APReal>& ordinates() const noexcept { return ordinates_; }
    std::size_t size() const noexcept { return ordinates_.size(); }
    bool empty() const noexcept { return ordinates_.empty(); }
    int source_precision_bits() const noexcept { return bits_; }
    const std::string& label() const noexcept { return label_; }
    /// Half a unit in the last printed decimal place, maximised over lines.
    double max_abs_error() const noexcept { return max_abs_error_; }

private:
    std::vector<APReal> ordinates_;
    int bits_;
    std::string label_;
    double max_abs_error_;
};

inline ZeroTable load_zero_table(std::istream& in, int declared_bits, const std::string& label) {
    if (declared_bits < 2) throw DomainError("zero table: declared precision too small");
    std::vector<APReal> ordinates;
    double max_err = 0.0;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);
        APReal v(declared_bits);
        try {
            v = APReal::parse(token, declared_bits);
        } catch (const DataError&) {
            throw DataError("zero table '" + label + "': not a decimal number '" + token + "'", line_no);
        }
        if (v.sign() <= 0) throw DataError("zero table '" + label + "': ordinates must be positive", line_no);
        if (!ordinates.empty() && !(ordinates.back() < v))
            throw DataError("zero table '" + label + "': ordinates not strictly increasing", line_no);
        const auto point = token.find('.');
        const long frac = point == std::string::npos ? 0 : static_cast<long>(token.size() - point - 1);
        max_err = std::max(max_err, 0.5 * std::pow(10.0, -static_cast<double>(frac)));
        ordinates.push_back(std::move(v));
    }
    return ZeroTable(std::move(ordinates), declared_bits, label, max_err);
}

inline ZeroTable load_zero_table(const std::string& path, int declared_bits) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open zero table '" + path + "'");
    return load_zero_table(in, declared_bits, path);
}

#ifdef SADDLELI_DATA_DIR
/// The vendored table of the first 10^5 zeta ordinates.
inline std::string default_zeta_zero_table_path() { return std::string(SADDLELI_DATA_DIR) + "/zeta_zeros_100k.txt"; }
#endif

}  // namespace saddleli::selberg
