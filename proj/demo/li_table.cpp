// Li coefficients of zeta three ways: zero sum, arithmetic formula, asymptotic law.
#include <iomanip>
#include <iostream>

#include "saddleli/licoeff.hpp"

using namespace saddleli;

int main() {
    const PrecisionContext ctx(256);
    const auto zeta = selberg::preset("riemann-zeta");
    const auto zeros = selberg::load_zero_table(selberg::default_zeta_zero_table_path(), 128);
    const long max_n = 12;

    auto eta = std::make_shared<const licoeff::EtaTable>(
        licoeff::eta_constants(zeta, max_n - 1, licoeff::EtaMethod::laurent_series, ctx));
    const licoeff::ArithmeticRoute route(zeta, eta, ctx, max_n);

    std::cout << "zeros used: " << zeros.size() << "\n\n";
    std::cout << std::left << std::setw(4) << "n" << std::setw(26) << "zero sum" << std::setw(12) << "tail"
              << std::setw(26) << "arithmetic" << "asymptotic\n";
    for (long n = 1; n <= max_n; ++n) {
        const auto zs = licoeff::lambda_zero_sum(zeros, n, std::nullopt, ctx);
        const auto ar = route.evaluate(n);
        std::cout << std::setw(4) << n << std::setw(26) << zs.value.to_string(20) << std::setw(12)
                  << zs.tail_bound.to_string(3) << std::setw(26) << ar.value.to_string(20)
                  << licoeff::lambda_asymptotic(zeta, n, ctx).to_string(10) << '\n';
    }
}
