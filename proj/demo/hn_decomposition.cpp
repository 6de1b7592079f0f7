// H_n(m,k) = main terms + oscillating remainder; the remainder tracks a_n(m,k).
#include <iomanip>
#include <iostream>

#include "saddleli/nrsum.hpp"

using namespace saddleli;

int main(int argc, char** argv) {
    const Rational m(argc > 1 ? argv[1] : "1"), k(argc > 2 ? argv[2] : "1");
    const PrecisionContext ctx(256);
    const long max_n = 1024;
    const nrsum::HurwitzSequence seq(m, k, max_n);

    std::cout << "m = " << m << ", k = " << k << "\n\n";
    std::cout << std::left << std::setw(6) << "n" << std::setw(24) << "H_n" << std::setw(16) << "residual"
              << std::setw(16) << "a_n" << "ratio\n";
    for (long n = 16; n <= max_n; n *= 2) {
        const auto b = nrsum::hn_breakdown(n, seq, ctx);
        std::cout << std::setw(6) << n << std::setw(24) << b.direct_value.to_string(18) << std::setw(16)
                  << b.residual.to_string(6) << std::setw(16) << b.an_predicted.to_string(6)
                  << (b.residual / b.an_predicted).to_string(4) << '\n';
    }
}
