// Exact 3-cycle spectral gaps for small n, with the partitions attaining them.
#include <iostream>

#include "permword/repgap.hpp"

int main(int argc, char** argv)
{
    using namespace permword;
    const std::size_t top = argc > 1 ? std::stoul(argv[1]) : 12;
    for (std::size_t n = 5; n <= top; ++n) {
        const auto r = spectral_gap_exact(n);
        std::cout << "n=" << n << "  gap=" << to_string(r.gap) << "  at";
        for (const auto& p : r.attaining)
            std::cout << ' ' << to_string(p);
        std::cout << '\n';
    }
}
