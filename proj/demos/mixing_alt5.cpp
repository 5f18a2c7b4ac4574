// l2 and sup distance to uniform for the lazy 3-cycle walk on Alt(5).
#include <cstdio>

#include "permword/walk.hpp"

int main()
{
    using namespace permword;
    const auto m = lazy_measure(all_three_cycles(5));
    const auto G = FiniteGroup::make(GroupKind::alt, 5);
    Evolver ev(m, G);
    std::printf("%3s %12s %12s\n", "k", "l2", "|G|*linf");
    for (std::size_t k = 0; k <= 12; ++k) {
        std::printf("%3zu %12.6f %12.6f\n", k, lp_distance(ev.current(), Norm::l2),
                    static_cast<double>(G->size()) * lp_distance(ev.current(), Norm::linf));
        ev.step();
    }
    if (const auto t = strong_mixing_time(m, GroupKind::alt, 1000))
        std::printf("strong mixing time %zu\n", *t);
}
