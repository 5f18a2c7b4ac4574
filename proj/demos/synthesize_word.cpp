// Writes a random even permutation as a word in two random generators.
#include <iostream>

#include "permword/synth.hpp"

int main(int argc, char** argv)
{
    using namespace permword;
    const std::size_t n = argc > 1 ? std::stoul(argv[1]) : 30;
    std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 1;

    // Some pairs have no usable long cycle; move on to the next seed.
    for (;; ++seed) {
        Rng rng(seed);
        const auto pair = random_generators(n, rng);
        try {
            const auto ctx = prepare_context(pair.g, pair.h, rng);
            Permutation target = random_uniform(n, rng);
            if (!is_even(target))
                target = target * Permutation::from_cycles(n, {{1, 2}});
            const auto r = synthesize_detailed(ctx, target, rng);
            std::cout << "seed    " << seed << "\ng       " << to_cycle_string(pair.g) << "\nh       " << to_cycle_string(pair.h)
                      << "\ntarget  " << to_cycle_string(target) << "\nlength  " << r.word.expanded_length()
                      << "\nnodes   " << node_count(r.word) << "\nok      " << std::boolalpha
                      << (evaluate(r.word, pair.g, pair.h) == target) << '\n';
            return 0;
        } catch (const retry_exhausted& e) {
            std::cerr << "seed " << seed << ": " << e.what() << '\n';
        }
    }
}
