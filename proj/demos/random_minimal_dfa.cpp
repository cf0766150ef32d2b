// Draws uniform random automata until one is minimal, then prints it.
//
//   random_minimal_dfa <k> <n> [seed]

#include "icdfa/icdfa.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::cerr << "usage: " << argv[0] << " <k> <n> [seed]\n";
        return 2;
    }
    const int k = std::atoi(argv[1]);
    const int n = std::atoi(argv[2]);
    const auto seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1ULL;
    if (k < 1 || n < 1) {
        std::cerr << "k and n must be positive\n";
        return 2;
    }

    const auto table = icdfa::build_table(k, n);
    icdfa::RandomSource rng(seed);
    for (int attempt = 1;; ++attempt) {
        auto dfa = icdfa::sample_dfa(table, rng);
        if (icdfa::is_minimal(dfa)) {
            std::cout << "# attempt " << attempt << ", rank "
                      << icdfa::rank(icdfa::string_of(dfa), table) << " of " << table.total() << '\n';
            icdfa::write_dfa(std::cout, dfa);
            return 0;
        }
    }
}
