#include "rangerenew/acceptance.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    std::uint64_t seed = 42;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    auto outcome = rangerenew::run_acceptance(seed, &std::cout);
    return outcome.all_gating_pass ? 0 : 1;
}
