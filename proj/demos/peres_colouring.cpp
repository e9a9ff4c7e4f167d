// Peres' 33 rays admit no AT/AF colouring; a permuted search order agrees.

#include <cstdio>
#include <numeric>

#include "fpks/fpks.hpp"

int main() {
    using namespace fpks;
    const KsSet ks = load_ks_set("peres33");
    std::printf("%s: %zu rays, %zu orthogonal pairs, %zu triads\n", ks.name.c_str(), ks.size(), ks.pairs.size(),
                ks.triads.size());

    const auto v = colourability_search(ks);
    std::printf("index order:    %s after %llu nodes, digest %016llx\n", v.satisfiable ? "colourable" : "uncolourable",
                static_cast<unsigned long long>(v.nodes_explored),
                static_cast<unsigned long long>(v.certificate.digest));

    SearchOptions reversed;
    reversed.tiebreak.resize(ks.size());
    std::iota(reversed.tiebreak.rbegin(), reversed.tiebreak.rend(), std::size_t{0});
    const auto w = colourability_search(ks, reversed);
    std::printf("reversed order: %s after %llu nodes\n", w.satisfiable ? "colourable" : "uncolourable",
                static_cast<unsigned long long>(w.nodes_explored));

    const auto t = theorem1_demonstration(DensityKind::uniform_cap, 0.4, UnsharpnessTolerance(0.1), "peres33");
    std::printf("uniform cap, eps = 0.4, delta = 0.1: %s\n", std::string(to_string(t.conclusion)).c_str());
}
