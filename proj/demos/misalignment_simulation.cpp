// Sharp measurements along misaligned directions reproduce tr(P_psi F(i)).

#include <cstdio>

#include "fpks/fpks.hpp"

int main() {
    using namespace fpks;
    const UnitVector3 n = UnitVector3::normalized({1.0, 1.0, 1.0});
    const ComplexVector3 psi = z_basis_state(Outcome::plus);
    const char* labels[] = {"+1", "0", "-1"};
    for (double eps : {0.1, 0.3, 1.0, 3.14159}) {
        const auto rep = run_experiment(psi, n, ErrorDensity::uniform_cap(eps), 200000, 7);
        std::printf("eps = %.5f\n", eps);
        for (Outcome o : kOutcomes) {
            const std::size_t i = outcome_index(o);
            std::printf("  %2s  freq %.5f  expected %.5f  z %+.2f\n", labels[i], rep.frequencies[i],
                        rep.expected[i], rep.z_scores[i]);
        }
    }
}
