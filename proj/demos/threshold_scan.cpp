// Critical inaccuracy angle as a function of the unsharpness tolerance.

#include <cstdio>
#include <numbers>

#include "fpks/fpks.hpp"

int main() {
    using namespace fpks;
    std::printf("%-6s %-22s %-12s %-12s %s\n", "delta", "family", "eps* [rad]", "eps* [deg]", "binding");
    for (double d : {0.05, 0.1, 0.2, 0.3}) {
        for (DensityKind kind : {DensityKind::uniform_cap, DensityKind::truncated_gaussian}) {
            const auto ce = critical_epsilon(UnsharpnessTolerance(d), density_family(kind));
            std::printf("%-6.2f %-22s %-12.6f %-12.4f %s\n", d, std::string(to_string(kind)).c_str(), ce.epsilon,
                        ce.epsilon * 180.0 / std::numbers::pi, std::string(to_string(ce.binding)).c_str());
        }
    }
}
