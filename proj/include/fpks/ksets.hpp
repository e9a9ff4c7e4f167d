#ifndef FPKS_KSETS_HPP
#define FPKS_KSETS_HPP

// Kochen-Specker ray sets with exact Q(sqrt2) coordinates: canonical rays,
// orthogonal pairs and complete orthogonal triads, plus the ray-set text format.
//
// Ray-set format: one ray per line, three whitespace-separated coordinates,
// each "p/q", "r/s*sqrt2" or "p/q+r/s*sqrt2" (integers allowed for p/q).
// Blank lines and lines starting with '#' are ignored.

#include <algorithm>
#include <array>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "fpks/errors.hpp"
#include "fpks/q2.hpp"

namespace fpks {

/// A one-dimensional subspace of R^3 with coordinates in Q(sqrt2). The stored
/// representative is the input scaled by +-1 so that its first nonzero
/// component is positive; equality uses the canonical key (first nonzero
/// component scaled to 1), so r and any nonzero multiple of r compare equal.
class ExactRay {
public:
    static ExactRay from_components(Q2Vector3 v) {
        if (is_zero(v)) throw ValidationError("a ray needs a nonzero component");
        for (const auto& c : v) {
            if (c.is_zero()) continue;
            if (c.sign() < 0)
                for (auto& x : v) x = -x;
            break;
        }
        Q2Vector3 key = canonicalize(v);
        return ExactRay(std::move(v), std::move(key));
    }

    /// Scales so the first nonzero component is 1.
    static Q2Vector3 canonicalize(Q2Vector3 v) {
        for (const auto& c : v) {
            if (!c.is_zero()) {
                const Q2Scalar inv = c.inverse();
                for (auto& x : v) x *= inv;
                return v;
            }
        }
        return v;
    }

    const Q2Vector3& components() const { return c_; }
    const Q2Vector3& canonical() const { return key_; }
    const Q2Scalar& operator[](std::size_t i) const { return c_[i]; }

    bool orthogonal_to(const ExactRay& o) const { return dot(c_, o.c_).is_zero(); }

    std::array<double, 3> to_double() const {
        return {c_[0].to_double(), c_[1].to_double(), c_[2].to_double()};
    }

    std::string to_string() const { return fpks::to_string(c_); }

    friend bool operator==(const ExactRay& l, const ExactRay& r) { return l.key_ == r.key_; }

private:
    ExactRay(Q2Vector3 c, Q2Vector3 key) : c_(std::move(c)), key_(std::move(key)) {}
    Q2Vector3 c_;
    Q2Vector3 key_;
};

using RayPair = std::array<std::size_t, 2>;
using RayTriad = std::array<std::size_t, 3>;

struct KsSet {
    std::string name;
    std::vector<ExactRay> rays;
    std::vector<RayPair> pairs;   // i < j, lexicographic
    std::vector<RayTriad> triads; // i < j < k, lexicographic

    std::size_t size() const { return rays.size(); }
};

/// All orthogonal pairs and complete orthogonal triads among `rays`, by exact
/// inner products.
inline std::pair<std::vector<RayPair>, std::vector<RayTriad>>
orthogonality_structure(const std::vector<ExactRay>& rays) {
    const std::size_t n = rays.size();
    std::vector<std::vector<char>> orth(n, std::vector<char>(n, 0));
    std::vector<RayPair> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rays[i].orthogonal_to(rays[j])) {
                orth[i][j] = orth[j][i] = 1;
                pairs.push_back({i, j});
            }
    std::vector<RayTriad> triads;
    for (const auto& [i, j] : pairs)
        for (std::size_t k = j + 1; k < n; ++k)
            if (orth[i][k] && orth[j][k]) triads.push_back({i, j, k});
    return {std::move(pairs), std::move(triads)};
}

/// Verifies stored pairs/triads against an exact recomputation. Throws
/// DataIntegrityError on any mismatch or on duplicate rays.
inline void validate_ks_set(const KsSet& ks) {
    for (std::size_t i = 0; i < ks.rays.size(); ++i)
        for (std::size_t j = i + 1; j < ks.rays.size(); ++j)
            if (ks.rays[i] == ks.rays[j])
                throw DataIntegrityError("ray set '" + ks.name + "' lists ray " + ks.rays[i].to_string() +
                                         " twice");
    auto in_range = [&](std::size_t k) { return k < ks.rays.size(); };
    for (const auto& [i, j] : ks.pairs)
        if (!in_range(i) || !in_range(j) || !ks.rays[i].orthogonal_to(ks.rays[j]))
            throw DataIntegrityError("ray set '" + ks.name + "' has a non-orthogonal stored pair");
    for (const auto& t : ks.triads)
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = a + 1; b < 3; ++b)
                if (!in_range(t[a]) || !in_range(t[b]) || !ks.rays[t[a]].orthogonal_to(ks.rays[t[b]]))
                    throw DataIntegrityError("ray set '" + ks.name + "' has a non-orthogonal stored triad");
    const auto [pairs, triads] = orthogonality_structure(ks.rays);
    if (pairs != ks.pairs) throw DataIntegrityError("ray set '" + ks.name + "' pair list is incomplete");
    if (triads != ks.triads)
        throw DataIntegrityError("ray set '" + ks.name + "' triad list is incomplete");
}

inline KsSet make_ks_set(std::string name, std::vector<ExactRay> rays) {
    KsSet ks{std::move(name), std::move(rays), {}, {}};
    std::tie(ks.pairs, ks.triads) = orthogonality_structure(ks.rays);
    validate_ks_set(ks);
    return ks;
}

/// Reads rays in the ray-set text format.
inline std::vector<ExactRay> parse_rays(std::istream& in) {
    std::vector<ExactRay> rays;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string t; fields >> t;) tokens.push_back(t);
        if (tokens.size() != 3)
            throw ValidationError("line " + std::to_string(lineno) + ": expected 3 coordinates, got " +
                                  std::to_string(tokens.size()));
        Q2Vector3 v;
        try {
            for (std::size_t k = 0; k < 3; ++k) v[k] = parse_q2(tokens[k]);
            rays.push_back(ExactRay::from_components(std::move(v)));
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return rays;
}

inline std::vector<ExactRay> parse_rays(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_rays(in);
}

inline std::string format_rays(const std::vector<ExactRay>& rays) {
    std::string out;
    for (const auto& r : rays)
        out += r[0].to_string() + " " + r[1].to_string() + " " + r[2].to_string() + "\n";
    return out;
}

namespace data {

// 33 rays: all coordinate permutations and sign changes of (0,0,1),
// (0,1,1), (0,1,sqrt2) and (1,1,sqrt2), identified up to overall sign.
inline constexpr std::string_view kPeres33 = R"(# Peres 33-ray set
1 0 0
0 1 0
0 0 1
0 1 1
0 1 -1
1 0 1
1 0 -1
1 1 0
1 -1 0
0 1 sqrt2
0 1 -sqrt2
0 sqrt2 1
0 sqrt2 -1
1 0 sqrt2
1 0 -sqrt2
sqrt2 0 1
sqrt2 0 -1
1 sqrt2 0
1 -sqrt2 0
sqrt2 1 0
sqrt2 -1 0
1 1 sqrt2
1 1 -sqrt2
1 -1 sqrt2
1 -1 -sqrt2
1 sqrt2 1
1 sqrt2 -1
1 -sqrt2 1
1 -sqrt2 -1
sqrt2 1 1
sqrt2 1 -1
sqrt2 -1 1
sqrt2 -1 -1
)";

inline constexpr std::string_view kCoordinateTriad = R"(# x, y, z axes
1 0 0
0 1 0
0 0 1
)";

// Two tripods sharing the x axis.
inline constexpr std::string_view kDemoColourable = R"(1 0 0
0 1 0
0 0 1
0 1 1
0 1 -1
)";

} // namespace data

inline std::vector<std::string> ks_set_names() { return {"peres33", "coordinate-triad", "demo-colourable", "empty"}; }

inline KsSet load_ks_set(std::string_view name) {
    if (name == "peres33") return make_ks_set("peres33", parse_rays(data::kPeres33));
    if (name == "coordinate-triad") return make_ks_set("coordinate-triad", parse_rays(data::kCoordinateTriad));
    if (name == "demo-colourable") return make_ks_set("demo-colourable", parse_rays(data::kDemoColourable));
    if (name == "empty") return make_ks_set("empty", {});
    throw LookupError("unknown KS set '" + std::string(name) + "'");
}

inline KsSet load_ks_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LookupError("cannot open ray-set file '" + path + "'");
    return make_ks_set(path, parse_rays(in));
}

} // namespace fpks

#endif
