#ifndef FPKS_KS_SEARCH_HPP
#define FPKS_KS_SEARCH_HPP

// Exact decision procedure for the tripod colouring problem on a KS set:
// one boolean (AT) per ray, every complete triad has exactly one AT, every
// orthogonal pair has at most one AT.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "fpks/colouring.hpp"
#include "fpks/errors.hpp"
#include "fpks/ksets.hpp"

namespace fpks {

struct SearchOptions {
    /// Variable-order tiebreak: a permutation of ray indices, earlier entries
    /// preferred among equally constrained rays. Empty means index order.
    std::vector<std::size_t> tiebreak;
};

struct SearchDecision {
    std::size_t ray;
    Colour value;
    std::size_t depth;
};

/// Deterministic digest of the search trace: every branch decision and the
/// depth of every contradiction, in the order they occurred.
struct SearchCertificate {
    std::vector<SearchDecision> decisions;
    std::vector<std::size_t> conflict_depths;
    std::size_t max_depth = 0;
    std::uint64_t digest = 14695981039346656037ull; // FNV-1a offset basis
};

struct ColourabilityVerdict {
    bool satisfiable = false;
    std::optional<std::vector<Colour>> assignment; // indexed by ray, AT or AF
    std::uint64_t nodes_explored = 0;
    SearchCertificate certificate;
};

namespace detail {

class ColouringSolver {
public:
    ColouringSolver(const KsSet& ks, const SearchOptions& options)
        : ks_(ks), adj_(ks.size()), triads_of_(ks.size()), rank_(ks.size()), value_(ks.size(), kUnset) {
        for (const auto& [i, j] : ks.pairs) {
            adj_[i].push_back(j);
            adj_[j].push_back(i);
        }
        for (std::size_t t = 0; t < ks.triads.size(); ++t)
            for (std::size_t r : ks.triads[t]) triads_of_[r].push_back(t);
        if (options.tiebreak.empty()) {
            std::iota(rank_.begin(), rank_.end(), std::size_t{0});
        } else {
            if (options.tiebreak.size() != ks.size())
                throw ValidationError("tiebreak order must list every ray exactly once");
            std::vector<char> seen(ks.size(), 0);
            for (std::size_t pos = 0; pos < options.tiebreak.size(); ++pos) {
                const std::size_t r = options.tiebreak[pos];
                if (r >= ks.size() || seen[r]) throw ValidationError("tiebreak order is not a permutation");
                seen[r] = 1;
                rank_[r] = pos;
            }
        }
    }

    /// Stops at the first solution when `stop_at_first`, otherwise counts all.
    void run(bool stop_at_first) {
        stop_at_first_ = stop_at_first;
        verdict_.nodes_explored = 1;
        dfs(0);
    }

    ColourabilityVerdict& verdict() { return verdict_; }
    std::uint64_t solutions() const { return solutions_; }

private:
    static constexpr signed char kUnset = -1, kFalse = 0, kTrue = 1;

    bool enqueue(std::size_t r, signed char v) {
        if (value_[r] == v) return true;
        if (value_[r] != kUnset) return false;
        value_[r] = v;
        trail_.push_back(r);
        queue_.push_back(r);
        return true;
    }

    bool propagate() {
        while (head_ < queue_.size()) {
            const std::size_t r = queue_[head_++];
            if (value_[r] == kTrue) {
                for (std::size_t nb : adj_[r])
                    if (!enqueue(nb, kFalse)) return false;
            } else {
                for (std::size_t t : triads_of_[r]) {
                    int unset = 0;
                    bool has_true = false;
                    std::size_t last = 0;
                    for (std::size_t x : ks_.triads[t]) {
                        if (value_[x] == kTrue) has_true = true;
                        if (value_[x] == kUnset) {
                            ++unset;
                            last = x;
                        }
                    }
                    if (has_true) continue;
                    if (unset == 0) return false;
                    if (unset == 1 && !enqueue(last, kTrue)) return false;
                }
            }
        }
        return true;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            value_[trail_.back()] = kUnset;
            trail_.pop_back();
        }
        queue_.clear();
        head_ = 0;
    }

    /// Unassigned ray in the most triads still lacking an AT; ties by rank.
    std::optional<std::size_t> choose() const {
        std::optional<std::size_t> best;
        int best_score = -1;
        for (std::size_t r = 0; r < value_.size(); ++r) {
            if (value_[r] != kUnset) continue;
            int score = 0;
            for (std::size_t t : triads_of_[r]) {
                bool has_true = false;
                for (std::size_t x : ks_.triads[t]) has_true |= (value_[x] == kTrue);
                score += !has_true;
            }
            if (score > best_score || (score == best_score && rank_[r] < rank_[*best])) {
                best = r;
                best_score = score;
            }
        }
        return best;
    }

    void mix(std::uint64_t word) {
        auto& h = verdict_.certificate.digest;
        for (int b = 0; b < 8; ++b) {
            h ^= (word >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }

    /// Returns true when the search should stop.
    bool dfs(std::size_t depth) {
        auto& cert = verdict_.certificate;
        cert.max_depth = std::max(cert.max_depth, depth);
        if (!propagate()) {
            cert.conflict_depths.push_back(depth);
            mix(0xC0u);
            mix(depth);
            return false;
        }
        const auto r = choose();
        if (!r) {
            ++solutions_;
            if (!verdict_.assignment) {
                std::vector<Colour> a(value_.size());
                for (std::size_t k = 0; k < a.size(); ++k) a[k] = value_[k] == kTrue ? Colour::AT : Colour::AF;
                verdict_.assignment = std::move(a);
                verdict_.satisfiable = true;
            }
            return stop_at_first_;
        }
        for (signed char v : {kTrue, kFalse}) {
            ++verdict_.nodes_explored;
            const Colour c = v == kTrue ? Colour::AT : Colour::AF;
            cert.decisions.push_back({*r, c, depth});
            mix(0xDEu);
            mix(*r);
            mix(static_cast<std::uint64_t>(v));
            mix(depth);
            const std::size_t mark = trail_.size();
            enqueue(*r, v);
            if (dfs(depth + 1)) return true;
            undo_to(mark);
        }
        return false;
    }

    const KsSet& ks_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::vector<std::size_t>> triads_of_;
    std::vector<std::size_t> rank_;
    std::vector<signed char> value_;
    std::vector<std::size_t> trail_;
    std::vector<std::size_t> queue_;
    std::size_t head_ = 0;
    bool stop_at_first_ = true;
    std::uint64_t solutions_ = 0;
    ColourabilityVerdict verdict_;
};

} // namespace detail

/// Backtracking with unit propagation; most-constrained variable first.
/// The verdict and its certificate are reproducible for fixed options.
inline ColourabilityVerdict colourability_search(const KsSet& ks, const SearchOptions& options = {}) {
    detail::ColouringSolver solver(ks, options);
    solver.run(true);
    return std::move(solver.verdict());
}

/// Number of valid colourings, by exhaustive enumeration.
inline std::uint64_t count_colourings(const KsSet& ks) {
    detail::ColouringSolver solver(ks, {});
    solver.run(false);
    return solver.solutions();
}

/// Checks a total AT/AF assignment against every triad and pair constraint.
/// Independent of the search code.
inline bool verify_colouring(const KsSet& ks, std::span<const Colour> assignment) {
    if (assignment.size() != ks.size())
        throw ValidationError("assignment must colour every ray of the set");
    for (Colour c : assignment)
        if (c == Colour::Uncoloured) throw ValidationError("assignment leaves a ray uncoloured");
    for (const auto& [i, j] : ks.pairs)
        if (assignment[i] == Colour::AT && assignment[j] == Colour::AT) return false;
    for (const auto& t : ks.triads) {
        int at = 0;
        for (std::size_t r : t) at += assignment[r] == Colour::AT;
        if (at != 1) return false;
    }
    return true;
}

} // namespace fpks

#endif
