#ifndef FPKS_TOOLS_REPORT_HPP
#define FPKS_TOOLS_REPORT_HPP

// JSON views of the library's result types.

#include <cstdio>
#include <string>

#include "fpks/fpks.hpp"
#include "json.hpp"

namespace fpks::report {

using nlohmann::json;

inline json vec(const Vector3& v) { return json::array({v[0], v[1], v[2]}); }
inline json vec(const UnitVector3& v) { return vec(v.vec()); }

inline json complex_vec(const ComplexVector3& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(json::array({c.real(), c.imag()}));
    return out;
}

/// Row-major, each entry as [re, im].
inline json matrix(const ComplexMatrix3& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < 3; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < 3; ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string outcome_key(Outcome o) {
    switch (o) {
    case Outcome::plus: return "+1";
    case Outcome::zero: return "0";
    case Outcome::minus: return "-1";
    }
    return "?";
}

inline json alphas(const AlphaProfile& a) {
    return {{"alpha1", a.alpha1},
            {"alpha2", a.alpha2},
            {"alpha3", a.alpha3},
            {"alpha4", a.alpha4},
            {"sum_rule_residual", a.sum_rule_residual()}};
}

inline json density(const ErrorDensity& w) {
    return {{"kind", std::string(to_string(w.kind()))}, {"epsilon", w.epsilon()}, {"support", w.support()}};
}

inline json quadrature(const QuadratureSpec& q) {
    return {{"theta_points", q.theta_points}, {"phi_points", q.phi_points}, {"tolerance", q.tolerance}};
}

inline json povm(const SpinPovm& p) {
    json effects = json::object();
    for (Outcome o : kOutcomes) effects[outcome_key(o)] = matrix(p[o].matrix());
    return {{"direction", vec(p.direction)},
            {"density", density(p.density)},
            {"quadrature", quadrature(p.quadrature)},
            {"effects", effects},
            {"resolution_of_identity_residual", povm_invariant_residual(p.effects)}};
}

inline json colours(const RayColours& c) {
    json out = json::array();
    for (Colour x : c) out.push_back(std::string(to_string(x)));
    return out;
}

inline std::string hex(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

inline json verdict(const KsSet& ks, const ColourabilityVerdict& v) {
    json out{{"satisfiable", v.satisfiable},
             {"nodes_explored", v.nodes_explored},
             {"certificate",
              {{"decisions", v.certificate.decisions.size()},
               {"conflicts", v.certificate.conflict_depths.size()},
               {"max_depth", v.certificate.max_depth},
               {"digest", hex(v.certificate.digest)}}}};
    if (v.assignment) {
        json a = json::array();
        for (std::size_t r = 0; r < ks.size(); ++r)
            a.push_back({{"ray", ks.rays[r].to_string()}, {"colour", std::string(to_string((*v.assignment)[r]))}});
        out["assignment"] = std::move(a);
    } else {
        out["assignment"] = nullptr;
    }
    return out;
}

inline json ks_summary(const KsSet& ks) {
    return {{"name", ks.name}, {"rays", ks.size()}, {"pairs", ks.pairs.size()}, {"triads", ks.triads.size()}};
}

inline json theorem1(const KsSet& ks, const Theorem1Report& r) {
    json slack = json::object();
    for (std::size_t k = 0; k < 4; ++k)
        slack[std::string(to_string(static_cast<AlphaConstraint>(k)))] = r.slack[k];
    return {{"covariance",
             {{"samples", r.covariance.samples},
              {"max_residual", r.covariance.max_residual},
              {"tolerance", r.covariance.tolerance},
              {"passed", r.covariance.passed}}},
            {"alphas", alphas(r.alphas)},
            {"constraint_slack", slack},
            {"hypothesis_ok", r.hypothesis_ok},
            {"tripods",
             {{"tripods", r.tripods.tripods},
              {"checks", r.tripods.checks},
              {"one_true_two_false", r.tripods.one_true_two_false}}},
            {"ks_set", ks_summary(ks)},
            {"colourability", verdict(ks, r.verdict)},
            {"conclusion", std::string(to_string(r.conclusion))}};
}

inline json simulation(const SimulationReport& s) {
    json counts = json::object(), freq = json::object(), expected = json::object(), z = json::object();
    for (Outcome o : kOutcomes) {
        const std::size_t i = outcome_index(o);
        counts[outcome_key(o)] = s.counts[i];
        freq[outcome_key(o)] = s.frequencies[i];
        expected[outcome_key(o)] = s.expected[i];
        z[outcome_key(o)] = s.z_scores[i];
    }
    return {{"trials", s.trials},
            {"seed", s.seed},
            {"generator", std::string(s.generator)},
            {"counts", counts},
            {"frequencies", freq},
            {"expected", expected},
            {"z_scores", z},
            {"within_3_sigma", s.within_sigma(3.0)}};
}

inline json witness(const CovarianceViolationReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"direction", row.sample.direction.to_string()},
                        {"axis", row.sample.axis.to_string()},
                        {"pi4_image", to_string(row.image)},
                        {"pi4_image_rational", row.image_check.rational},
                        {"witness", row.image_check.witness},
                        {"pi2_control_image", to_string(row.control_image)},
                        {"pi2_control_rational", row.control_check.rational}});
    json out{{"rows", rows}, {"non_rational_images", r.non_rational_images}, {"violation_found", r.violation_found}};
    out["conclusion"] = r.conclusion.empty() ? json(nullptr) : json(r.conclusion);
    return out;
}

} // namespace fpks::report

#endif
