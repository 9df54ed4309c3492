#include "quadctrl/analyze.hpp"

#include "quadctrl/chain.hpp"
#include "quadctrl/lie.hpp"
#include "quadctrl/sim.hpp"
#include "quadctrl/stlc.hpp"

#include <sstream>

namespace quadctrl {

namespace {

template <typename T>
Json chain_to_json(const ChainResult<T>& chain) {
    Json j;
    j["dims"] = chain.dims;
    j["stationary_at"] = chain.stationary_at;
    j["degree_of_reachability"] = chain.degree_of_reachability;
    Json bases = Json::array();
    for (const auto& s : chain.subspaces) bases.push_back(basis_to_json(s));
    j["bases"] = bases;
    return j;
}

template <typename T>
Verdict accessibility_as_verdict(const AccessibilityVerdict<T>& av) {
    Verdict v;
    v.tag = av.tag;
    v.rule = "chain-rank";
    v.description = av.tag == VerdictTag::StronglyAccessible
                        ? "subspace chain reaches full dimension"
                        : "subspace chain stalls below full dimension";
    v.certificate["degree_of_reachability"] = av.degree_of_reachability;
    v.certificate["dims"] = av.chain.dims;
    return v;
}

RSystem as_rational(const AnySystem& sys) {
    if (const auto* r = std::get_if<RSystem>(&sys)) return *r;
    return rationalize_system(std::get<DSystem>(sys));
}

DSystem as_double(const AnySystem& sys) {
    if (const auto* d = std::get_if<DSystem>(&sys)) return *d;
    return to_double_system(std::get<RSystem>(sys));
}

}  // namespace

AnalysisReport analyze(const AnySystem& sys, const AnalyzeOptions& opt) {
    AnalysisReport report;
    report.system = system_to_json(sys);
    report.mode = mode_of(sys);

    std::size_t degree = 0;
    std::size_t n = 0;
    std::visit(
        [&](const auto& s) {
            auto access = accessibility_verdict(s);
            report.chain = chain_to_json(access.chain);
            report.accessibility = accessibility_as_verdict(access);
            report.stlc = stlc_verdict(s);
            degree = access.degree_of_reachability;
            n = s.n;
        },
        sys);

    if (opt.oracle) {
        RSystem rsys = as_rational(sys);
        auto span = c0_span_at_origin(rsys, opt.oracle_depth, opt.oracle_bracket_cap);
        auto chain = s_chain(rsys);
        bool agrees = span.same_span(chain.final());
        Json j;
        j["rank"] = span.rank();
        j["basis"] = basis_to_json(span);
        j["max_len"] = opt.oracle_depth;
        j["agrees_with_chain"] = agrees;
        report.oracle = j;
        if (!agrees)
            report.warnings.push_back("bracket oracle span differs from the subspace chain");
    }

    if (opt.simulate) {
        DSystem dsys = as_double(sys);
        CloudStats stats = reachable_cloud(dsys, opt.sim_horizon, opt.sim_samples, opt.sim_bound,
                                           opt.sim_segments, opt.sim_seed, opt.sim_dt);
        Json j;
        j["samples"] = opt.sim_samples;
        j["dropped"] = stats.dropped;
        j["horizon"] = opt.sim_horizon;
        j["seed"] = opt.sim_seed;
        j["empirical_rank"] = stats.empirical_rank;
        j["singular_values"] = stats.singular_values;
        j["orthant_coverage"] = stats.orthant_coverage;
        report.simulation = j;
        if (stats.empirical_rank > degree)
            report.warnings.push_back(
                "simulated endpoint cloud rank exceeds the analytic degree of reachability");
    }

    return report;
}

Json AnalysisReport::to_json() const {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kToolVersion;
    j["system"] = system;
    j["mode"] = mode == Mode::Rational ? "rational" : "float";
    j["chain"] = chain;
    j["accessibility"] = accessibility.to_json();
    j["stlc"] = stlc.to_json();
    if (oracle) j["oracle"] = *oracle;
    if (simulation) j["simulation"] = *simulation;
    if (!warnings.empty()) j["warnings"] = warnings;
    return j;
}

std::string AnalysisReport::to_text() const {
    std::ostringstream out;
    out << "mode: " << (mode == Mode::Rational ? "rational" : "float") << "\n";
    out << "chain dims:";
    for (const auto& d : chain.at("dims")) out << " " << d;
    out << "  (degree of reachability " << chain.at("degree_of_reachability").get<std::size_t>()
        << ")\n";
    out << "accessibility: " << to_string(accessibility.tag) << "\n";
    out << "controllability: " << to_string(stlc.tag) << "  [rule: " << stlc.rule << "]\n";
    out << "  " << stlc.description << "\n";
    if (oracle) {
        out << "oracle: rank " << oracle->at("rank").get<std::size_t>() << ", "
            << (oracle->at("agrees_with_chain").get<bool>() ? "agrees with chain"
                                                            : "DISAGREES with chain")
            << "\n";
    }
    if (simulation) {
        out << "simulation: empirical rank " << simulation->at("empirical_rank").get<std::size_t>()
            << " from " << simulation->at("samples").get<std::size_t>() << " samples ("
            << simulation->at("dropped").get<std::size_t>() << " dropped)\n";
    }
    for (const auto& w : warnings) out << "warning: " << w << "\n";
    return out.str();
}

}  // namespace quadctrl
