#include "netmig/economics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace netmig {

std::string strategy_name(const StrategySet& s) {
    std::string out(2, '0');
    if (s.pce) out[0] = '1';
    if (s.sdn) out[1] = '1';
    return out;
}

std::vector<std::string> validate_params(const EconParams& p) {
    std::vector<std::string> bad;
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };

    if (!(p.eta >= 1.0 && p.eta <= 2.0)) bad.push_back("eta_in_range");
    if (!in_unit(p.c_pce) || !in_unit(p.c_sdn))
        bad.push_back("capex_coeff_in_range");
    if (!in_unit(p.a_pce) || !in_unit(p.a_sdn) || !in_unit(p.a_nopce) ||
        !in_unit(p.a_nosdn))
        bad.push_back("opex_coeff_in_range");

    // Each technology must actually reduce the operating burden it automates.
    if (!(p.a_pce < p.a_nopce)) bad.push_back("opex_pce_below_manual");
    if (!(p.a_sdn < p.a_nosdn)) bad.push_back("opex_sdn_below_manual");

    // Deployment must not be cheaper than the joint running cost it enables,
    // or adoption would be a free lunch at any traffic level. Every bound
    // is non-strict with rounding slack: the stock parameters sit exactly
    // on them (c_pce = a_pce + a_sdn, which at eta = 1 is also the joint
    // running cost), and 0.1 + 0.2 lands a few ulp above 0.3.
    const double slack = 1e-12;
    const double joint_opex = (p.a_pce + p.a_sdn) / p.eta - slack;
    if (!(p.c_pce >= joint_opex)) bad.push_back("capex_pce_ge_joint_opex");
    if (!(p.c_sdn >= joint_opex)) bad.push_back("capex_sdn_ge_joint_opex");
    if (!((p.c_pce + p.c_sdn) / p.eta >= joint_opex))
        bad.push_back("capex_both_ge_joint_opex");
    const double opex_sum = p.a_pce + p.a_sdn - slack;
    if (!(p.c_pce >= opex_sum)) bad.push_back("capex_pce_ge_opex_sum");
    if (!(p.c_sdn >= opex_sum)) bad.push_back("capex_sdn_ge_opex_sum");

    return bad;
}

std::vector<StrategySet> feasible_transitions(const StrategySet& a) {
    std::vector<StrategySet> out;
    if (!a.pce && !a.sdn) {
        out.push_back({true, false});
        out.push_back({false, true});
        out.push_back({true, true});
    } else if (!a.sdn) {
        out.push_back({true, true});
    } else if (!a.pce) {
        out.push_back({true, true});
    }
    return out;
}

double capex_coeff(const EconParams& p, const StrategySet& a,
                   const StrategySet& to) {
    if (to == a) return 0.0;
    if (!to.includes(a) || to.count() <= a.count())
        throw std::invalid_argument("capex: transition must add technologies");
    const bool add_pce = to.pce && !a.pce;
    const bool add_sdn = to.sdn && !a.sdn;
    if (add_pce && add_sdn) return (p.c_pce + p.c_sdn) / p.eta;
    return add_pce ? p.c_pce : p.c_sdn;
}

double opex_coeff(const EconParams& p, const StrategySet& a) {
    if (a.pce && a.sdn) return (p.a_pce + p.a_sdn) / p.eta;
    double pce_part = a.pce ? p.a_pce : p.a_nopce;
    double sdn_part = a.sdn ? p.a_sdn : p.a_nosdn;
    return pce_part + sdn_part;
}

double capex(const EconParams& p, const StrategySet& a, const StrategySet& to,
             double t_next) {
    return capex_coeff(p, a, to) * std::sqrt(t_next);
}

double opex(const EconParams& p, const StrategySet& a, double t) {
    return opex_coeff(p, a) * std::sqrt(t);
}

double revenue(double t) { return t * t; }

double payoff(const EconParams& p, const StrategySet& a, const StrategySet& to,
              double t, double t_next) {
    if (to == a) return 0.0;
    const double invest = capex(p, a, to, t_next);
    const double gain =
        (revenue(t_next) - revenue(t)) - invest - (opex(p, to, t_next) - opex(p, a, t));
    if (invest > 0.0) return gain / invest;
    return gain > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
}

}  // namespace netmig
