#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace netmig {

// Which control-plane technologies an island runs. Adoption is monotone:
// a technology, once deployed, is never abandoned.
struct StrategySet {
    bool pce = false;
    bool sdn = false;

    int count() const { return (pce ? 1 : 0) + (sdn ? 1 : 0); }
    bool includes(const StrategySet& other) const {
        return (pce || !other.pce) && (sdn || !other.sdn);
    }
    friend bool operator==(const StrategySet& a, const StrategySet& b) {
        return a.pce == b.pce && a.sdn == b.sdn;
    }
    friend bool operator!=(const StrategySet& a, const StrategySet& b) {
        return !(a == b);
    }
};

std::string strategy_name(const StrategySet& s);  // "00", "10", "01", "11"

struct EconParams {
    double c_pce = 0.3;    // capital cost coefficient, path computation
    double c_sdn = 0.4;    // capital cost coefficient, centralized control
    double eta = 1.5;      // synergy discount when both run together
    double a_pce = 0.1;    // operating coefficient with automated computation
    double a_sdn = 0.2;    // operating coefficient with centralized control
    double a_nopce = 0.5;  // operating coefficient, manual path computation
    double a_nosdn = 0.8;  // operating coefficient, distributed control
};

// Returns the names of every violated well-formedness constraint; empty
// means the parameter set is usable. Constraints ensure each upgrade lowers
// operating cost and that capital outlays are not dominated by trivia.
std::vector<std::string> validate_params(const EconParams& p);

// Strict supersets reachable from `a` (monotone adoption).
std::vector<StrategySet> feasible_transitions(const StrategySet& a);

// Coefficient tables for the cost model.
double capex_coeff(const EconParams& p, const StrategySet& a,
                   const StrategySet& to);
double opex_coeff(const EconParams& p, const StrategySet& a);

// Deployment cost of moving to `to` while expecting to carry t_next traffic.
double capex(const EconParams& p, const StrategySet& a, const StrategySet& to,
             double t_next);

// Running cost under strategy `a` at traffic t. Sublinear in t: operating a
// network gets relatively cheaper at scale.
double opex(const EconParams& p, const StrategySet& a, double t);

// Income from carrying t units of transit traffic.
double revenue(double t);

// Return on investment of the move a -> to given current traffic t and
// anticipated traffic t_next. Staying put is worth exactly 0. When the move
// costs nothing (t_next = 0), the sign of the benefit decides +/-infinity.
double payoff(const EconParams& p, const StrategySet& a, const StrategySet& to,
              double t, double t_next);

}  // namespace netmig
