#ifndef GABORLAB_ACCEPTANCE_HPP
#define GABORLAB_ACCEPTANCE_HPP

// The acceptance criteria as runnable checks. Tolerances are fixed here.

#include <gaborlab/types.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace gaborlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Headline quantity and the bound it is compared with.
    Real measured = 0;
    Real threshold = 0;
    std::string detail;
    Real seconds = 0;
};

inline constexpr int kCriterionCount = 12;

/// Runs criterion `id` (1..12). Throws InvalidArgument for other ids.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();

/// "PASS|FAIL  #id  name  measured=... threshold=... (seconds)".
std::string summary_line(const CriterionResult &r);
nlohmann::json to_json(const CriterionResult &r);

} // namespace gaborlab

#endif
