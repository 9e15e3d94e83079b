#pragma once

#include <string>
#include <vector>

namespace covlab {

// End-to-end demonstration pipelines over the built-in datasets.  Each
// scenario runs a fixed list of named checks and reports pass/fail with a
// short witness string; reports are deterministic for fixed options.
struct ScenarioCheck {
    std::string name;
    bool pass = false;
    std::string detail;  // counts, witnesses, or the failure reason
};

struct ScenarioReport {
    std::string scenario;
    std::vector<ScenarioCheck> checks;
    long long millis = 0;

    bool passed() const {
        for (const ScenarioCheck& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct ScenarioOptions {
    int radius = 2;      // truncation radius where applicable
    int max_pieces = 3;  // bound for the exhaustive searches
    int bound = 2;       // wall diameter bound
    unsigned seed = 1;   // randomized mutation checks only
};

std::vector<std::string> scenario_names();

// Throws std::invalid_argument on an unknown name.
ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& opt = {});

std::string report_text(const ScenarioReport& rep);
std::string report_json(const ScenarioReport& rep);

}  // namespace covlab
