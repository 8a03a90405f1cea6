#pragma once

#include <functional>
#include <string>
#include <vector>

namespace drin {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    double limit = 0;  // wall-clock budget in seconds
    std::string detail;
};

// Runs the acceptance criteria (all of them when `only` is empty).  The
// callback sees each result as soon as it is known.
std::vector<CriterionResult> run_acceptance(int threads, const std::function<void(const CriterionResult&)>& on_result = {},
                                            const std::vector<int>& only = {});

std::string format_result(const CriterionResult& r);  // "PASS  1 name (1.23 s / 60 s)"

}  // namespace drin
