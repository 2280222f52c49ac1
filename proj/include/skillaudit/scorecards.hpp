#pragma once

#include <map>
#include <string>
#include <vector>

namespace skillaudit {

struct CriterionScore {
    std::string id;
    std::string name;
    double points = 0.0;
    double max_points = 0.0;
    std::string rationale;
};

struct StaticScorecard {
    std::vector<CriterionScore> entries; // one per static criterion, rubric order
    std::map<std::string, double> dimension_subtotals; // normalized to 100 per dimension
    double s_static = 0.0; // [0,100]
};

struct DynamicScorecard {
    std::string input_id;
    std::vector<CriterionScore> layer1_entries;
    std::vector<CriterionScore> layer2_entries;
    double layer1_points = 0.0; // [0,40]
    double layer2_points = 0.0; // [0,60]
    double total = 0.0;         // layer1 + layer2 exactly
};

} // namespace skillaudit
