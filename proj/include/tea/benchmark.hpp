#pragma once

#include "tea/svo.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tea {

// One gold annotation: expected role lemmas (event as the full bundled
// phrase) plus sentence-level voice flags. __none__ marks an empty slot.
struct GoldTriple {
    std::string sent_id;
    std::string agent;
    std::string event;
    std::string target;
    int is_passive = 0;
    int passive_approx = 0;
};

// TSV: sent_id<TAB>agent<TAB>event<TAB>target<TAB>is_passive<TAB>passive_approx
std::vector<GoldTriple> load_gold_tsv(const std::string& path);

struct RoleScore {
    std::string name;
    std::int64_t correct = 0;        // exact agreements, both-__none__ included
    std::int64_t true_positives = 0; // non-empty exact matches only
    std::int64_t total = 0;
    double accuracy = 0.0;
};

struct ClassScore {
    std::string name;
    std::int64_t correct = 0;
    std::int64_t total = 0;
    double accuracy = 0.0;
};

struct EvalReport {
    std::vector<RoleScore> roles; // Agent, Event, Target
    std::vector<ClassScore> classes; // Passive, Active
    double macro_accuracy = 0.0;   // mean of per-class accuracies
    double overall_accuracy = 0.0; // micro: total correct / total
};

// The predicted triple of a sentence is its first record (lowest triple_id);
// a sentence with no prediction counts as __none__ in every role.
EvalReport evaluate_roles(const std::vector<SvoRecord>& predicted,
                          const std::vector<GoldTriple>& gold);

// Per-class accuracy of sentence-level passive flags; key sets must match.
EvalReport evaluate_passive(const std::map<std::string, int>& predicted_flags,
                            const std::map<std::string, int>& gold_flags);

// Fixed-width report tables.
std::string format_role_report(const EvalReport& report, const std::string& extractor_name);
std::string format_passive_report(const EvalReport& report);

} // namespace tea
