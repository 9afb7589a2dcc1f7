#pragma once

#include "tea/graph.hpp"
#include "tea/lexicons.hpp"
#include "tea/svo.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tea {

// Per-node degree/frequency metrics for one role.
//   K  distinct opposite-role neighbors over syntactic edges
//   K* relative degree, K_i / sum of K over the other same-role nodes
//   F  total record occurrences across the node's edges
//   RI repetitiveness index, F/K
struct MetricsRow {
    std::string label;
    Role role = Role::AGENT;
    std::int64_t degree = 0;
    std::optional<double> relative; // unset until relative_degree, or undefined
    std::int64_t frequency = 0;
    double repetitiveness = 0.0;
};

struct MetricsTable {
    Role role = Role::AGENT;
    std::vector<MetricsRow> rows; // sorted by K descending, label ascending
};

MetricsTable node_metrics(const std::vector<SvoRecord>& records, Role role,
                          EventKey event_key = EventKey::HEAD_LEMMA);

// Fills MetricsRow::relative in place. A single-row table is left undefined.
void relative_degree(MetricsTable& table);

struct EdgeWeightRow {
    std::string source;
    std::string target;
    std::int64_t frequency = 0;
    double normalized = 0.0; // sums to 1 within the table
};

struct EdgeWeightTable {
    Relation relation = Relation::AGENT_EVENT;
    std::string subcorpus;
    std::vector<EdgeWeightRow> rows;
};

EdgeWeightTable normalized_edge_weights(const std::vector<SvoRecord>& records, Relation relation,
                                        const std::string& subcorpus_id,
                                        EventKey event_key = EventKey::HEAD_LEMMA);

struct ProminenceRow {
    std::string source;
    std::string target;
    double nw_a = 0.0;
    double nw_b = 0.0;
    double prominence = 0.0; // nw_a - nw_b
};

// Edges present in either table; absent sides contribute 0. Tables must use
// the same relation type.
std::vector<ProminenceRow> prominence(const EdgeWeightTable& a, const EdgeWeightTable& b);

struct KendallResult {
    bool defined = false;
    double tau = 0.0;
    double p = 1.0;
    size_t n_shared = 0;
};

// Tie-corrected tau-b with the normal-approximation two-sided p-value.
KendallResult kendall_tau_b(const std::vector<double>& xs, const std::vector<double>& ys);

// Normalized weights of the anchor's AGENT_EVENT edges shared by both
// corpora; undefined below two shared edges.
KendallResult kendall_tau_shared(const std::vector<SvoRecord>& records_a,
                                 const std::vector<SvoRecord>& records_b, Role anchor_role,
                                 const std::string& anchor_lemma,
                                 EventKey event_key = EventKey::HEAD_LEMMA);

struct EmotionStat {
    std::string emotion;
    std::int64_t observed = 0;
    double mu = 0.0;
    double sigma = 0.0;
    bool defined = false; // sigma > 0
    double z = 0.0;
};

struct EmotionProfile {
    size_t samples = 0;
    std::uint64_t seed = 0;
    size_t word_count = 0;
    std::vector<EmotionStat> stats; // fixed emotion order
};

// Observed emotion counts of the word multiset against M equal-size draws
// from the lexicon vocabulary (uniform with replacement, seeded generator).
EmotionProfile emotion_zscores(const std::vector<std::string>& words, const EmotionLexicon& lex,
                               size_t samples, std::uint64_t seed);

enum class NormMode { SPLIT, MEAN };

struct NormJoin {
    std::vector<double> scores;
    size_t omitted = 0; // entries with no norm coverage
};

// SPLIT flattens multiword labels to one entry per word; MEAN scores each
// label by the mean of its found words.
NormJoin join_norms(const std::vector<std::string>& labels, const ScalarNorms& norms,
                    NormMode mode = NormMode::SPLIT);

struct RankSumResult {
    double u = 0.0; // U statistic of the first sample
    double p = 1.0; // two-sided
    bool exact = false;
};

// Mann-Whitney U. Exact tie-aware enumeration when n_a*n_b <= 400, else the
// tie-corrected normal approximation with continuity correction.
RankSumResult rank_sum_test(const std::vector<double>& a, const std::vector<double>& b);

// Concatenates tables, re-offsetting triple ids so they stay unique.
std::vector<SvoRecord> merge_svo_tables(const std::vector<std::vector<SvoRecord>>& tables);

// Stable text emitters.
std::string metrics_tsv(const MetricsTable& table);
std::string edge_weights_tsv(const EdgeWeightTable& table);
std::string format_double(double v);

} // namespace tea
