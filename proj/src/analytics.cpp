#include "tea/analytics.hpp"

#include "tea/errors.hpp"
#include "tea/strings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace tea {

namespace {

double normal_two_sided_p(double z) {
    double p = std::erfc(std::fabs(z) / std::sqrt(2.0));
    return std::min(1.0, std::max(p, 0.0));
}

// Tie-group sizes of a sorted copy.
std::vector<std::int64_t> tie_groups(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<std::int64_t> groups;
    size_t i = 0;
    while (i < v.size()) {
        size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        groups.push_back(static_cast<std::int64_t>(j - i));
        i = j;
    }
    return groups;
}

} // namespace

MetricsTable node_metrics(const std::vector<SvoRecord>& records, Role role, EventKey event_key) {
    MetricsTable table;
    table.role = role;

    std::map<std::string, std::set<std::pair<Role, std::string>>> neighbors;
    std::map<std::string, std::int64_t> freq;

    for (const auto& r : records) {
        const std::string ev = event_key_of(r, event_key);
        const bool has_agent = r.agent != kNone;
        const bool has_target = r.target != kNone;
        switch (role) {
        case Role::AGENT:
            if (has_agent) {
                neighbors[r.agent].insert({Role::EVENT, ev});
                freq[r.agent] += 1;
            }
            break;
        case Role::TARGET:
            if (has_target) {
                neighbors[r.target].insert({Role::EVENT, ev});
                freq[r.target] += 1;
            }
            break;
        case Role::EVENT:
            if (has_agent) {
                neighbors[ev].insert({Role::AGENT, r.agent});
                freq[ev] += 1;
            }
            if (has_target) {
                neighbors[ev].insert({Role::TARGET, r.target});
                freq[ev] += 1;
            }
            break;
        }
    }

    for (const auto& [label, nb] : neighbors) {
        MetricsRow row;
        row.label = label;
        row.role = role;
        row.degree = static_cast<std::int64_t>(nb.size());
        row.frequency = freq[label];
        row.repetitiveness = static_cast<double>(row.frequency) / static_cast<double>(row.degree);
        table.rows.push_back(std::move(row));
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
        if (a.degree != b.degree) return a.degree > b.degree;
        return a.label < b.label;
    });
    return table;
}

void relative_degree(MetricsTable& table) {
    if (table.rows.size() < 2) {
        for (auto& r : table.rows) r.relative.reset();
        return;
    }
    std::int64_t total = 0;
    for (const auto& r : table.rows) total += r.degree;
    for (auto& r : table.rows) {
        const std::int64_t others = total - r.degree;
        r.relative = static_cast<double>(r.degree) / static_cast<double>(others);
    }
}

EdgeWeightTable normalized_edge_weights(const std::vector<SvoRecord>& records, Relation relation,
                                        const std::string& subcorpus_id, EventKey event_key) {
    EdgeWeightTable table;
    table.relation = relation;
    table.subcorpus = subcorpus_id;

    std::map<std::pair<std::string, std::string>, std::int64_t> counts;
    for (const auto& r : records) {
        const std::string ev = event_key_of(r, event_key);
        if (relation == Relation::AGENT_EVENT) {
            if (r.agent != kNone) counts[{r.agent, ev}] += 1;
        } else {
            if (r.target != kNone) counts[{ev, r.target}] += 1;
        }
    }
    std::int64_t total = 0;
    for (const auto& [key, f] : counts) total += f;
    for (const auto& [key, f] : counts) {
        EdgeWeightRow row;
        row.source = key.first;
        row.target = key.second;
        row.frequency = f;
        row.normalized = static_cast<double>(f) / static_cast<double>(total);
        table.rows.push_back(std::move(row));
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const EdgeWeightRow& a, const EdgeWeightRow& b) {
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });
    return table;
}

std::vector<ProminenceRow> prominence(const EdgeWeightTable& a, const EdgeWeightTable& b) {
    if (a.relation != b.relation)
        throw UsageError("prominence requires edge-weight tables of the same relation type");
    std::map<std::pair<std::string, std::string>, ProminenceRow> rows;
    for (const auto& r : a.rows) {
        auto& row = rows[{r.source, r.target}];
        row.source = r.source;
        row.target = r.target;
        row.nw_a = r.normalized;
    }
    for (const auto& r : b.rows) {
        auto& row = rows[{r.source, r.target}];
        row.source = r.source;
        row.target = r.target;
        row.nw_b = r.normalized;
    }
    std::vector<ProminenceRow> out;
    out.reserve(rows.size());
    for (auto& [key, row] : rows) {
        row.prominence = row.nw_a - row.nw_b;
        out.push_back(std::move(row));
    }
    std::sort(out.begin(), out.end(), [](const ProminenceRow& x, const ProminenceRow& y) {
        if (x.prominence != y.prominence) return x.prominence > y.prominence;
        if (x.source != y.source) return x.source < y.source;
        return x.target < y.target;
    });
    return out;
}

KendallResult kendall_tau_b(const std::vector<double>& xs, const std::vector<double>& ys) {
    KendallResult res;
    const size_t n = xs.size();
    if (n != ys.size() || n < 2) return res;

    // Pairwise concordance scan; fine at the scales this engine sees.
    std::int64_t concordant = 0, discordant = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double dx = xs[i] - xs[j];
            double dy = ys[i] - ys[j];
            double s = dx * dy;
            if (s > 0) ++concordant;
            else if (s < 0) ++discordant;
        }
    }

    const double dn = static_cast<double>(n);
    const double n0 = dn * (dn - 1.0) / 2.0;
    auto tx = tie_groups(xs);
    auto ty = tie_groups(ys);
    double n1 = 0, n2 = 0;
    double vt = 0, vu = 0, t1x = 0, t1y = 0, t2x = 0, t2y = 0;
    for (auto t : tx) {
        double td = static_cast<double>(t);
        n1 += td * (td - 1.0) / 2.0;
        vt += td * (td - 1.0) * (2.0 * td + 5.0);
        t1x += td * (td - 1.0);
        t2x += td * (td - 1.0) * (td - 2.0);
    }
    for (auto t : ty) {
        double td = static_cast<double>(t);
        n2 += td * (td - 1.0) / 2.0;
        vu += td * (td - 1.0) * (2.0 * td + 5.0);
        t1y += td * (td - 1.0);
        t2y += td * (td - 1.0) * (td - 2.0);
    }
    const double denom = std::sqrt((n0 - n1) * (n0 - n2));
    if (denom <= 0) return res; // one side entirely tied

    res.tau = (static_cast<double>(concordant) - static_cast<double>(discordant)) / denom;

    const double v0 = dn * (dn - 1.0) * (2.0 * dn + 5.0);
    double var = (v0 - vt - vu) / 18.0 + (t1x * t1y) / (2.0 * dn * (dn - 1.0));
    if (n > 2) var += (t2x * t2y) / (9.0 * dn * (dn - 1.0) * (dn - 2.0));
    if (var <= 0) return res;
    const double z = (static_cast<double>(concordant) - static_cast<double>(discordant)) /
                     std::sqrt(var);
    res.p = normal_two_sided_p(z);
    if (res.p <= 0) res.p = std::numeric_limits<double>::min();
    res.defined = true;
    res.n_shared = n;
    return res;
}

KendallResult kendall_tau_shared(const std::vector<SvoRecord>& records_a,
                                 const std::vector<SvoRecord>& records_b, Role anchor_role,
                                 const std::string& anchor_lemma, EventKey event_key) {
    if (anchor_role == Role::TARGET)
        throw UsageError("anchor for shared-edge correlation must be an agent or event node");

    auto table_a = normalized_edge_weights(records_a, Relation::AGENT_EVENT, "a", event_key);
    auto table_b = normalized_edge_weights(records_b, Relation::AGENT_EVENT, "b", event_key);

    auto to_map = [](const EdgeWeightTable& t) {
        std::map<std::pair<std::string, std::string>, double> m;
        for (const auto& r : t.rows) m[{r.source, r.target}] = r.normalized;
        return m;
    };
    auto ma = to_map(table_a);
    auto mb = to_map(table_b);

    std::vector<double> xs, ys;
    for (const auto& [key, nw] : ma) {
        const bool incident =
            anchor_role == Role::AGENT ? key.first == anchor_lemma : key.second == anchor_lemma;
        if (!incident) continue;
        auto it = mb.find(key);
        if (it == mb.end()) continue;
        xs.push_back(nw);
        ys.push_back(it->second);
    }

    KendallResult res = kendall_tau_b(xs, ys);
    res.n_shared = xs.size();
    if (xs.size() < 2) res.defined = false;
    return res;
}

EmotionProfile emotion_zscores(const std::vector<std::string>& words, const EmotionLexicon& lex,
                               size_t samples, std::uint64_t seed) {
    if (samples < 100) throw UsageError("emotion baseline needs at least 100 samples");

    EmotionProfile profile;
    profile.samples = samples;
    profile.seed = seed;
    profile.word_count = words.size();

    const auto& labels = emotion_labels();
    std::vector<std::int64_t> observed(labels.size(), 0);
    for (const auto& w : words) {
        auto it = lex.entries.find(to_lower(w));
        if (it == lex.entries.end()) continue;
        for (size_t e = 0; e < labels.size(); ++e)
            if (it->second.count(labels[e])) ++observed[e];
    }

    std::vector<double> sum(labels.size(), 0.0), sumsq(labels.size(), 0.0);
    std::mt19937_64 gen(seed);
    const size_t vocab_n = lex.vocabulary.size();
    std::vector<std::int64_t> draw(labels.size(), 0);
    for (size_t m = 0; m < samples; ++m) {
        std::fill(draw.begin(), draw.end(), 0);
        if (vocab_n > 0) {
            for (size_t w = 0; w < words.size(); ++w) {
                const std::string& lemma = lex.vocabulary[gen() % vocab_n];
                auto it = lex.entries.find(lemma);
                if (it == lex.entries.end()) continue;
                for (size_t e = 0; e < labels.size(); ++e)
                    if (it->second.count(labels[e])) ++draw[e];
            }
        }
        for (size_t e = 0; e < labels.size(); ++e) {
            sum[e] += static_cast<double>(draw[e]);
            sumsq[e] += static_cast<double>(draw[e]) * static_cast<double>(draw[e]);
        }
    }

    for (size_t e = 0; e < labels.size(); ++e) {
        EmotionStat stat;
        stat.emotion = labels[e];
        stat.observed = observed[e];
        stat.mu = sum[e] / static_cast<double>(samples);
        double var = sumsq[e] / static_cast<double>(samples) - stat.mu * stat.mu;
        stat.sigma = var > 0 ? std::sqrt(var) : 0.0;
        if (stat.sigma > 0) {
            stat.defined = true;
            stat.z = (static_cast<double>(stat.observed) - stat.mu) / stat.sigma;
        }
        profile.stats.push_back(std::move(stat));
    }
    return profile;
}

NormJoin join_norms(const std::vector<std::string>& labels, const ScalarNorms& norms,
                    NormMode mode) {
    NormJoin out;
    for (const auto& label : labels) {
        auto words = split_words(label);
        if (mode == NormMode::SPLIT) {
            for (const auto& w : words) {
                if (auto s = norms.lookup(w)) out.scores.push_back(*s);
                else ++out.omitted;
            }
        } else {
            double sum = 0;
            size_t found = 0;
            for (const auto& w : words) {
                if (auto s = norms.lookup(w)) {
                    sum += *s;
                    ++found;
                }
            }
            if (found > 0) out.scores.push_back(sum / static_cast<double>(found));
            else ++out.omitted;
        }
    }
    return out;
}

RankSumResult rank_sum_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw UsageError("rank_sum_test requires two non-empty samples");
    RankSumResult res;
    const std::int64_t na = static_cast<std::int64_t>(a.size());
    const std::int64_t nb = static_cast<std::int64_t>(b.size());

    if (na * nb <= 400) {
        // 2U is always integral (ties contribute halves); the direct pair
        // comparison keeps it exact for the enumeration below.
        std::int64_t two_u = 0;
        for (double x : a) {
            for (double y : b) {
                if (x > y) two_u += 2;
                else if (x == y) two_u += 1;
            }
        }
        res.u = static_cast<double>(two_u) / 2.0;
        // Exact null distribution over all C(na+nb, na) group assignments,
        // ties included: process pooled value groups in ascending order and
        // track (elements assigned to sample a, accumulated 2U).
        std::vector<double> pooled;
        pooled.reserve(static_cast<size_t>(na + nb));
        pooled.insert(pooled.end(), a.begin(), a.end());
        pooled.insert(pooled.end(), b.begin(), b.end());
        std::sort(pooled.begin(), pooled.end());
        std::vector<std::int64_t> groups = tie_groups(pooled);

        const std::int64_t max2u = 2 * na * nb;
        const size_t width = static_cast<size_t>(max2u + 1);
        std::vector<double> cur(static_cast<size_t>(na + 1) * width, 0.0);
        auto at = [&](std::vector<double>& v, std::int64_t chosen, std::int64_t u2) -> double& {
            return v[static_cast<size_t>(chosen) * width + static_cast<size_t>(u2)];
        };
        at(cur, 0, 0) = 1.0;

        std::int64_t prefix = 0; // pooled elements in strictly lower groups
        for (std::int64_t g : groups) {
            std::vector<double> next(cur.size(), 0.0);
            for (std::int64_t chosen = 0; chosen <= na; ++chosen) {
                for (std::int64_t u2 = 0; u2 <= max2u; ++u2) {
                    double ways = at(cur, chosen, u2);
                    if (ways == 0.0) continue;
                    const std::int64_t b_lower = prefix - chosen;
                    std::int64_t comb = 1; // C(g, k), built incrementally
                    for (std::int64_t k = 0; k <= g && chosen + k <= na; ++k) {
                        if (k > 0) comb = comb * (g - k + 1) / k;
                        const std::int64_t add = 2 * k * b_lower + k * (g - k);
                        if (u2 + add <= max2u)
                            at(next, chosen + k, u2 + add) += ways * static_cast<double>(comb);
                    }
                }
            }
            cur.swap(next);
            prefix += g;
        }

        double total = 0, le = 0, ge = 0;
        for (std::int64_t u2 = 0; u2 <= max2u; ++u2) {
            double ways = at(cur, na, u2);
            if (ways == 0.0) continue;
            total += ways;
            if (u2 <= two_u) le += ways;
            if (u2 >= two_u) ge += ways;
        }
        res.p = std::min(1.0, 2.0 * std::min(le, ge) / total);
        res.exact = true;
        return res;
    }

    // Large samples: U from midranks, then the normal approximation with
    // tie correction and continuity correction.
    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(static_cast<size_t>(na + nb));
    for (double x : a) pooled.push_back({x, 0});
    for (double y : b) pooled.push_back({y, 1});
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });

    double rank_sum_a = 0;
    double tie_sum = 0;
    size_t i = 0;
    while (i < pooled.size()) {
        size_t j = i;
        std::int64_t in_a = 0;
        while (j < pooled.size() && pooled[j].first == pooled[i].first) {
            if (pooled[j].second == 0) ++in_a;
            ++j;
        }
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        rank_sum_a += midrank * static_cast<double>(in_a);
        const double t = static_cast<double>(j - i);
        tie_sum += t * t * t - t;
        i = j;
    }
    res.u = rank_sum_a - static_cast<double>(na) * static_cast<double>(na + 1) / 2.0;

    const double n = static_cast<double>(na + nb);
    const double mean = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
    const double var = (static_cast<double>(na) * static_cast<double>(nb) / 12.0) *
                       ((n + 1.0) - tie_sum / (n * (n - 1.0)));
    if (var <= 0) {
        res.p = 1.0;
        return res;
    }
    double num = res.u - mean;
    if (num > 0) num -= 0.5;
    else if (num < 0) num += 0.5;
    const double z = num / std::sqrt(var);
    res.p = normal_two_sided_p(z);
    return res;
}

std::vector<SvoRecord> merge_svo_tables(const std::vector<std::vector<SvoRecord>>& tables) {
    std::vector<SvoRecord> out;
    std::int64_t next = 0;
    for (const auto& table : tables) {
        std::int64_t max_seen = next - 1;
        for (const auto& r : table) {
            SvoRecord copy = r;
            copy.triple_id = r.triple_id + next;
            max_seen = std::max(max_seen, copy.triple_id);
            out.push_back(std::move(copy));
        }
        next = max_seen + 1;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string metrics_tsv(const MetricsTable& table) {
    std::ostringstream out;
    out << "label\trole\tK\tK_star\tF\tRI\n";
    for (const auto& r : table.rows) {
        out << r.label << '\t' << to_string(r.role) << '\t' << r.degree << '\t'
            << (r.relative ? format_double(*r.relative) : "") << '\t' << r.frequency << '\t'
            << format_double(r.repetitiveness) << '\n';
    }
    return out.str();
}

std::string edge_weights_tsv(const EdgeWeightTable& table) {
    std::ostringstream out;
    out << "source\ttarget\trelation\tsubcorpus\tF\tNW\n";
    for (const auto& r : table.rows) {
        out << r.source << '\t' << r.target << '\t' << to_string(table.relation) << '\t'
            << table.subcorpus << '\t' << r.frequency << '\t' << format_double(r.normalized)
            << '\n';
    }
    return out.str();
}

} // namespace tea
