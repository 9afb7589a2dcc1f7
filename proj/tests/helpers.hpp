#pragma once

// Shared fixtures for the test suites: benchmark loading, small builders for
// synthetic sentences and record tables, and independent brute-force oracles
// that the implementations are checked against.

#include "tea/analytics.hpp"
#include "tea/benchmark.hpp"
#include "tea/conllu.hpp"
#include "tea/graph.hpp"
#include "tea/lexicons.hpp"
#include "tea/svo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace teatest {

inline std::string data_path(const std::string& name) {
    return std::string(TEA_DATA_DIR) + "/" + name;
}

inline const tea::Corpus& benchmark_corpus() {
    static const tea::Corpus corpus = tea::apply_schema(
        tea::parse_conllu_file(data_path("benchmark.conllu")), tea::clear_schema());
    return corpus;
}

inline const tea::Sentence& sentence(const std::string& sent_id) {
    for (const auto* s : benchmark_corpus().all_sentences())
        if (s->sent_id == sent_id) return *s;
    throw std::runtime_error("no benchmark sentence " + sent_id);
}

inline int token_index(const tea::Sentence& s, const std::string& surface) {
    for (const auto& t : s.tokens)
        if (t.surface == surface) return t.index;
    throw std::runtime_error("no token '" + surface + "' in " + s.sent_id);
}

// ---------------------------------------------------------------------------
// Synthetic sentence builder (canonical labels set directly).

struct Tok {
    std::string lemma;
    std::string upos;
    std::string xpos;
    tea::CanonicalLabel deprel;
    int head;
};

inline tea::Sentence make_sentence(const std::vector<Tok>& toks,
                                   const std::string& sent_id = "syn") {
    tea::Sentence s;
    s.doc_id = "syn";
    s.sent_id = sent_id;
    int idx = 1;
    for (const auto& t : toks) {
        tea::Token token;
        token.index = idx++;
        token.surface = t.lemma;
        token.lemma = t.lemma;
        token.upos = t.upos;
        token.xpos = t.xpos;
        token.deprel_raw = tea::to_string(t.deprel);
        token.deprel = t.deprel;
        token.head = t.head;
        s.tokens.push_back(std::move(token));
    }
    return s;
}

// ---------------------------------------------------------------------------
// Random SVO record tables.

inline std::vector<tea::SvoRecord> random_records(std::mt19937_64& rng, size_t n) {
    const std::vector<std::string> agents = {"a0", "a1", "a2", "a3", "a4", "a5"};
    const std::vector<std::string> events = {"v0", "v1", "v2", "v3"};
    const std::vector<std::string> targets = {"t0", "t1", "t2", "t3", "t4"};
    std::vector<tea::SvoRecord> out;
    for (size_t i = 0; i < n; ++i) {
        tea::SvoRecord r;
        r.triple_id = static_cast<std::int64_t>(i);
        r.doc_id = "d" + std::to_string(rng() % 3);
        r.sent_id = "s" + std::to_string(i);
        const bool drop_agent = rng() % 5 == 0;
        const bool drop_target = !drop_agent && rng() % 4 == 0;
        r.agent = drop_agent ? tea::kNone : agents[rng() % agents.size()];
        r.target = drop_target ? tea::kNone : targets[rng() % targets.size()];
        const std::string head = events[rng() % events.size()];
        r.event.head_lemma = head;
        r.event.phrase = rng() % 3 == 0 ? "be " + head : head;
        r.event.surface = r.event.phrase;
        switch (rng() % 3) {
        case 0: r.is_passive = 0; r.passive_approx = 0; break;
        case 1: r.is_passive = 1; r.passive_approx = 0; break;
        default: r.is_passive = 1; r.passive_approx = 1; break;
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracles.

// Distinct-neighbor degree and frequency by direct scan over records.
struct OracleMetricsRow {
    std::int64_t degree = 0;
    std::int64_t frequency = 0;
};

inline std::map<std::string, OracleMetricsRow>
oracle_node_metrics(const std::vector<tea::SvoRecord>& records, tea::Role role,
                    tea::EventKey key = tea::EventKey::HEAD_LEMMA) {
    std::map<std::string, OracleMetricsRow> rows;
    auto label_of = [&](const tea::SvoRecord& r) -> std::string {
        switch (role) {
        case tea::Role::AGENT: return r.agent;
        case tea::Role::EVENT: return tea::event_key_of(r, key);
        case tea::Role::TARGET: return r.target;
        }
        return r.agent;
    };
    std::set<std::string> labels;
    for (const auto& r : records) {
        if (role == tea::Role::AGENT && r.agent == tea::kNone) continue;
        if (role == tea::Role::TARGET && r.target == tea::kNone) continue;
        if (role == tea::Role::EVENT && r.agent == tea::kNone && r.target == tea::kNone) continue;
        labels.insert(label_of(r));
    }
    for (const auto& label : labels) {
        std::vector<std::pair<char, std::string>> neighbors;
        std::int64_t freq = 0;
        for (const auto& r : records) {
            const std::string ev = tea::event_key_of(r, key);
            if (role == tea::Role::AGENT && r.agent == label && r.agent != tea::kNone) {
                neighbors.push_back({'E', ev});
                ++freq;
            }
            if (role == tea::Role::TARGET && r.target == label && r.target != tea::kNone) {
                neighbors.push_back({'E', ev});
                ++freq;
            }
            if (role == tea::Role::EVENT && ev == label) {
                if (r.agent != tea::kNone) {
                    neighbors.push_back({'A', r.agent});
                    ++freq;
                }
                if (r.target != tea::kNone) {
                    neighbors.push_back({'T', r.target});
                    ++freq;
                }
            }
        }
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
        if (!neighbors.empty())
            rows[label] = {static_cast<std::int64_t>(neighbors.size()), freq};
    }
    return rows;
}

// Edge frequencies by direct scan.
inline std::map<std::pair<std::string, std::string>, std::int64_t>
oracle_edge_counts(const std::vector<tea::SvoRecord>& records, tea::Relation relation,
                   tea::EventKey key = tea::EventKey::HEAD_LEMMA) {
    std::map<std::pair<std::string, std::string>, std::int64_t> counts;
    for (const auto& r : records) {
        const std::string ev = tea::event_key_of(r, key);
        if (relation == tea::Relation::AGENT_EVENT) {
            if (r.agent != tea::kNone) counts[{r.agent, ev}] += 1;
        } else {
            if (r.target != tea::kNone) counts[{ev, r.target}] += 1;
        }
    }
    return counts;
}

// Kendall tau-b by explicit pair enumeration with tie bookkeeping.
inline double oracle_kendall_tau_b(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    long long concordant = 0, discordant = 0, tie_x = 0, tie_y = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            const bool ex = xs[i] == xs[j];
            const bool ey = ys[i] == ys[j];
            if (ex && ey) continue;
            if (ex) { ++tie_x; continue; }
            if (ey) { ++tie_y; continue; }
            const bool up_x = xs[i] < xs[j];
            const bool up_y = ys[i] < ys[j];
            if (up_x == up_y) ++concordant;
            else ++discordant;
        }
    }
    const double nc = static_cast<double>(concordant);
    const double nd = static_cast<double>(discordant);
    const double tx = static_cast<double>(tie_x);
    const double ty = static_cast<double>(tie_y);
    const double denom = std::sqrt((nc + nd + tx) * (nc + nd + ty));
    if (denom == 0) return std::numeric_limits<double>::quiet_NaN();
    return (nc - nd) / denom;
}

// Mann-Whitney U and exact two-sided p by enumerating every assignment of
// the pooled values to the first sample (next_permutation over a 0/1 mask).
struct OracleRankSum {
    double u = 0;
    double p = 1;
};

inline OracleRankSum oracle_rank_sum_exact(const std::vector<double>& a,
                                           const std::vector<double>& b) {
    std::vector<double> pooled;
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());

    auto u_of = [](const std::vector<double>& xs, const std::vector<double>& ys) {
        double u = 0;
        for (double x : xs)
            for (double y : ys) {
                if (x > y) u += 1;
                else if (x == y) u += 0.5;
            }
        return u;
    };
    const double observed = u_of(a, b);

    std::vector<int> mask(pooled.size(), 0);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(a.size()), 1);
    std::sort(mask.begin(), mask.end());
    long long total = 0, le = 0, ge = 0;
    do {
        std::vector<double> xs, ys;
        for (size_t i = 0; i < pooled.size(); ++i)
            (mask[i] ? xs : ys).push_back(pooled[i]);
        const double u = u_of(xs, ys);
        ++total;
        if (u <= observed + 1e-12) ++le;
        if (u >= observed - 1e-12) ++ge;
    } while (std::next_permutation(mask.begin(), mask.end()));

    OracleRankSum out;
    out.u = observed;
    out.p = std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) / static_cast<double>(total));
    return out;
}

// ---------------------------------------------------------------------------
// Guard-property trees: an active ancestor verb with a passive CONJ
// dependent, plus an independent tree-walk oracle.

struct GuardTree {
    tea::Sentence sentence;
    int active_verb = 0;
    int passive_verb = 0;                 // the conj dependent under test
    std::string ancestor_subject_lemma;   // must never become its active agent
};

inline GuardTree random_guard_tree(std::mt19937_64& rng) {
    using L = tea::CanonicalLabel;
    std::vector<Tok> toks;
    auto push = [&](const Tok& t) {
        toks.push_back(t);
        return static_cast<int>(toks.size());
    };

    // subject (+ optional coordination) of the active root verb
    const std::string subj = "subj" + std::to_string(rng() % 4);
    int subj_ix = push({subj, "NOUN", "NN", L::SUBJ, 0});
    if (rng() % 3 == 0) push({"cosubj" + std::to_string(rng() % 2), "NOUN", "NN", L::CONJ, subj_ix});

    int root_ix = push({"act" + std::to_string(rng() % 3), "VERB", "VBD", L::OTHER, 0});
    toks[static_cast<size_t>(subj_ix - 1)].head = root_ix;
    if (rng() % 2 == 0) push({"obj" + std::to_string(rng() % 3), "NOUN", "NN", L::OBJ_DIRECT, root_ix});
    if (rng() % 3 == 0) push({"soon", "ADV", "RB", L::ADVMOD, root_ix});

    // the passive conjunct
    int pv_ix = push({"pass" + std::to_string(rng() % 3), "VERB", "VBN", L::CONJ, root_ix});
    int mechanism = static_cast<int>(rng() % 4);
    switch (mechanism) {
    case 0: // canonical: passive auxiliary
        push({"get", "AUX", "VBD", L::AUX_PASS, pv_ix});
        break;
    case 1: // feel-passive: non-whitelisted auxiliary before the participle
        push({"feel", "AUX", "VBD", L::AUX, pv_ix});
        break;
    case 2: { // explicit by-phrase
        int by_ix = push({"by", "ADP", "IN", L::AGENT, pv_ix});
        push({"actor" + std::to_string(rng() % 3), "NOUN", "NN", L::OBJ_PREP, by_ix});
        break;
    }
    default: { // chain: a second conjunct inherits from this one
        push({"get", "AUX", "VBD", L::AUX_PASS, pv_ix});
        int chained = push({"chained" + std::to_string(rng() % 2), "VERB", "VBN", L::CONJ, pv_ix});
        if (rng() % 2 == 0) push({"thing", "NOUN", "NN", L::OBJ_DIRECT, chained});
        break;
    }
    }
    if (rng() % 3 == 0) push({"today", "ADV", "RB", L::ADVMOD, pv_ix});

    GuardTree tree;
    tree.sentence = make_sentence(toks, "guard");
    tree.active_verb = root_ix;
    tree.passive_verb = pv_ix;
    tree.ancestor_subject_lemma = subj;
    return tree;
}

// Independent recursive walk for "is this verb passive".
inline bool oracle_is_passive(int verb, const tea::Sentence& s, int depth = 64) {
    using L = tea::CanonicalLabel;
    if (depth <= 0) return false;
    const tea::Token& t = s.token(verb);
    const bool participle = t.xpos == "VBN";
    static const std::set<std::string> whitelist = {"be",   "have",  "do",  "will", "shall", "would",
                                                    "should", "could", "might", "may", "must", "can"};
    for (int c : s.children_of(verb)) {
        const auto& ct = s.token(c);
        if (ct.deprel == L::AUX_PASS || ct.deprel == L::SUBJ_PASS) return true;
    }
    if (participle) {
        for (int c : s.children_of(verb)) {
            const auto& ct = s.token(c);
            if (ct.deprel == L::AUX && !whitelist.count(ct.lemma)) return true;
            if (ct.deprel == L::AGENT) return true;
        }
        if (t.deprel == L::CONJ && t.head != 0) return oracle_is_passive(t.head, s, depth - 1);
    }
    return false;
}

// Subjects an unguarded inheritance walk would produce for `verb`: climb the
// conj chain and take the first ancestor's direct subjects.
inline std::set<std::string> oracle_inherited_subjects(int verb, const tea::Sentence& s) {
    using L = tea::CanonicalLabel;
    std::set<std::string> out;
    int cur = verb;
    int steps = 0;
    while (steps++ < static_cast<int>(s.tokens.size())) {
        const tea::Token& t = s.token(cur);
        if (t.deprel != L::CONJ || t.head == 0) break;
        cur = t.head;
        for (int c : s.children_of(cur)) {
            const auto& ct = s.token(c);
            if (ct.deprel == L::SUBJ || ct.deprel == L::SUBJ_PASS) out.insert(ct.lemma);
        }
        if (!out.empty()) break;
    }
    return out;
}

} // namespace teatest
