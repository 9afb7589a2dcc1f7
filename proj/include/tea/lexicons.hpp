#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace tea {

enum class Polarity { POSITIVE, NEGATIVE, NEUTRAL };

const char* to_string(Polarity p);

// Word-valence table (VADER-style scores). Lookups are case-insensitive;
// the neutrality band is (neg_max, pos_min) on the lexicon's native scale.
struct ValenceLexicon {
    std::unordered_map<std::string, double> entries; // lowercased lemma -> mean valence
    double neg_max = -0.05;
    double pos_min = 0.05;
    size_t duplicate_rows = 0;

    std::optional<double> score(const std::string& lemma) const;
};

Polarity classify_polarity(const ValenceLexicon& lex, const std::string& lemma);

// Polarity of a possibly multiword label: each word is scored, the label
// takes the mean of the scores found; no word found means neutral.
Polarity classify_label_polarity(const ValenceLexicon& lex, const std::string& label);

// Synonym groups (synsets). Two lemmas are synonymous iff they differ and
// share at least one group.
struct SynonymTable {
    std::vector<std::vector<std::string>> groups;
    std::unordered_map<std::string, std::set<size_t>> index; // lemma -> group ids
    size_t duplicate_rows = 0;
};

bool are_synonymous(const SynonymTable& table, const std::string& a, const std::string& b);

inline const std::vector<std::string>& emotion_labels() {
    static const std::vector<std::string> kLabels = {"anger",   "anticipation", "disgust",
                                                     "fear",    "joy",          "sadness",
                                                     "surprise", "trust"};
    return kLabels;
}

// Word-emotion associations over the eight basic emotion labels. The
// vocabulary records every lemma seen in the source file, including lemmas
// with no associations; it is the sampling universe for random baselines.
struct EmotionLexicon {
    std::unordered_map<std::string, std::set<std::string>> entries;
    std::vector<std::string> vocabulary; // sorted, unique
    size_t duplicate_rows = 0;
    size_t skipped_labels = 0; // non-basic labels (e.g. positive/negative rows)

    bool has_emotion(const std::string& lemma, const std::string& emotion) const;
};

// Per-lemma scalar norms (concreteness, emotion intensity, ...). Absent
// lemmas yield no value rather than a default.
struct ScalarNorms {
    std::string name;
    std::unordered_map<std::string, double> entries;
    size_t duplicate_rows = 0;

    std::optional<double> lookup(const std::string& lemma) const;
};

// Loaders. All inputs are TSV; duplicate lemma rows keep the last value and
// are counted. Malformed rows raise LoadError with a line number.
ValenceLexicon load_valence(const std::string& path, double neg_max = -0.05,
                            double pos_min = 0.05);
SynonymTable load_synonyms(const std::string& path);
EmotionLexicon load_emotions(const std::string& path);
ScalarNorms load_norms(const std::string& path, const std::string& name);

} // namespace tea
