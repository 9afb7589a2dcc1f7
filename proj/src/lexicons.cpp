#include "tea/lexicons.hpp"

#include "tea/errors.hpp"
#include "tea/strings.hpp"

#include <algorithm>
#include <fstream>

namespace tea {

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open lexicon file: " + path);
    return in;
}

double parse_score(const std::string& s, const std::string& path, size_t line_no) {
    try {
        size_t consumed = 0;
        double v = std::stod(s, &consumed);
        if (consumed != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw LoadError(path + ":" + std::to_string(line_no) + ": non-numeric score '" + s + "'");
    }
}

} // namespace

const char* to_string(Polarity p) {
    switch (p) {
    case Polarity::POSITIVE: return "positive";
    case Polarity::NEGATIVE: return "negative";
    case Polarity::NEUTRAL: return "neutral";
    }
    return "neutral";
}

std::optional<double> ValenceLexicon::score(const std::string& lemma) const {
    auto it = entries.find(to_lower(lemma));
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

Polarity classify_polarity(const ValenceLexicon& lex, const std::string& lemma) {
    auto s = lex.score(lemma);
    if (!s) return Polarity::NEUTRAL;
    if (*s < lex.neg_max) return Polarity::NEGATIVE;
    if (*s > lex.pos_min) return Polarity::POSITIVE;
    return Polarity::NEUTRAL;
}

Polarity classify_label_polarity(const ValenceLexicon& lex, const std::string& label) {
    auto words = split_words(label);
    if (words.size() <= 1) return classify_polarity(lex, label);
    double sum = 0;
    size_t found = 0;
    for (const auto& w : words) {
        if (auto s = lex.score(w)) {
            sum += *s;
            ++found;
        }
    }
    if (found == 0) return Polarity::NEUTRAL;
    double mean = sum / static_cast<double>(found);
    if (mean < lex.neg_max) return Polarity::NEGATIVE;
    if (mean > lex.pos_min) return Polarity::POSITIVE;
    return Polarity::NEUTRAL;
}

bool are_synonymous(const SynonymTable& table, const std::string& a, const std::string& b) {
    if (a == b) return false;
    auto ia = table.index.find(a);
    auto ib = table.index.find(b);
    if (ia == table.index.end() || ib == table.index.end()) return false;
    const auto& ga = ia->second;
    const auto& gb = ib->second;
    // Walk the smaller set.
    const auto& small = ga.size() <= gb.size() ? ga : gb;
    const auto& big = ga.size() <= gb.size() ? gb : ga;
    return std::any_of(small.begin(), small.end(), [&](size_t g) { return big.count(g) > 0; });
}

bool EmotionLexicon::has_emotion(const std::string& lemma, const std::string& emotion) const {
    auto it = entries.find(lemma);
    return it != entries.end() && it->second.count(emotion) > 0;
}

std::optional<double> ScalarNorms::lookup(const std::string& lemma) const {
    auto it = entries.find(to_lower(lemma));
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

ValenceLexicon load_valence(const std::string& path, double neg_max, double pos_min) {
    auto in = open_or_throw(path);
    ValenceLexicon lex;
    lex.neg_max = neg_max;
    lex.pos_min = pos_min;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        // VADER distributions carry extra columns (stddev, raw ratings);
        // everything past the score is ignored.
        if (cols.size() < 2)
            throw LoadError(path + ":" + std::to_string(line_no) + ": expected at least 2 columns");
        std::string lemma = to_lower(cols[0]);
        double score = parse_score(cols[1], path, line_no);
        if (lex.entries.count(lemma)) ++lex.duplicate_rows;
        lex.entries[lemma] = score;
    }
    return lex;
}

SynonymTable load_synonyms(const std::string& path) {
    auto in = open_or_throw(path);
    SynonymTable table;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> group;
        for (auto& lemma : split(line, '\t')) {
            auto l = to_lower(trim(lemma));
            if (!l.empty()) group.push_back(std::move(l));
        }
        if (group.empty()) continue;
        size_t gid = table.groups.size();
        for (const auto& lemma : group) table.index[lemma].insert(gid);
        table.groups.push_back(std::move(group));
    }
    return table;
}

EmotionLexicon load_emotions(const std::string& path) {
    auto in = open_or_throw(path);
    EmotionLexicon lex;
    std::set<std::string> vocab;
    const std::set<std::string> basic(emotion_labels().begin(), emotion_labels().end());
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 3)
            throw LoadError(path + ":" + std::to_string(line_no) + ": expected 3 columns");
        std::string lemma = to_lower(cols[0]);
        std::string emotion = to_lower(cols[1]);
        if (cols[2] != "0" && cols[2] != "1")
            throw LoadError(path + ":" + std::to_string(line_no) + ": association flag must be 0 or 1");
        vocab.insert(lemma);
        if (!basic.count(emotion)) {
            // NRC files interleave positive/negative polarity rows; they are
            // not part of the eight-label set.
            ++lex.skipped_labels;
            continue;
        }
        if (cols[2] == "1") {
            auto& set = lex.entries[lemma];
            if (!set.insert(emotion).second) ++lex.duplicate_rows;
        }
    }
    lex.vocabulary.assign(vocab.begin(), vocab.end());
    return lex;
}

ScalarNorms load_norms(const std::string& path, const std::string& name) {
    auto in = open_or_throw(path);
    ScalarNorms norms;
    norms.name = name;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() < 2)
            throw LoadError(path + ":" + std::to_string(line_no) + ": expected at least 2 columns");
        std::string lemma = to_lower(cols[0]);
        double score = parse_score(cols[1], path, line_no);
        if (norms.entries.count(lemma)) ++norms.duplicate_rows;
        norms.entries[lemma] = score;
    }
    return norms;
}

} // namespace tea
