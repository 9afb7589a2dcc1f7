#include "tea/conllu.hpp"

#include "tea/errors.hpp"
#include "tea/strings.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace tea {

namespace {

constexpr std::array<std::pair<CanonicalLabel, const char*>, 18> kLabelNames{{
    {CanonicalLabel::SUBJ, "SUBJ"},
    {CanonicalLabel::SUBJ_PASS, "SUBJ_PASS"},
    {CanonicalLabel::OBJ_DIRECT, "OBJ_DIRECT"},
    {CanonicalLabel::OBJ_PREP, "OBJ_PREP"},
    {CanonicalLabel::OBJ_DATIVE, "OBJ_DATIVE"},
    {CanonicalLabel::COMP_CLAUSAL, "COMP_CLAUSAL"},
    {CanonicalLabel::COMP_OPEN, "COMP_OPEN"},
    {CanonicalLabel::AUX, "AUX"},
    {CanonicalLabel::AUX_PASS, "AUX_PASS"},
    {CanonicalLabel::NEG, "NEG"},
    {CanonicalLabel::CONJ, "CONJ"},
    {CanonicalLabel::AGENT, "AGENT"},
    {CanonicalLabel::PREP, "PREP"},
    {CanonicalLabel::ATTR, "ATTR"},
    {CanonicalLabel::ACOMP, "ACOMP"},
    {CanonicalLabel::OPRD, "OPRD"},
    {CanonicalLabel::ADVMOD, "ADVMOD"},
    {CanonicalLabel::OTHER, "OTHER"},
}};

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    int value = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
        if (value > 100000000) return false;
    }
    out = value;
    return true;
}

std::map<std::string, std::string> parse_feats(const std::string& raw) {
    std::map<std::string, std::string> feats;
    if (raw.empty() || raw == "_") return feats;
    for (const auto& piece : split(raw, '|')) {
        size_t eq = piece.find('=');
        if (eq == std::string::npos) continue;
        feats[piece.substr(0, eq)] = piece.substr(eq + 1);
    }
    return feats;
}

std::string feats_to_string(const std::map<std::string, std::string>& feats) {
    if (feats.empty()) return "_";
    std::string out;
    for (const auto& [k, v] : feats) {
        if (!out.empty()) out += '|';
        out += k + "=" + v;
    }
    return out;
}

void validate_sentence(Sentence& sent, size_t first_line) {
    const int n = static_cast<int>(sent.tokens.size());
    for (int i = 0; i < n; ++i) {
        if (sent.tokens[static_cast<size_t>(i)].index != i + 1)
            throw ParseError("non-sequential token ids in sentence block starting at line " +
                             std::to_string(first_line));
    }
    int roots = 0;
    for (const auto& t : sent.tokens) {
        if (t.head < 0 || t.head > n)
            throw ParseError("head index " + std::to_string(t.head) +
                             " out of range in sentence block starting at line " +
                             std::to_string(first_line));
        if (t.head == t.index)
            throw ParseError("token " + std::to_string(t.index) +
                             " heads itself in sentence block starting at line " +
                             std::to_string(first_line));
        if (t.head == 0) ++roots;
    }
    if (roots != 1)
        throw ParseError("sentence block starting at line " + std::to_string(first_line) +
                         " has " + std::to_string(roots) + " roots (expected 1)");
    // Cycle check: every token must reach the root by following heads.
    for (const auto& t : sent.tokens) {
        int cur = t.index;
        int steps = 0;
        while (cur != 0) {
            cur = sent.tokens[static_cast<size_t>(cur - 1)].head;
            if (++steps > n)
                throw ParseError("cyclic head links in sentence block starting at line " +
                                 std::to_string(first_line));
        }
    }
}

} // namespace

const char* to_string(CanonicalLabel label) {
    for (const auto& [l, name] : kLabelNames)
        if (l == label) return name;
    return "OTHER";
}

std::optional<CanonicalLabel> canonical_label_from(std::string_view name) {
    for (const auto& [l, n] : kLabelNames)
        if (name == n) return l;
    return std::nullopt;
}

std::vector<int> Sentence::children_of(int index) const {
    std::vector<int> out;
    for (const auto& t : tokens)
        if (t.head == index) out.push_back(t.index);
    return out;
}

int Sentence::root_index() const {
    for (const auto& t : tokens)
        if (t.head == 0) return t.index;
    return 0;
}

size_t Corpus::sentence_count() const {
    size_t n = 0;
    for (const auto& d : documents) n += d.sentences.size();
    return n;
}

std::vector<const Sentence*> Corpus::all_sentences() const {
    std::vector<const Sentence*> out;
    for (const auto& d : documents)
        for (const auto& s : d.sentences) out.push_back(&s);
    return out;
}

DeprelSchema clear_schema() {
    DeprelSchema s;
    s.name = "clear";
    s.mapping = {
        {"nsubj", CanonicalLabel::SUBJ},
        {"nsubjpass", CanonicalLabel::SUBJ_PASS},
        {"dobj", CanonicalLabel::OBJ_DIRECT},
        {"pobj", CanonicalLabel::OBJ_PREP},
        {"dative", CanonicalLabel::OBJ_DATIVE},
        {"agent", CanonicalLabel::AGENT},
        {"auxpass", CanonicalLabel::AUX_PASS},
        {"aux", CanonicalLabel::AUX},
        {"neg", CanonicalLabel::NEG},
        {"conj", CanonicalLabel::CONJ},
        {"ccomp", CanonicalLabel::COMP_CLAUSAL},
        {"xcomp", CanonicalLabel::COMP_OPEN},
        {"prep", CanonicalLabel::PREP},
        {"attr", CanonicalLabel::ATTR},
        {"acomp", CanonicalLabel::ACOMP},
        {"oprd", CanonicalLabel::OPRD},
        {"advmod", CanonicalLabel::ADVMOD},
    };
    return s;
}

DeprelSchema ud_schema() {
    DeprelSchema s;
    s.name = "ud";
    s.mapping = {
        {"nsubj", CanonicalLabel::SUBJ},
        {"nsubj:pass", CanonicalLabel::SUBJ_PASS},
        {"obj", CanonicalLabel::OBJ_DIRECT},
        {"obl", CanonicalLabel::OBJ_PREP},
        {"iobj", CanonicalLabel::OBJ_DATIVE},
        {"obl:agent", CanonicalLabel::AGENT},
        {"aux", CanonicalLabel::AUX},
        {"aux:pass", CanonicalLabel::AUX_PASS},
        {"cop", CanonicalLabel::AUX},
        {"conj", CanonicalLabel::CONJ},
        {"ccomp", CanonicalLabel::COMP_CLAUSAL},
        {"xcomp", CanonicalLabel::COMP_OPEN},
        {"advmod", CanonicalLabel::ADVMOD},
    };
    s.negation_from_advmod_lemma = true;
    return s;
}

DeprelSchema load_schema_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open schema file: " + path);
    DeprelSchema s;
    s.name = path;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 2)
            throw LoadError(path + ":" + std::to_string(line_no) +
                            ": expected 2 tab-separated columns");
        auto label = canonical_label_from(cols[1]);
        if (!label)
            throw LoadError(path + ":" + std::to_string(line_no) + ": unknown canonical label '" +
                            cols[1] + "'");
        s.mapping[cols[0]] = *label;
    }
    return s;
}

DeprelSchema schema_by_name(const std::string& name) {
    if (name == "clear") return clear_schema();
    if (name == "ud") return ud_schema();
    if (name.find('.') != std::string::npos || name.find('/') != std::string::npos)
        return load_schema_tsv(name);
    throw UsageError("unknown schema '" + name + "' (expected clear, ud, or a mapping file)");
}

Corpus parse_conllu(std::istream& in, const std::string& default_doc_id) {
    Corpus corpus;
    Document* doc = nullptr;
    Sentence current;
    bool in_sentence = false;
    size_t block_first_line = 0;
    size_t line_no = 0;
    int auto_sent = 0;
    int auto_doc = 0;
    std::set<std::string> doc_ids;

    auto add_doc = [&](const std::string& id) {
        if (!doc_ids.insert(id).second)
            throw ParseError("duplicate document id '" + id + "' at line " +
                             std::to_string(line_no));
        corpus.documents.push_back(Document{id, {}});
        doc = &corpus.documents.back();
    };
    auto ensure_doc = [&]() -> Document& {
        if (!doc) add_doc(default_doc_id);
        return *doc;
    };

    auto flush_sentence = [&]() {
        if (!in_sentence) return;
        if (!current.tokens.empty()) {
            validate_sentence(current, block_first_line);
            Document& d = ensure_doc();
            ++auto_sent;
            if (current.sent_id.empty()) current.sent_id = "s" + std::to_string(auto_sent);
            current.doc_id = d.doc_id;
            d.sentences.push_back(std::move(current));
        }
        current = Sentence{};
        in_sentence = false;
    };

    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            flush_sentence();
            continue;
        }
        if (line[0] == '#') {
            if (!in_sentence) {
                in_sentence = true;
                block_first_line = line_no;
            }
            std::string body = trim(line.substr(1));
            if (body.rfind("newdoc", 0) == 0) {
                flush_sentence();
                std::string id;
                size_t eq = body.find('=');
                if (eq != std::string::npos) id = trim(body.substr(eq + 1));
                if (id.empty()) id = default_doc_id + std::to_string(++auto_doc);
                add_doc(id);
                auto_sent = 0;
                in_sentence = false;
            } else if (body.rfind("sent_id", 0) == 0) {
                size_t eq = body.find('=');
                if (eq != std::string::npos) current.sent_id = trim(body.substr(eq + 1));
            } else if (body.rfind("text", 0) == 0 && (body.size() == 4 || body[4] == ' ' || body[4] == '=')) {
                size_t eq = body.find('=');
                if (eq != std::string::npos) current.raw_text = trim(body.substr(eq + 1));
            }
            continue;
        }

        if (!in_sentence) {
            in_sentence = true;
            block_first_line = line_no;
        }
        auto cols = split(line, '\t');
        if (cols.size() != 10)
            throw ParseError("line " + std::to_string(line_no) + ": expected 10 columns, got " +
                             std::to_string(cols.size()));
        // Multiword-token ranges (1-2) and empty nodes (1.1) are skipped.
        if (cols[0].find('-') != std::string::npos || cols[0].find('.') != std::string::npos)
            continue;

        Token t;
        if (!parse_int(cols[0], t.index) || t.index < 1)
            throw ParseError("line " + std::to_string(line_no) + ": bad token id '" + cols[0] + "'");
        t.surface = cols[1];
        t.lemma = (cols[2] == "_" || cols[2].empty()) ? to_lower(cols[1]) : to_lower(cols[2]);
        t.upos = cols[3];
        t.xpos = (cols[4] == "_") ? std::string() : cols[4];
        t.feats = parse_feats(cols[5]);
        if (!parse_int(cols[6], t.head))
            throw ParseError("line " + std::to_string(line_no) + ": bad head '" + cols[6] + "'");
        t.deprel_raw = cols[7];
        t.deprel = CanonicalLabel::OTHER;
        current.tokens.push_back(std::move(t));
    }
    flush_sentence();
    return corpus;
}

Corpus parse_conllu_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open CoNLL-U file: " + path);
    std::string stem = path;
    size_t slash = stem.find_last_of('/');
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    size_t dot = stem.find_last_of('.');
    if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
    return parse_conllu(in, stem);
}

Corpus apply_schema(Corpus corpus, const DeprelSchema& schema) {
    for (auto& doc : corpus.documents) {
        for (auto& sent : doc.sentences) {
            for (auto& t : sent.tokens) {
                auto it = schema.mapping.find(t.deprel_raw);
                t.deprel = (it == schema.mapping.end()) ? CanonicalLabel::OTHER : it->second;
                if (schema.negation_from_advmod_lemma && t.deprel == CanonicalLabel::ADVMOD &&
                    (t.lemma == "not" || t.lemma == "n't"))
                    t.deprel = CanonicalLabel::NEG;
            }
        }
    }
    return corpus;
}

std::string to_conllu(const Corpus& corpus) {
    std::ostringstream out;
    for (const auto& doc : corpus.documents) {
        for (const auto& sent : doc.sentences) {
            for (const auto& t : sent.tokens) {
                out << t.index << '\t' << t.surface << '\t' << t.lemma << '\t' << t.upos << '\t'
                    << (t.xpos.empty() ? "_" : t.xpos) << '\t' << feats_to_string(t.feats) << '\t'
                    << t.head << '\t' << t.deprel_raw << '\t' << "_" << '\t' << "_" << '\n';
            }
            out << '\n';
        }
    }
    return out.str();
}

bool is_past_participle(const Token& t) {
    if (!t.xpos.empty()) return t.xpos == "VBN";
    auto vf = t.feats.find("VerbForm");
    auto tense = t.feats.find("Tense");
    return vf != t.feats.end() && vf->second == "Part" && tense != t.feats.end() &&
           tense->second == "Past";
}

} // namespace tea
