#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tea {

// Canonical dependency labels used by the extraction rules. Every raw label
// maps to exactly one of these under a given schema; unmapped labels go to
// OTHER.
enum class CanonicalLabel {
    SUBJ,
    SUBJ_PASS,
    OBJ_DIRECT,
    OBJ_PREP,
    OBJ_DATIVE,
    COMP_CLAUSAL,
    COMP_OPEN,
    AUX,
    AUX_PASS,
    NEG,
    CONJ,
    AGENT,
    PREP,
    ATTR,
    ACOMP,
    OPRD,
    ADVMOD,
    OTHER,
};

const char* to_string(CanonicalLabel label);
std::optional<CanonicalLabel> canonical_label_from(std::string_view name);

struct Token {
    int index = 0; // 1-based position within the sentence
    std::string surface;
    std::string lemma; // lowercased; falls back to lowercased surface
    std::string upos;
    std::string xpos; // may be empty
    std::string deprel_raw;
    CanonicalLabel deprel = CanonicalLabel::OTHER;
    int head = 0; // 0 = root
    std::map<std::string, std::string> feats;

    bool operator==(const Token&) const = default;
};

struct Sentence {
    std::string doc_id;
    std::string sent_id;
    std::vector<Token> tokens; // ids are 1..n, in order
    std::string raw_text;      // from "# text" when present

    const Token& token(int index) const { return tokens[static_cast<size_t>(index - 1)]; }
    // Indices of tokens whose head is `index`, in token order.
    std::vector<int> children_of(int index) const;
    int root_index() const; // the single token with head 0

    bool operator==(const Sentence&) const = default;
};

struct Document {
    std::string doc_id;
    std::vector<Sentence> sentences;

    bool operator==(const Document&) const = default;
};

struct Corpus {
    std::vector<Document> documents;

    size_t sentence_count() const;
    std::vector<const Sentence*> all_sentences() const;

    bool operator==(const Corpus&) const = default;
};

// Maps raw parser labels onto the canonical set. The two shipped schemas are
// "clear" (spaCy-style labels: nsubj, dobj, pobj, auxpass, ...) and "ud"
// (Universal Dependencies: obj, obl, aux:pass, ...). A user-supplied
// two-column TSV works the same way.
struct DeprelSchema {
    std::string name;
    std::map<std::string, CanonicalLabel> mapping;
    // UD has no dedicated negation label; advmod tokens whose lemma is
    // "not" or "n't" become NEG when this is set.
    bool negation_from_advmod_lemma = false;
};

DeprelSchema clear_schema();
DeprelSchema ud_schema();
DeprelSchema load_schema_tsv(const std::string& path);
// Accepts "clear", "ud", or a path to a mapping TSV.
DeprelSchema schema_by_name(const std::string& name);

// Parses a CoNLL-U stream (10 tab-separated columns, blank-line sentence
// separator). Multiword-token and empty-node lines are skipped. Throws
// ParseError with a line number on malformed input, out-of-range heads,
// cyclic head links, or a root count other than one.
Corpus parse_conllu(std::istream& in, const std::string& default_doc_id = "doc");
Corpus parse_conllu_file(const std::string& path);

// Re-maps every token's deprel from deprel_raw under the given schema.
Corpus apply_schema(Corpus corpus, const DeprelSchema& schema);

// Serializes token lines only (no comments); parsing the result back yields
// an equal corpus up to generated identifiers.
std::string to_conllu(const Corpus& corpus);

// Past-participle test: xpos "VBN", falling back to the morphological
// features VerbForm=Part plus Tense=Past when xpos is empty.
bool is_past_participle(const Token& t);

} // namespace tea
