#pragma once

#include "tea/conllu.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tea {

// Sentinel for an empty agent/target slot, shared with benchmark gold files.
inline constexpr const char* kNone = "__none__";

enum class PassiveSignal { NONE, CANONICAL, FEEL, AGENT_PHRASE, CONJUNCT };

const char* to_string(PassiveSignal s);

// Result of the four-signal passive detector for one verb.
struct PassiveInfo {
    bool is_passive = false;
    PassiveSignal signal = PassiveSignal::NONE;
    // Object of the by-phrase (agent -> pobj path), possibly propagated from
    // a conjunct head.
    std::optional<int> agent_token;

    bool operator==(const PassiveInfo&) const = default;
};

// A verb phrase bundled into a single unit: auxiliaries, negation, adverbial
// modifiers, the verb, and open/clausal complement verbs, in surface order.
struct EventLabel {
    std::string phrase;     // space-joined lowercased lemmas
    std::string head_lemma; // lemma of the syntactic head verb
    std::string surface;    // space-joined lowercased surface forms, for display

    bool operator==(const EventLabel&) const = default;
};

struct SvoRecord {
    std::int64_t triple_id = 0;
    std::string doc_id;
    std::string sent_id;
    std::string agent; // lemma or __none__
    EventLabel event;
    std::string target; // lemma or __none__
    int is_passive = 0;
    int passive_approx = 0;
    int verb_index = 0; // head verb token index within its sentence

    bool operator==(const SvoRecord&) const = default;
};

enum class Relation { AGENT_EVENT, EVENT_TARGET };

const char* to_string(Relation r);

// Tokens tagged VERB or AUX whose dependency role is not auxiliary,
// adjectival, or prepositional, in token order.
std::vector<int> find_verb_candidates(const Sentence& sent);

// Four signals, tested in order: canonical passive dependents, a non-modal
// auxiliary before a past participle, an explicit by-phrase on a participle,
// and recursive inheritance through coordinated conjunct verbs.
PassiveInfo passive_info(int verb, const Sentence& sent);

// Direct subjects expanded through coordination. An active conjunct verb
// with no subject of its own inherits the subjects of its ancestor verb; a
// passive verb never inherits (the guard that keeps a clause like "went out
// and got raped" from naming the active subject as the passive agent).
std::vector<int> extract_subjects(int verb, const Sentence& sent);

// Direct, prepositional, dative and complement objects, expanded through
// coordination, inherited from a conjunct head when the verb has none.
std::vector<int> extract_objects(int verb, const Sentence& sent);

EventLabel build_event_label(int verb, const Sentence& sent);

// All records of one sentence, triple ids numbered locally from 0.
std::vector<SvoRecord> extract_sentence_svos(const Sentence& sent);

// Full extractor over a corpus; triple ids are corpus-unique, numbered in
// input order regardless of the worker count.
std::vector<SvoRecord> extract_svos(const Corpus& corpus, int jobs = 1);

// Minimal root-verb extractor used for comparison: first subject, first
// available object, no coordination, no inheritance, no bundling.
std::vector<SvoRecord> extract_baseline(const Corpus& corpus);

// CSV interchange. Each triple emits an AGENT_EVENT and an EVENT_TARGET row
// sharing its triple_id. Header:
// triple_id,doc_id,sent_id,relation,source,source_role,target,target_role,event_phrase,is_passive,passive_approx
void write_svo_csv(std::ostream& out, const std::vector<SvoRecord>& records);
std::string svo_csv_string(const std::vector<SvoRecord>& records);
std::vector<SvoRecord> read_svo_csv(std::istream& in);
std::vector<SvoRecord> read_svo_csv_file(const std::string& path);

} // namespace tea
