#include "tea/svo.hpp"

#include "tea/errors.hpp"
#include "tea/strings.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace tea {

namespace {

// Auxiliary lemmas that do NOT signal a feel-passive when governing a past
// participle: copula, perfect/do-support, and the modals.
const std::set<std::string>& aux_whitelist() {
    static const std::set<std::string> w = {"be",   "have",  "do",    "will", "shall", "would",
                                            "should", "could", "might", "may",  "must",  "can"};
    return w;
}

bool is_verb_upos(const std::string& upos) { return upos == "VERB" || upos == "AUX"; }

bool is_nominal_upos(const std::string& upos) {
    return upos == "NOUN" || upos == "PROPN" || upos == "PRON" || upos == "NUM";
}

// Depth limits are tied to sentence length so that even a hostile head
// structure terminates.
int max_depth(const Sentence& sent) { return static_cast<int>(sent.tokens.size()) + 1; }

void expand_conj(const Sentence& sent, int index, std::vector<int>& out, int depth) {
    if (depth <= 0) return;
    for (int child : sent.children_of(index)) {
        if (sent.token(child).deprel == CanonicalLabel::CONJ) {
            out.push_back(child);
            expand_conj(sent, child, out, depth - 1);
        }
    }
}

PassiveInfo passive_info_impl(int verb, const Sentence& sent, int depth) {
    PassiveInfo info;
    if (depth <= 0) return info;
    const Token& v = sent.token(verb);
    const auto children = sent.children_of(verb);

    bool participle = is_past_participle(v);
    std::optional<int> own_agent;
    for (int c : children) {
        if (sent.token(c).deprel == CanonicalLabel::AGENT) {
            for (int gc : sent.children_of(c)) {
                if (sent.token(gc).deprel == CanonicalLabel::OBJ_PREP) {
                    own_agent = gc;
                    break;
                }
            }
            // UD-style agents: the by-phrase noun attaches directly to the
            // verb (obl:agent), with no prepositional object underneath.
            if (!own_agent && is_nominal_upos(sent.token(c).upos)) own_agent = c;
            if (own_agent) break;
        }
    }

    auto has_child = [&](CanonicalLabel label) {
        return std::any_of(children.begin(), children.end(),
                           [&](int c) { return sent.token(c).deprel == label; });
    };

    if (has_child(CanonicalLabel::AUX_PASS) || has_child(CanonicalLabel::SUBJ_PASS)) {
        info.is_passive = true;
        info.signal = PassiveSignal::CANONICAL;
    } else if (participle &&
               std::any_of(children.begin(), children.end(), [&](int c) {
                   const Token& t = sent.token(c);
                   return t.deprel == CanonicalLabel::AUX && !aux_whitelist().count(t.lemma);
               })) {
        info.is_passive = true;
        info.signal = PassiveSignal::FEEL;
    } else if (participle && has_child(CanonicalLabel::AGENT)) {
        info.is_passive = true;
        info.signal = PassiveSignal::AGENT_PHRASE;
    } else if (participle && v.deprel == CanonicalLabel::CONJ && v.head != 0) {
        PassiveInfo head_info = passive_info_impl(v.head, sent, depth - 1);
        if (head_info.is_passive) {
            info.is_passive = true;
            info.signal = PassiveSignal::CONJUNCT;
            if (!own_agent) own_agent = head_info.agent_token;
        }
    }

    if (info.is_passive) info.agent_token = own_agent;
    return info;
}

std::vector<int> direct_subjects(int verb, const Sentence& sent) {
    std::vector<int> out;
    for (int c : sent.children_of(verb)) {
        CanonicalLabel d = sent.token(c).deprel;
        if (d == CanonicalLabel::SUBJ || d == CanonicalLabel::SUBJ_PASS) {
            out.push_back(c);
            expand_conj(sent, c, out, max_depth(sent));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> extract_subjects_impl(int verb, const Sentence& sent, int depth) {
    std::vector<int> subs = direct_subjects(verb, sent);
    // Passive verbs return immediately: inheritance must not climb past the
    // conjunct boundary and hand an active ancestor's subject to a passive
    // verb.
    if (passive_info(verb, sent).is_passive) return subs;
    if (subs.empty() && depth > 0) {
        const Token& v = sent.token(verb);
        if (v.deprel == CanonicalLabel::CONJ && v.head != 0 &&
            is_verb_upos(sent.token(v.head).upos))
            return extract_subjects_impl(v.head, sent, depth - 1);
    }
    return subs;
}

std::vector<int> extract_objects_impl(int verb, const Sentence& sent, int depth) {
    if (depth <= 0) return {};
    std::vector<int> out;
    for (int c : sent.children_of(verb)) {
        const Token& t = sent.token(c);
        switch (t.deprel) {
        case CanonicalLabel::OBJ_DIRECT:
        case CanonicalLabel::OBJ_DATIVE:
        case CanonicalLabel::OBJ_PREP:
        case CanonicalLabel::ATTR:
        case CanonicalLabel::ACOMP:
            out.push_back(c);
            break;
        case CanonicalLabel::PREP:
            for (int gc : sent.children_of(c))
                if (sent.token(gc).deprel == CanonicalLabel::OBJ_PREP) out.push_back(gc);
            break;
        case CanonicalLabel::COMP_CLAUSAL:
        case CanonicalLabel::COMP_OPEN:
            if (is_nominal_upos(t.upos)) {
                out.push_back(c);
            } else {
                auto inner = extract_objects_impl(c, sent, depth - 1);
                out.insert(out.end(), inner.begin(), inner.end());
            }
            break;
        default:
            break;
        }
    }
    if (out.empty()) {
        const Token& v = sent.token(verb);
        if (v.deprel == CanonicalLabel::CONJ && v.head != 0 &&
            is_verb_upos(sent.token(v.head).upos))
            out = extract_objects_impl(v.head, sent, depth - 1);
    }
    std::vector<int> expanded = out;
    for (int o : out) expand_conj(sent, o, expanded, max_depth(sent));
    std::sort(expanded.begin(), expanded.end());
    expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
    return expanded;
}

// Chained complement verbs join the unit with their bare lemma; their own
// modifiers stay behind.
void collect_comp_chain(int verb, const Sentence& sent, std::vector<int>& ids, int depth) {
    if (depth <= 0) return;
    ids.push_back(verb);
    for (int c : sent.children_of(verb)) {
        CanonicalLabel d = sent.token(c).deprel;
        if ((d == CanonicalLabel::COMP_OPEN || d == CanonicalLabel::COMP_CLAUSAL) &&
            is_verb_upos(sent.token(c).upos))
            collect_comp_chain(c, sent, ids, depth - 1);
    }
}

void collect_event_tokens(int verb, const Sentence& sent, std::vector<int>& ids, int depth) {
    if (depth <= 0) return;
    ids.push_back(verb);
    for (int c : sent.children_of(verb)) {
        switch (sent.token(c).deprel) {
        case CanonicalLabel::AUX:
        case CanonicalLabel::AUX_PASS:
        case CanonicalLabel::NEG:
        case CanonicalLabel::ADVMOD:
            ids.push_back(c);
            break;
        case CanonicalLabel::COMP_OPEN:
        case CanonicalLabel::COMP_CLAUSAL:
            if (is_verb_upos(sent.token(c).upos)) collect_comp_chain(c, sent, ids, depth - 1);
            break;
        default:
            break;
        }
    }
}

struct RecordSink {
    const Sentence& sent;
    std::vector<SvoRecord>& out;
    std::int64_t next_id = 0;

    void emit(const std::string& agent, const EventLabel& event, const std::string& target,
              int verb, int passive, int approx) {
        SvoRecord r;
        r.triple_id = next_id++;
        r.doc_id = sent.doc_id;
        r.sent_id = sent.sent_id;
        r.agent = agent;
        r.event = event;
        r.target = target;
        r.is_passive = passive;
        r.passive_approx = approx;
        r.verb_index = verb;
        out.push_back(std::move(r));
    }
};

std::vector<std::string> parse_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

constexpr const char* kCsvHeader =
    "triple_id,doc_id,sent_id,relation,source,source_role,target,target_role,"
    "event_phrase,is_passive,passive_approx";

} // namespace

const char* to_string(PassiveSignal s) {
    switch (s) {
    case PassiveSignal::NONE: return "NONE";
    case PassiveSignal::CANONICAL: return "CANONICAL";
    case PassiveSignal::FEEL: return "FEEL";
    case PassiveSignal::AGENT_PHRASE: return "AGENT_PHRASE";
    case PassiveSignal::CONJUNCT: return "CONJUNCT";
    }
    return "NONE";
}

const char* to_string(Relation r) {
    return r == Relation::AGENT_EVENT ? "AGENT_EVENT" : "EVENT_TARGET";
}

std::vector<int> find_verb_candidates(const Sentence& sent) {
    std::vector<int> out;
    for (const Token& t : sent.tokens) {
        if (!is_verb_upos(t.upos)) continue;
        switch (t.deprel) {
        case CanonicalLabel::AUX:
        case CanonicalLabel::AUX_PASS:
        case CanonicalLabel::ACOMP:
        case CanonicalLabel::PREP:
        case CanonicalLabel::ATTR:
        case CanonicalLabel::OPRD:
            break;
        default:
            out.push_back(t.index);
        }
    }
    return out;
}

PassiveInfo passive_info(int verb, const Sentence& sent) {
    return passive_info_impl(verb, sent, max_depth(sent));
}

std::vector<int> extract_subjects(int verb, const Sentence& sent) {
    return extract_subjects_impl(verb, sent, max_depth(sent));
}

std::vector<int> extract_objects(int verb, const Sentence& sent) {
    return extract_objects_impl(verb, sent, max_depth(sent));
}

EventLabel build_event_label(int verb, const Sentence& sent) {
    std::vector<int> ids;
    collect_event_tokens(verb, sent, ids, max_depth(sent));
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<std::string> lemmas, surfaces;
    lemmas.reserve(ids.size());
    for (int i : ids) {
        lemmas.push_back(sent.token(i).lemma);
        surfaces.push_back(to_lower(sent.token(i).surface));
    }
    EventLabel label;
    label.phrase = join(lemmas, " ");
    label.head_lemma = sent.token(verb).lemma;
    label.surface = join(surfaces, " ");
    return label;
}

std::vector<SvoRecord> extract_sentence_svos(const Sentence& sent) {
    std::vector<SvoRecord> records;
    RecordSink sink{sent, records};

    for (int verb : find_verb_candidates(sent)) {
        PassiveInfo info = passive_info(verb, sent);
        auto subjects = extract_subjects(verb, sent);
        auto objects = extract_objects(verb, sent);
        EventLabel event = build_event_label(verb, sent);

        auto lemma_of = [&](int idx) { return sent.token(idx).lemma; };

        if (info.is_passive) {
            if (info.agent_token) {
                // Explicit by-phrase: its object is the semantic actor, the
                // grammatical subject moves to the target slot.
                const std::string agent = lemma_of(*info.agent_token);
                if (subjects.empty()) {
                    sink.emit(agent, event, kNone, verb, 1, 0);
                } else {
                    for (int s : subjects) sink.emit(agent, event, lemma_of(s), verb, 1, 0);
                }
            } else {
                // Agentless: keep the grammatical subject as an approximated
                // placeholder in the agent slot.
                if (!subjects.empty() && !objects.empty()) {
                    for (int s : subjects)
                        for (int o : objects) sink.emit(lemma_of(s), event, lemma_of(o), verb, 1, 1);
                } else if (!subjects.empty()) {
                    for (int s : subjects) sink.emit(lemma_of(s), event, kNone, verb, 1, 1);
                } else if (!objects.empty()) {
                    for (int o : objects) sink.emit(kNone, event, lemma_of(o), verb, 1, 1);
                }
            }
        } else {
            if (!subjects.empty() && !objects.empty()) {
                for (int s : subjects)
                    for (int o : objects) sink.emit(lemma_of(s), event, lemma_of(o), verb, 0, 0);
            } else if (!subjects.empty()) {
                for (int s : subjects) sink.emit(lemma_of(s), event, kNone, verb, 0, 0);
            } else if (!objects.empty()) {
                for (int o : objects) sink.emit(kNone, event, lemma_of(o), verb, 0, 0);
            }
        }
    }
    return records;
}

std::vector<SvoRecord> extract_svos(const Corpus& corpus, int jobs) {
    const size_t ndocs = corpus.documents.size();
    std::vector<std::vector<SvoRecord>> per_doc(ndocs);

    auto process_doc = [&](size_t d) {
        for (const Sentence& sent : corpus.documents[d].sentences) {
            auto recs = extract_sentence_svos(sent);
            auto& dst = per_doc[d];
            dst.insert(dst.end(), std::make_move_iterator(recs.begin()),
                       std::make_move_iterator(recs.end()));
        }
    };

    if (jobs <= 1 || ndocs <= 1) {
        for (size_t d = 0; d < ndocs; ++d) process_doc(d);
    } else {
        const size_t workers = std::min<size_t>(static_cast<size_t>(jobs), ndocs);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::atomic<size_t> next{0};
        for (size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (size_t d = next.fetch_add(1); d < ndocs; d = next.fetch_add(1)) process_doc(d);
            });
        }
        for (auto& th : pool) th.join();
    }

    // Post-hoc renumbering in input order keeps the output independent of
    // the worker count.
    std::vector<SvoRecord> out;
    std::int64_t id = 0;
    for (auto& recs : per_doc) {
        for (auto& r : recs) {
            r.triple_id = id++;
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<SvoRecord> extract_baseline(const Corpus& corpus) {
    std::vector<SvoRecord> out;
    std::int64_t id = 0;
    for (const auto& doc : corpus.documents) {
        for (const Sentence& sent : doc.sentences) {
            const int root = sent.root_index();
            if (root == 0) continue;
            const Token& rt = sent.token(root);

            std::optional<int> subj;
            for (int c : sent.children_of(root)) {
                CanonicalLabel d = sent.token(c).deprel;
                if (d == CanonicalLabel::SUBJ || d == CanonicalLabel::SUBJ_PASS) {
                    subj = c;
                    break;
                }
            }

            // Fixed priority scan for the first available object.
            std::optional<int> obj;
            auto first_object = [&](int head, auto&& self, int depth) -> std::optional<int> {
                if (depth <= 0) return std::nullopt;
                for (CanonicalLabel want :
                     {CanonicalLabel::OBJ_DIRECT, CanonicalLabel::OBJ_PREP, CanonicalLabel::ATTR,
                      CanonicalLabel::ACOMP, CanonicalLabel::COMP_CLAUSAL}) {
                    for (int c : sent.children_of(head))
                        if (sent.token(c).deprel == want) return c;
                }
                for (int c : sent.children_of(head)) {
                    if (sent.token(c).deprel == CanonicalLabel::PREP)
                        for (int gc : sent.children_of(c))
                            if (sent.token(gc).deprel == CanonicalLabel::OBJ_PREP) return gc;
                }
                for (int c : sent.children_of(head)) {
                    if (sent.token(c).deprel == CanonicalLabel::COMP_OPEN) {
                        auto inner = self(c, self, depth - 1);
                        if (inner) return inner;
                    }
                }
                return std::nullopt;
            };
            obj = first_object(root, first_object, max_depth(sent));

            const bool root_is_verb = is_verb_upos(rt.upos);
            EventLabel event;
            event.phrase = root_is_verb ? rt.lemma : std::string(kNone);
            event.head_lemma = event.phrase;
            event.surface = root_is_verb ? to_lower(rt.surface) : std::string(kNone);

            SvoRecord r;
            r.triple_id = id++;
            r.doc_id = sent.doc_id;
            r.sent_id = sent.sent_id;
            r.event = event;
            r.verb_index = root;

            PassiveInfo info = root_is_verb ? passive_info(root, sent) : PassiveInfo{};
            if (info.is_passive) {
                r.is_passive = 1;
                if (info.agent_token) {
                    r.agent = sent.token(*info.agent_token).lemma;
                    r.target = subj ? sent.token(*subj).lemma : std::string(kNone);
                } else {
                    r.passive_approx = 1;
                    r.agent = subj ? sent.token(*subj).lemma : std::string(kNone);
                    r.target = obj ? sent.token(*obj).lemma : std::string(kNone);
                }
            } else {
                r.agent = subj ? sent.token(*subj).lemma : std::string(kNone);
                r.target = obj ? sent.token(*obj).lemma : std::string(kNone);
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

void write_svo_csv(std::ostream& out, const std::vector<SvoRecord>& records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        const std::string flags = "," + std::to_string(r.is_passive) + "," +
                                  std::to_string(r.passive_approx);
        const std::string shared = std::to_string(r.triple_id) + "," + csv_escape(r.doc_id) + "," +
                                   csv_escape(r.sent_id) + ",";
        out << shared << "AGENT_EVENT," << csv_escape(r.agent) << ",AGENT,"
            << csv_escape(r.event.head_lemma) << ",EVENT," << csv_escape(r.event.phrase) << flags
            << '\n';
        out << shared << "EVENT_TARGET," << csv_escape(r.event.head_lemma) << ",EVENT,"
            << csv_escape(r.target) << ",TARGET," << csv_escape(r.event.phrase) << flags << '\n';
    }
}

std::string svo_csv_string(const std::vector<SvoRecord>& records) {
    std::ostringstream out;
    write_svo_csv(out, records);
    return out.str();
}

std::vector<SvoRecord> read_svo_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw LoadError("empty SVO CSV");
    line = strip_cr(line);
    if (line != kCsvHeader) throw LoadError("unexpected SVO CSV header: " + line);

    std::map<std::int64_t, SvoRecord> by_id;
    std::map<std::int64_t, std::pair<bool, bool>> seen; // (agent_event, event_target)
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto f = parse_csv_row(line);
        if (f.size() != 11)
            throw LoadError("SVO CSV line " + std::to_string(line_no) + ": expected 11 fields");
        std::int64_t id = 0;
        try {
            id = std::stoll(f[0]);
        } catch (...) {
            throw LoadError("SVO CSV line " + std::to_string(line_no) + ": bad triple_id");
        }
        SvoRecord& r = by_id[id];
        r.triple_id = id;
        r.doc_id = f[1];
        r.sent_id = f[2];
        r.event.phrase = f[8];
        r.is_passive = f[9] == "1" ? 1 : 0;
        r.passive_approx = f[10] == "1" ? 1 : 0;
        if (f[3] == "AGENT_EVENT") {
            r.agent = f[4];
            r.event.head_lemma = f[6];
            seen[id].first = true;
        } else if (f[3] == "EVENT_TARGET") {
            r.event.head_lemma = f[4];
            r.target = f[6];
            seen[id].second = true;
        } else {
            throw LoadError("SVO CSV line " + std::to_string(line_no) + ": bad relation '" + f[3] +
                            "'");
        }
    }
    std::vector<SvoRecord> out;
    out.reserve(by_id.size());
    for (auto& [id, r] : by_id) {
        auto s = seen[id];
        if (!s.first || !s.second)
            throw LoadError("SVO CSV triple " + std::to_string(id) + " is missing one of its rows");
        r.event.surface = r.event.phrase;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SvoRecord> read_svo_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open SVO CSV: " + path);
    return read_svo_csv(in);
}

} // namespace tea
