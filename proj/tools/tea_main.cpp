// tea: corpus-analysis CLI over Target-Event-Agent networks.
//
// Subcommands compose the library stages: extract (CoNLL-U -> SVO table),
// graph (SVO -> network export), metrics (degree/frequency tables), compare
// (two corpora: shared-edge correlation, prominence, norm-based rank-sum),
// emotions (z-score profile against a random baseline), validate (gold
// benchmark evaluation), merge (SVO table concatenation).

#include "tea/analytics.hpp"
#include "tea/benchmark.hpp"
#include "tea/conllu.hpp"
#include "tea/errors.hpp"
#include "tea/graph.hpp"
#include "tea/lexicons.hpp"
#include "tea/strings.hpp"
#include "tea/svo.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct FilterFlags {
    std::string agent, event, target;
    std::string voice = "any";
    bool exclude_approx = false;
};

void add_filter_flags(CLI::App* cmd, FilterFlags& f) {
    cmd->add_option("--agent", f.agent, "Keep triples whose agent lemma matches");
    cmd->add_option("--event", f.event, "Keep triples whose event head lemma matches");
    cmd->add_option("--target", f.target, "Keep triples whose target lemma matches");
    cmd->add_option("--voice", f.voice, "Voice filter: active, passive, any")
        ->check(CLI::IsMember({"active", "passive", "any"}));
    cmd->add_flag("--exclude-approx", f.exclude_approx,
                  "Drop triples flagged passive_approx=1");
}

tea::SvoFilter to_filter(const FilterFlags& f) {
    tea::SvoFilter out;
    if (!f.agent.empty()) out.agent = f.agent;
    if (!f.event.empty()) out.event = f.event;
    if (!f.target.empty()) out.target = f.target;
    if (f.voice == "active") out.voice = tea::SvoFilter::Voice::ACTIVE;
    else if (f.voice == "passive") out.voice = tea::SvoFilter::Voice::PASSIVE;
    out.exclude_approx = f.exclude_approx;
    return out;
}

tea::EventKey event_key_from(const std::string& name) {
    if (name == "head") return tea::EventKey::HEAD_LEMMA;
    if (name == "phrase") return tea::EventKey::PHRASE;
    throw tea::UsageError("unknown event key '" + name + "'");
}

void check_output_path(const std::string& path) {
    if (path.empty()) return;
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty() && !std::filesystem::exists(parent))
        throw tea::UsageError("output directory does not exist: " + parent.string());
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    check_output_path(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tea::UsageError("cannot open output file: " + path);
    out << text;
}

json json_or_null(bool defined, double v) {
    if (!defined) return nullptr;
    return v;
}

void warn_duplicates(const std::string& path, size_t count) {
    if (count > 0)
        std::cerr << "note: " << path << ": " << count
                  << " duplicate lemma row(s), last value kept\n";
}

std::vector<std::string> profile_words(const std::vector<tea::SvoRecord>& records,
                                       tea::Role role, tea::EventKey key) {
    std::vector<std::string> words;
    for (const auto& r : records) {
        std::string label;
        switch (role) {
        case tea::Role::AGENT: label = r.agent; break;
        case tea::Role::EVENT: label = tea::event_key_of(r, key); break;
        case tea::Role::TARGET: label = r.target; break;
        }
        if (label == tea::kNone) continue;
        for (auto& w : tea::split_words(label)) words.push_back(std::move(w));
    }
    return words;
}

json metrics_json(const tea::MetricsTable& table) {
    json rows = json::array();
    for (const auto& r : table.rows) {
        json row;
        row["label"] = r.label;
        row["role"] = tea::to_string(r.role);
        row["K"] = r.degree;
        row["K_star"] = r.relative ? json(*r.relative) : json(nullptr);
        row["F"] = r.frequency;
        row["RI"] = r.repetitiveness;
        rows.push_back(std::move(row));
    }
    return rows;
}

json role_report_json(const tea::EvalReport& report) {
    json rows = json::array();
    for (const auto& r : report.roles) {
        rows.push_back({{"role", r.name},
                        {"correct", r.correct},
                        {"true_positives", r.true_positives},
                        {"total", r.total},
                        {"accuracy", r.accuracy}});
    }
    return rows;
}

json passive_report_json(const tea::EvalReport& report) {
    json out;
    json rows = json::array();
    for (const auto& c : report.classes) {
        rows.push_back(
            {{"class", c.name}, {"correct", c.correct}, {"total", c.total}, {"accuracy", c.accuracy}});
    }
    out["classes"] = std::move(rows);
    out["macro_accuracy"] = report.macro_accuracy;
    out["overall_accuracy"] = report.overall_accuracy;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Target-Event-Agent network extraction and analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string schema_name = "clear";
    int jobs = 1;
    std::uint64_t seed = 42;
    app.add_option("--schema", schema_name, "Dependency label schema: clear, ud, or mapping TSV");
    app.add_option("--jobs", jobs, "Worker threads for extraction")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for randomized baselines");

    // extract
    auto* cmd_extract = app.add_subcommand("extract", "Extract SVO triples from CoNLL-U");
    std::string ex_input, ex_out, ex_doc_id = "doc";
    bool ex_baseline = false;
    cmd_extract->add_option("--input", ex_input, "CoNLL-U file")->required()->check(CLI::ExistingFile);
    cmd_extract->add_option("--out", ex_out, "Output CSV (stdout when omitted)");
    cmd_extract->add_option("--doc-id", ex_doc_id, "Fallback document id");
    cmd_extract->add_flag("--baseline", ex_baseline, "Use the minimal root-verb extractor");

    // graph
    auto* cmd_graph = app.add_subcommand("graph", "Build and export a TEA network");
    std::string g_svo, g_valence, g_synonyms, g_format = "graphml", g_out, g_event_key = "head";
    bool g_hypergraph = false;
    FilterFlags g_filter;
    cmd_graph->add_option("--svo", g_svo, "SVO CSV")->required()->check(CLI::ExistingFile);
    cmd_graph->add_option("--valence", g_valence, "Valence lexicon TSV")->check(CLI::ExistingFile);
    cmd_graph->add_option("--synonyms", g_synonyms, "Synonym groups TSV")->check(CLI::ExistingFile);
    cmd_graph->add_option("--format", g_format, "graphml, json, or edgelist")
        ->check(CLI::IsMember({"graphml", "json", "edgelist"}));
    cmd_graph->add_option("--event-key", g_event_key, "Event node key: head or phrase")
        ->check(CLI::IsMember({"head", "phrase"}));
    cmd_graph->add_option("--out", g_out, "Output file (stdout when omitted)");
    cmd_graph->add_flag("--hypergraph", g_hypergraph, "Emit one hyperedge line per triple instead");
    add_filter_flags(cmd_graph, g_filter);

    // metrics
    auto* cmd_metrics = app.add_subcommand("metrics", "Node degree/frequency metrics");
    std::string m_svo, m_role = "agent", m_out, m_event_key = "head";
    bool m_json = false;
    FilterFlags m_filter;
    cmd_metrics->add_option("--svo", m_svo, "SVO CSV")->required()->check(CLI::ExistingFile);
    cmd_metrics->add_option("--role", m_role, "agent, event, or target")
        ->check(CLI::IsMember({"agent", "event", "target"}));
    cmd_metrics->add_option("--event-key", m_event_key, "Event node key: head or phrase")
        ->check(CLI::IsMember({"head", "phrase"}));
    cmd_metrics->add_option("--out", m_out, "Output file (stdout when omitted)");
    cmd_metrics->add_flag("--json", m_json, "Emit JSON instead of TSV");
    add_filter_flags(cmd_metrics, m_filter);

    // compare
    auto* cmd_compare = app.add_subcommand("compare", "Compare two SVO tables");
    std::string c_a, c_b, c_anchor, c_relation = "agent_event", c_out, c_event_key = "head";
    std::string c_norms, c_norms_name = "norms", c_norm_mode = "split", c_norm_role = "agent";
    bool c_unique = false;
    cmd_compare->add_option("--a", c_a, "First SVO CSV")->required()->check(CLI::ExistingFile);
    cmd_compare->add_option("--b", c_b, "Second SVO CSV")->required()->check(CLI::ExistingFile);
    cmd_compare->add_option("--anchor", c_anchor,
                            "role:lemma anchor for shared-edge correlation (e.g. agent:i)");
    cmd_compare->add_option("--relation", c_relation, "agent_event or event_target")
        ->check(CLI::IsMember({"agent_event", "event_target"}));
    cmd_compare->add_option("--event-key", c_event_key, "Event node key: head or phrase")
        ->check(CLI::IsMember({"head", "phrase"}));
    cmd_compare->add_option("--norms", c_norms, "Scalar norms TSV; switches to rank-sum mode")
        ->check(CLI::ExistingFile);
    cmd_compare->add_option("--norms-name", c_norms_name, "Name of the norms table");
    cmd_compare->add_option("--norm-mode", c_norm_mode, "split or mean")
        ->check(CLI::IsMember({"split", "mean"}));
    cmd_compare->add_option("--norm-role", c_norm_role, "Role whose labels are scored")
        ->check(CLI::IsMember({"agent", "event", "target"}));
    cmd_compare->add_flag("--unique", c_unique, "Deduplicate labels before the norm join");
    cmd_compare->add_option("--out", c_out, "Output JSON file (stdout when omitted)");

    // emotions
    auto* cmd_emotions = app.add_subcommand("emotions", "Emotion z-score profile");
    std::string e_svo, e_words, e_lex, e_role = "event", e_out, e_event_key = "head";
    std::size_t e_samples = 1000;
    FilterFlags e_filter;
    cmd_emotions->add_option("--svo", e_svo, "SVO CSV word source")->check(CLI::ExistingFile);
    cmd_emotions->add_option("--words", e_words, "Plain word list (one lemma per line)")
        ->check(CLI::ExistingFile);
    cmd_emotions->add_option("--emotions", e_lex, "Word-emotion association TSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_emotions->add_option("--role", e_role, "Role whose labels supply the words")
        ->check(CLI::IsMember({"agent", "event", "target"}));
    cmd_emotions->add_option("--event-key", e_event_key, "Event node key: head or phrase")
        ->check(CLI::IsMember({"head", "phrase"}));
    cmd_emotions->add_option("--samples", e_samples, "Baseline sample count (M)");
    cmd_emotions->add_option("--out", e_out, "Output JSON file (stdout when omitted)");
    add_filter_flags(cmd_emotions, e_filter);

    // validate
    auto* cmd_validate = app.add_subcommand("validate", "Evaluate an extractor against gold");
    std::string v_conllu, v_gold, v_extractor = "tea", v_out;
    cmd_validate->add_option("--conllu", v_conllu, "Benchmark CoNLL-U")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_validate->add_option("--gold", v_gold, "Gold triples TSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_validate->add_option("--extractor", v_extractor, "tea or baseline")
        ->check(CLI::IsMember({"tea", "baseline"}));
    cmd_validate->add_option("--out", v_out, "Report JSON file");

    // merge
    auto* cmd_merge = app.add_subcommand("merge", "Concatenate SVO tables, re-offsetting ids");
    std::vector<std::string> mg_inputs;
    std::string mg_out;
    cmd_merge->add_option("inputs", mg_inputs, "SVO CSV files")->check(CLI::ExistingFile);
    cmd_merge->add_option("--out", mg_out, "Output CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_extract) {
            tea::Corpus corpus;
            if (cmd_extract->count("--doc-id") > 0) {
                std::ifstream in(ex_input);
                if (!in) throw tea::LoadError("cannot open CoNLL-U file: " + ex_input);
                corpus = tea::parse_conllu(in, ex_doc_id);
            } else {
                corpus = tea::parse_conllu_file(ex_input);
            }
            corpus = tea::apply_schema(std::move(corpus), tea::schema_by_name(schema_name));
            auto records =
                ex_baseline ? tea::extract_baseline(corpus) : tea::extract_svos(corpus, jobs);
            write_text(ex_out, tea::svo_csv_string(records));
        } else if (*cmd_graph) {
            auto records = tea::filter_records(tea::read_svo_csv_file(g_svo), to_filter(g_filter));
            const auto key = event_key_from(g_event_key);
            if (g_hypergraph) {
                write_text(g_out, tea::export_hypergraph(records, key));
            } else {
                tea::ValenceLexicon valence;
                if (!g_valence.empty()) {
                    valence = tea::load_valence(g_valence);
                    warn_duplicates(g_valence, valence.duplicate_rows);
                }
                std::optional<tea::SynonymTable> synonyms;
                if (!g_synonyms.empty()) synonyms = tea::load_synonyms(g_synonyms);
                auto graph = tea::build_graph(records, valence,
                                              synonyms ? &*synonyms : nullptr, key);
                graph.provenance.push_back(g_svo);
                auto format = tea::graph_format_from(g_format);
                write_text(g_out, tea::export_graph(graph, *format));
            }
        } else if (*cmd_metrics) {
            auto records = tea::filter_records(tea::read_svo_csv_file(m_svo), to_filter(m_filter));
            auto role = tea::role_from(m_role);
            auto table = tea::node_metrics(records, *role, event_key_from(m_event_key));
            tea::relative_degree(table);
            if (m_json) {
                write_text(m_out, metrics_json(table).dump(2) + "\n");
            } else {
                write_text(m_out, tea::metrics_tsv(table));
            }
        } else if (*cmd_compare) {
            auto records_a = tea::read_svo_csv_file(c_a);
            auto records_b = tea::read_svo_csv_file(c_b);
            const auto key = event_key_from(c_event_key);
            json out;
            out["a"] = c_a;
            out["b"] = c_b;

            if (!c_norms.empty()) {
                auto norms = tea::load_norms(c_norms, c_norms_name);
                warn_duplicates(c_norms, norms.duplicate_rows);
                auto role = tea::role_from(c_norm_role);
                auto labels_of = [&](const std::vector<tea::SvoRecord>& records) {
                    std::vector<std::string> labels;
                    for (const auto& r : records) {
                        std::string label;
                        switch (*role) {
                        case tea::Role::AGENT: label = r.agent; break;
                        case tea::Role::EVENT: label = tea::event_key_of(r, key); break;
                        case tea::Role::TARGET: label = r.target; break;
                        }
                        if (label != tea::kNone) labels.push_back(std::move(label));
                    }
                    if (c_unique) {
                        std::vector<std::string> unique;
                        std::set<std::string> seen;
                        for (auto& l : labels)
                            if (seen.insert(l).second) unique.push_back(l);
                        labels = std::move(unique);
                    }
                    return labels;
                };
                const auto mode =
                    c_norm_mode == "mean" ? tea::NormMode::MEAN : tea::NormMode::SPLIT;
                auto join_a = tea::join_norms(labels_of(records_a), norms, mode);
                auto join_b = tea::join_norms(labels_of(records_b), norms, mode);
                auto result = tea::rank_sum_test(join_a.scores, join_b.scores);
                out["norms"] = {{"name", c_norms_name},
                                {"role", c_norm_role},
                                {"mode", c_norm_mode},
                                {"n_a", join_a.scores.size()},
                                {"n_b", join_b.scores.size()},
                                {"omitted_a", join_a.omitted},
                                {"omitted_b", join_b.omitted},
                                {"U", result.u},
                                {"p", result.p},
                                {"exact", result.exact}};
            } else {
                const auto relation = c_relation == "event_target" ? tea::Relation::EVENT_TARGET
                                                                   : tea::Relation::AGENT_EVENT;
                auto nw_a = tea::normalized_edge_weights(records_a, relation, "a", key);
                auto nw_b = tea::normalized_edge_weights(records_b, relation, "b", key);
                auto prom = tea::prominence(nw_a, nw_b);

                std::optional<std::pair<tea::Role, std::string>> anchor;
                if (!c_anchor.empty()) {
                    auto pos = c_anchor.find(':');
                    if (pos == std::string::npos)
                        throw tea::UsageError("anchor must look like role:lemma");
                    auto role = tea::role_from(c_anchor.substr(0, pos));
                    if (!role) throw tea::UsageError("bad anchor role in '" + c_anchor + "'");
                    anchor = {*role, c_anchor.substr(pos + 1)};
                }
                if (anchor) {
                    auto res = tea::kendall_tau_shared(records_a, records_b, anchor->first,
                                                       anchor->second, key);
                    out["anchor"] = {{"role", tea::to_string(anchor->first)},
                                     {"lemma", anchor->second}};
                    out["n_shared"] = res.n_shared;
                    out["tau"] = json_or_null(res.defined, res.tau);
                    out["p"] = json_or_null(res.defined, res.p);
                    // Restrict the prominence listing to the anchor's edges.
                    std::vector<tea::ProminenceRow> filtered;
                    for (const auto& row : prom) {
                        const bool incident = anchor->first == tea::Role::AGENT
                                                  ? row.source == anchor->second
                                                  : (anchor->first == tea::Role::EVENT
                                                         ? row.source == anchor->second ||
                                                               row.target == anchor->second
                                                         : row.target == anchor->second);
                        if (incident) filtered.push_back(row);
                    }
                    prom = std::move(filtered);
                }
                json rows = json::array();
                for (const auto& row : prom) {
                    rows.push_back({{"source", row.source},
                                    {"target", row.target},
                                    {"nw_a", row.nw_a},
                                    {"nw_b", row.nw_b},
                                    {"prominence", row.prominence}});
                }
                out["relation"] = c_relation;
                out["prominence"] = std::move(rows);
            }
            write_text(c_out, out.dump(2) + "\n");
        } else if (*cmd_emotions) {
            std::vector<std::string> words;
            if (!e_words.empty()) {
                std::ifstream in(e_words);
                std::string line;
                while (std::getline(in, line)) {
                    line = tea::trim(tea::strip_cr(line));
                    if (!line.empty()) words.push_back(tea::to_lower(line));
                }
            } else if (!e_svo.empty()) {
                auto records =
                    tea::filter_records(tea::read_svo_csv_file(e_svo), to_filter(e_filter));
                words = profile_words(records, *tea::role_from(e_role),
                                      event_key_from(e_event_key));
            } else {
                throw tea::UsageError("emotions needs --svo or --words");
            }
            auto lex = tea::load_emotions(e_lex);
            warn_duplicates(e_lex, lex.duplicate_rows);
            auto profile = tea::emotion_zscores(words, lex, e_samples, seed);
            json out;
            out["parameters"] = {{"samples", profile.samples},
                                 {"seed", profile.seed},
                                 {"words", profile.word_count}};
            json rows = json::array();
            for (const auto& s : profile.stats) {
                rows.push_back({{"emotion", s.emotion},
                                {"observed", s.observed},
                                {"mu", s.mu},
                                {"sigma", s.sigma},
                                {"z", json_or_null(s.defined, s.z)},
                                {"significant", s.defined && std::fabs(s.z) >= 1.96}});
            }
            out["profile"] = std::move(rows);
            write_text(e_out, out.dump(2) + "\n");
        } else if (*cmd_validate) {
            auto corpus = tea::apply_schema(tea::parse_conllu_file(v_conllu),
                                            tea::schema_by_name(schema_name));
            auto gold = tea::load_gold_tsv(v_gold);
            auto records = v_extractor == "baseline" ? tea::extract_baseline(corpus)
                                                     : tea::extract_svos(corpus, jobs);
            auto role_report = tea::evaluate_roles(records, gold);

            std::map<std::string, int> predicted_flags, gold_flags;
            for (const auto& g : gold) gold_flags[g.sent_id] = g.is_passive;
            for (const auto* sent : corpus.all_sentences()) {
                int flag = 0;
                for (int v : tea::find_verb_candidates(*sent))
                    if (tea::passive_info(v, *sent).is_passive) flag = 1;
                predicted_flags[sent->sent_id] = flag;
            }
            auto passive_report = tea::evaluate_passive(predicted_flags, gold_flags);

            std::string text = tea::format_role_report(role_report, v_extractor) + "\n" +
                               tea::format_passive_report(passive_report);
            std::cout << text;
            if (!v_out.empty()) {
                json out;
                out["extractor"] = v_extractor;
                out["roles"] = role_report_json(role_report);
                out["passive"] = passive_report_json(passive_report);
                write_text(v_out, out.dump(2) + "\n");
            }
        } else if (*cmd_merge) {
            std::vector<std::vector<tea::SvoRecord>> tables;
            for (const auto& path : mg_inputs) tables.push_back(tea::read_svo_csv_file(path));
            auto merged = tea::merge_svo_tables(tables);
            write_text(mg_out, tea::svo_csv_string(merged));
        }
    } catch (const tea::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
