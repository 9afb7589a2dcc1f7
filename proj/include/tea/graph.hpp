#pragma once

#include "tea/lexicons.hpp"
#include "tea/svo.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tea {

enum class Role { AGENT, EVENT, TARGET };

const char* to_string(Role r);
std::optional<Role> role_from(std::string_view name);

// Whether event nodes are keyed by the head verb lemma or the full bundled
// phrase. Both granularities are supported throughout.
enum class EventKey { HEAD_LEMMA, PHRASE };

std::string event_key_of(const SvoRecord& r, EventKey key);

struct TeaNode {
    std::string label;
    Role role = Role::AGENT;
    Polarity polarity = Polarity::NEUTRAL;

    bool operator==(const TeaNode&) const = default;
};

enum class EdgeKind { SYNTACTIC, SYNONYM };

struct TeaEdge {
    size_t source = 0; // node indices; source < target after canonicalization
    size_t target = 0;
    EdgeKind kind = EdgeKind::SYNTACTIC;
    std::int64_t weight = 0;
    std::int64_t active = 0;
    std::int64_t passive_agent = 0;
    std::int64_t passive_approx = 0;

    bool operator==(const TeaEdge&) const = default;
};

// Almost-tripartite network: syntactic edges join AGENT-EVENT or
// EVENT-TARGET only; synonym edges join same-role nodes.
struct TeaGraph {
    std::vector<TeaNode> nodes;
    std::vector<TeaEdge> edges;
    std::vector<std::string> provenance;

    std::optional<size_t> find_node(const std::string& label, Role role) const;
};

// Structural equality up to node/edge ordering.
bool graphs_equal(const TeaGraph& a, const TeaGraph& b);

// Triple-level record filter; every supplied constraint must match.
struct SvoFilter {
    std::optional<std::string> agent;
    std::optional<std::string> event; // matched against the head lemma
    std::optional<std::string> target;
    enum class Voice { ANY, ACTIVE, PASSIVE } voice = Voice::ANY;
    bool exclude_approx = false;
};

std::vector<SvoRecord> filter_records(const std::vector<SvoRecord>& records, const SvoFilter& f);

TeaGraph build_graph(const std::vector<SvoRecord>& records, const ValenceLexicon& valence,
                     const SynonymTable* synonyms = nullptr,
                     EventKey event_key = EventKey::HEAD_LEMMA);

enum class GraphFormat { GRAPHML, JSON, EDGELIST };

std::optional<GraphFormat> graph_format_from(std::string_view name);

std::string export_graph(const TeaGraph& graph, GraphFormat format);

// Readers for the two lossless formats, used by the round-trip checks.
TeaGraph import_graph_json(const std::string& text);
TeaGraph import_graph_graphml(const std::string& text);

// One line per triple: its hyperedge members (role:label), skipping empty
// slots.
std::string export_hypergraph(const std::vector<SvoRecord>& records,
                              EventKey event_key = EventKey::HEAD_LEMMA);

} // namespace tea
