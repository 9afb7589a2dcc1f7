#include "tea/graph.hpp"

#include "tea/errors.hpp"
#include "tea/strings.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace tea {

namespace {

using json = nlohmann::json;

struct EdgeKeyLess {
    bool operator()(const std::tuple<size_t, size_t, EdgeKind>& a,
                    const std::tuple<size_t, size_t, EdgeKind>& b) const {
        return a < b;
    }
};

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string xml_unescape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size();) {
        if (s[i] == '&') {
            if (s.compare(i, 5, "&amp;") == 0) { out += '&'; i += 5; continue; }
            if (s.compare(i, 4, "&lt;") == 0) { out += '<'; i += 4; continue; }
            if (s.compare(i, 4, "&gt;") == 0) { out += '>'; i += 4; continue; }
            if (s.compare(i, 6, "&quot;") == 0) { out += '"'; i += 6; continue; }
            if (s.compare(i, 6, "&apos;") == 0) { out += '\''; i += 6; continue; }
        }
        out += s[i++];
    }
    return out;
}

Polarity polarity_from(const std::string& name) {
    if (name == "positive") return Polarity::POSITIVE;
    if (name == "negative") return Polarity::NEGATIVE;
    return Polarity::NEUTRAL;
}

// Canonical form used for comparisons: nodes sorted by (role, label), edges
// re-indexed and sorted.
TeaGraph canonicalize(const TeaGraph& g) {
    std::vector<size_t> order(g.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const auto& na = g.nodes[a];
        const auto& nb = g.nodes[b];
        if (na.role != nb.role) return na.role < nb.role;
        return na.label < nb.label;
    });
    std::vector<size_t> rank(g.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    TeaGraph out;
    out.provenance = g.provenance;
    out.nodes.reserve(g.nodes.size());
    for (size_t i : order) out.nodes.push_back(g.nodes[i]);
    out.edges.reserve(g.edges.size());
    for (TeaEdge e : g.edges) {
        e.source = rank[e.source];
        e.target = rank[e.target];
        if (e.source > e.target) std::swap(e.source, e.target);
        out.edges.push_back(e);
    }
    std::sort(out.edges.begin(), out.edges.end(), [](const TeaEdge& a, const TeaEdge& b) {
        return std::tie(a.source, a.target, a.kind) < std::tie(b.source, b.target, b.kind);
    });
    return out;
}

} // namespace

const char* to_string(Role r) {
    switch (r) {
    case Role::AGENT: return "AGENT";
    case Role::EVENT: return "EVENT";
    case Role::TARGET: return "TARGET";
    }
    return "AGENT";
}

std::optional<Role> role_from(std::string_view name) {
    std::string n = to_lower(name);
    if (n == "agent") return Role::AGENT;
    if (n == "event") return Role::EVENT;
    if (n == "target") return Role::TARGET;
    return std::nullopt;
}

std::string event_key_of(const SvoRecord& r, EventKey key) {
    return key == EventKey::HEAD_LEMMA ? r.event.head_lemma : r.event.phrase;
}

std::optional<size_t> TeaGraph::find_node(const std::string& label, Role role) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].role == role && nodes[i].label == label) return i;
    return std::nullopt;
}

bool graphs_equal(const TeaGraph& a, const TeaGraph& b) {
    TeaGraph ca = canonicalize(a);
    TeaGraph cb = canonicalize(b);
    return ca.nodes == cb.nodes && ca.edges == cb.edges;
}

std::vector<SvoRecord> filter_records(const std::vector<SvoRecord>& records, const SvoFilter& f) {
    std::vector<SvoRecord> out;
    for (const auto& r : records) {
        if (f.agent && r.agent != *f.agent) continue;
        if (f.event && r.event.head_lemma != *f.event) continue;
        if (f.target && r.target != *f.target) continue;
        if (f.voice == SvoFilter::Voice::ACTIVE && r.is_passive != 0) continue;
        if (f.voice == SvoFilter::Voice::PASSIVE && r.is_passive != 1) continue;
        if (f.exclude_approx && r.passive_approx == 1) continue;
        out.push_back(r);
    }
    return out;
}

TeaGraph build_graph(const std::vector<SvoRecord>& records, const ValenceLexicon& valence,
                     const SynonymTable* synonyms, EventKey event_key) {
    TeaGraph g;
    std::map<std::pair<std::string, Role>, size_t> node_ix;
    auto node_of = [&](const std::string& label, Role role) -> size_t {
        auto key = std::make_pair(label, role);
        auto it = node_ix.find(key);
        if (it != node_ix.end()) return it->second;
        TeaNode n;
        n.label = label;
        n.role = role;
        n.polarity = classify_label_polarity(valence, label);
        g.nodes.push_back(std::move(n));
        node_ix[key] = g.nodes.size() - 1;
        return g.nodes.size() - 1;
    };

    std::map<std::tuple<size_t, size_t, EdgeKind>, size_t, EdgeKeyLess> edge_ix;
    auto bump_edge = [&](size_t a, size_t b, const SvoRecord& r) {
        if (a > b) std::swap(a, b);
        auto key = std::make_tuple(a, b, EdgeKind::SYNTACTIC);
        auto it = edge_ix.find(key);
        if (it == edge_ix.end()) {
            TeaEdge e;
            e.source = a;
            e.target = b;
            e.kind = EdgeKind::SYNTACTIC;
            g.edges.push_back(e);
            it = edge_ix.emplace(key, g.edges.size() - 1).first;
        }
        TeaEdge& e = g.edges[it->second];
        e.weight += 1;
        if (r.passive_approx == 1) e.passive_approx += 1;
        else if (r.is_passive == 1) e.passive_agent += 1;
        else e.active += 1;
    };

    for (const auto& r : records) {
        const std::string ev = event_key_of(r, event_key);
        size_t ev_node = node_of(ev, Role::EVENT);
        if (r.agent != kNone) bump_edge(node_of(r.agent, Role::AGENT), ev_node, r);
        if (r.target != kNone) bump_edge(ev_node, node_of(r.target, Role::TARGET), r);
    }

    if (synonyms) {
        // Same-role pairs only; the graph stays almost-tripartite.
        for (size_t i = 0; i < g.nodes.size(); ++i) {
            for (size_t j = i + 1; j < g.nodes.size(); ++j) {
                if (g.nodes[i].role != g.nodes[j].role) continue;
                if (!are_synonymous(*synonyms, g.nodes[i].label, g.nodes[j].label)) continue;
                TeaEdge e;
                e.source = i;
                e.target = j;
                e.kind = EdgeKind::SYNONYM;
                e.weight = 1;
                g.edges.push_back(e);
            }
        }
    }
    return g;
}

std::optional<GraphFormat> graph_format_from(std::string_view name) {
    std::string n = to_lower(name);
    if (n == "graphml") return GraphFormat::GRAPHML;
    if (n == "json") return GraphFormat::JSON;
    if (n == "edgelist") return GraphFormat::EDGELIST;
    return std::nullopt;
}

std::string export_graph(const TeaGraph& graph, GraphFormat format) {
    if (format == GraphFormat::GRAPHML) {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
        out << "  <key id=\"d0\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
        out << "  <key id=\"d1\" for=\"node\" attr.name=\"role\" attr.type=\"string\"/>\n";
        out << "  <key id=\"d2\" for=\"node\" attr.name=\"polarity\" attr.type=\"string\"/>\n";
        out << "  <key id=\"d3\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n";
        out << "  <key id=\"d4\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n";
        out << "  <key id=\"d5\" for=\"edge\" attr.name=\"active\" attr.type=\"long\"/>\n";
        out << "  <key id=\"d6\" for=\"edge\" attr.name=\"passive_agent\" attr.type=\"long\"/>\n";
        out << "  <key id=\"d7\" for=\"edge\" attr.name=\"passive_approx\" attr.type=\"long\"/>\n";
        out << "  <graph id=\"tea\" edgedefault=\"undirected\">\n";
        for (size_t i = 0; i < graph.nodes.size(); ++i) {
            const auto& n = graph.nodes[i];
            out << "    <node id=\"n" << i << "\"><data key=\"d0\">" << xml_escape(n.label)
                << "</data><data key=\"d1\">" << to_string(n.role) << "</data><data key=\"d2\">"
                << to_string(n.polarity) << "</data></node>\n";
        }
        for (const auto& e : graph.edges) {
            out << "    <edge source=\"n" << e.source << "\" target=\"n" << e.target
                << "\"><data key=\"d3\">"
                << (e.kind == EdgeKind::SYNTACTIC ? "SYNTACTIC" : "SYNONYM")
                << "</data><data key=\"d4\">" << e.weight << "</data><data key=\"d5\">" << e.active
                << "</data><data key=\"d6\">" << e.passive_agent << "</data><data key=\"d7\">"
                << e.passive_approx << "</data></edge>\n";
        }
        out << "  </graph>\n</graphml>\n";
        return out.str();
    }
    if (format == GraphFormat::JSON) {
        json doc;
        doc["nodes"] = json::array();
        for (const auto& n : graph.nodes) {
            doc["nodes"].push_back({{"label", n.label},
                                    {"role", to_string(n.role)},
                                    {"polarity", to_string(n.polarity)}});
        }
        doc["edges"] = json::array();
        for (const auto& e : graph.edges) {
            doc["edges"].push_back({{"source", e.source},
                                    {"target", e.target},
                                    {"kind", e.kind == EdgeKind::SYNTACTIC ? "SYNTACTIC" : "SYNONYM"},
                                    {"weight", e.weight},
                                    {"active", e.active},
                                    {"passive_agent", e.passive_agent},
                                    {"passive_approx", e.passive_approx}});
        }
        doc["provenance"] = graph.provenance;
        return doc.dump(2) + "\n";
    }
    // Edgelist TSV.
    std::ostringstream out;
    out << "source_label\tsource_role\ttarget_label\ttarget_role\tkind\tweight\n";
    for (const auto& e : graph.edges) {
        const auto& s = graph.nodes[e.source];
        const auto& t = graph.nodes[e.target];
        out << s.label << '\t' << to_string(s.role) << '\t' << t.label << '\t' << to_string(t.role)
            << '\t' << (e.kind == EdgeKind::SYNTACTIC ? "SYNTACTIC" : "SYNONYM") << '\t' << e.weight
            << '\n';
    }
    return out.str();
}

TeaGraph import_graph_json(const std::string& text) {
    json doc = json::parse(text);
    TeaGraph g;
    for (const auto& n : doc.at("nodes")) {
        TeaNode node;
        node.label = n.at("label").get<std::string>();
        auto role = role_from(n.at("role").get<std::string>());
        if (!role) throw LoadError("bad role in graph JSON");
        node.role = *role;
        node.polarity = polarity_from(n.at("polarity").get<std::string>());
        g.nodes.push_back(std::move(node));
    }
    for (const auto& e : doc.at("edges")) {
        TeaEdge edge;
        edge.source = e.at("source").get<size_t>();
        edge.target = e.at("target").get<size_t>();
        edge.kind = e.at("kind").get<std::string>() == "SYNONYM" ? EdgeKind::SYNONYM
                                                                 : EdgeKind::SYNTACTIC;
        edge.weight = e.at("weight").get<std::int64_t>();
        edge.active = e.at("active").get<std::int64_t>();
        edge.passive_agent = e.at("passive_agent").get<std::int64_t>();
        edge.passive_approx = e.at("passive_approx").get<std::int64_t>();
        if (edge.source >= g.nodes.size() || edge.target >= g.nodes.size())
            throw LoadError("edge endpoint out of range in graph JSON");
        g.edges.push_back(edge);
    }
    if (doc.contains("provenance"))
        g.provenance = doc["provenance"].get<std::vector<std::string>>();
    return g;
}

TeaGraph import_graph_graphml(const std::string& text) {
    // Targeted reader for the element-per-line layout written above.
    TeaGraph g;
    std::istringstream in(text);
    std::string line;
    auto data_value = [&](const std::string& s, const std::string& key) -> std::optional<std::string> {
        const std::string open = "<data key=\"" + key + "\">";
        size_t p = s.find(open);
        if (p == std::string::npos) return std::nullopt;
        size_t start = p + open.size();
        size_t end = s.find("</data>", start);
        if (end == std::string::npos) return std::nullopt;
        return xml_unescape(s.substr(start, end - start));
    };
    auto attr_value = [&](const std::string& s, const std::string& name) -> std::optional<std::string> {
        const std::string open = name + "=\"";
        size_t p = s.find(open);
        if (p == std::string::npos) return std::nullopt;
        size_t start = p + open.size();
        size_t end = s.find('"', start);
        if (end == std::string::npos) return std::nullopt;
        return xml_unescape(s.substr(start, end - start));
    };
    while (std::getline(in, line)) {
        if (line.find("<node ") != std::string::npos) {
            TeaNode n;
            auto label = data_value(line, "d0");
            auto role = data_value(line, "d1");
            auto polarity = data_value(line, "d2");
            if (!label || !role || !polarity) throw LoadError("malformed GraphML node line");
            n.label = *label;
            auto r = role_from(*role);
            if (!r) throw LoadError("bad role in GraphML");
            n.role = *r;
            n.polarity = polarity_from(*polarity);
            g.nodes.push_back(std::move(n));
        } else if (line.find("<edge ") != std::string::npos) {
            TeaEdge e;
            auto src = attr_value(line, "source");
            auto dst = attr_value(line, "target");
            auto kind = data_value(line, "d3");
            auto weight = data_value(line, "d4");
            auto active = data_value(line, "d5");
            auto pagent = data_value(line, "d6");
            auto papprox = data_value(line, "d7");
            if (!src || !dst || !kind || !weight || !active || !pagent || !papprox)
                throw LoadError("malformed GraphML edge line");
            e.source = std::stoull(src->substr(1));
            e.target = std::stoull(dst->substr(1));
            e.kind = *kind == "SYNONYM" ? EdgeKind::SYNONYM : EdgeKind::SYNTACTIC;
            e.weight = std::stoll(*weight);
            e.active = std::stoll(*active);
            e.passive_agent = std::stoll(*pagent);
            e.passive_approx = std::stoll(*papprox);
            if (e.source >= g.nodes.size() || e.target >= g.nodes.size())
                throw LoadError("edge endpoint out of range in GraphML");
            g.edges.push_back(e);
        }
    }
    return g;
}

std::string export_hypergraph(const std::vector<SvoRecord>& records, EventKey event_key) {
    std::ostringstream out;
    for (const auto& r : records) {
        out << r.triple_id;
        if (r.agent != kNone) out << '\t' << "AGENT:" << r.agent;
        out << '\t' << "EVENT:" << event_key_of(r, event_key);
        if (r.target != kNone) out << '\t' << "TARGET:" << r.target;
        out << '\n';
    }
    return out.str();
}

} // namespace tea
