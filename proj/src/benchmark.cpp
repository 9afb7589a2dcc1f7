#include "tea/benchmark.hpp"

#include "tea/errors.hpp"
#include "tea/strings.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace tea {

namespace {

std::string harmonize(const std::string& value) {
    std::string v = to_lower(trim(value));
    if (v.empty()) return kNone;
    return v;
}

std::string fmt_accuracy(double a) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", a);
    return buf;
}

} // namespace

std::vector<GoldTriple> load_gold_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open gold file: " + path);
    std::vector<GoldTriple> out;
    std::set<std::string> seen;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty() || line[0] == '#') continue;
        auto cols = split(line, '\t');
        if (cols.size() != 6)
            throw LoadError(path + ":" + std::to_string(line_no) + ": expected 6 columns");
        GoldTriple g;
        g.sent_id = trim(cols[0]);
        if (!seen.insert(g.sent_id).second)
            throw LoadError(path + ":" + std::to_string(line_no) + ": duplicate sent_id '" +
                            g.sent_id + "'");
        g.agent = harmonize(cols[1]);
        g.event = harmonize(cols[2]);
        g.target = harmonize(cols[3]);
        g.is_passive = cols[4] == "1" ? 1 : 0;
        g.passive_approx = cols[5] == "1" ? 1 : 0;
        if (g.passive_approx == 1 && g.is_passive != 1)
            throw LoadError(path + ":" + std::to_string(line_no) +
                            ": passive_approx set without is_passive");
        out.push_back(std::move(g));
    }
    return out;
}

EvalReport evaluate_roles(const std::vector<SvoRecord>& predicted,
                          const std::vector<GoldTriple>& gold) {
    // First record per sentence defines the predicted triple.
    std::map<std::string, const SvoRecord*> first;
    for (const auto& r : predicted) {
        auto it = first.find(r.sent_id);
        if (it == first.end() || r.triple_id < it->second->triple_id) first[r.sent_id] = &r;
    }

    EvalReport report;
    RoleScore agent{"Agent", 0, 0, 0, 0.0};
    RoleScore event{"Event", 0, 0, 0, 0.0};
    RoleScore target{"Target", 0, 0, 0, 0.0};

    auto score = [](RoleScore& s, const std::string& pred, const std::string& exp) {
        ++s.total;
        const std::string p = harmonize(pred);
        const std::string e = harmonize(exp);
        if (p == e) {
            ++s.correct;
            if (e != kNone) ++s.true_positives;
        }
    };

    for (const auto& g : gold) {
        auto it = first.find(g.sent_id);
        const SvoRecord* r = it == first.end() ? nullptr : it->second;
        score(agent, r ? r->agent : kNone, g.agent);
        score(event, r ? r->event.phrase : kNone, g.event);
        score(target, r ? r->target : kNone, g.target);
    }

    for (RoleScore* s : {&agent, &event, &target}) {
        s->accuracy = s->total > 0 ? static_cast<double>(s->correct) / static_cast<double>(s->total)
                                   : 0.0;
        report.roles.push_back(*s);
    }
    return report;
}

EvalReport evaluate_passive(const std::map<std::string, int>& predicted_flags,
                            const std::map<std::string, int>& gold_flags) {
    if (predicted_flags.size() != gold_flags.size())
        throw UsageError("passive evaluation requires identical sentence sets");
    for (const auto& [id, flag] : gold_flags)
        if (!predicted_flags.count(id))
            throw UsageError("passive evaluation missing prediction for sentence '" + id + "'");

    EvalReport report;
    ClassScore passive{"Passive", 0, 0, 0.0};
    ClassScore active{"Active", 0, 0, 0.0};
    for (const auto& [id, g] : gold_flags) {
        const int p = predicted_flags.at(id);
        ClassScore& cls = g == 1 ? passive : active;
        ++cls.total;
        if (p == g) ++cls.correct;
    }
    std::int64_t correct = 0, total = 0;
    double macro = 0.0;
    int n_classes = 0;
    for (ClassScore* c : {&passive, &active}) {
        c->accuracy = c->total > 0 ? static_cast<double>(c->correct) / static_cast<double>(c->total)
                                   : 0.0;
        if (c->total > 0) {
            macro += c->accuracy;
            ++n_classes;
        }
        correct += c->correct;
        total += c->total;
        report.classes.push_back(*c);
    }
    report.macro_accuracy = n_classes > 0 ? macro / n_classes : 0.0;
    report.overall_accuracy =
        total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
    return report;
}

std::string format_role_report(const EvalReport& report, const std::string& extractor_name) {
    std::ostringstream out;
    out << "Extractor   Role     Correct  Total  Accuracy\n";
    for (const auto& r : report.roles) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-11s %-8s %7lld  %5lld  %s\n", extractor_name.c_str(),
                      r.name.c_str(), static_cast<long long>(r.correct),
                      static_cast<long long>(r.total), fmt_accuracy(r.accuracy).c_str());
        out << line;
    }
    return out.str();
}

std::string format_passive_report(const EvalReport& report) {
    std::ostringstream out;
    out << "Class     Correct  Total  Accuracy\n";
    std::int64_t correct = 0, total = 0;
    for (const auto& c : report.classes) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-9s %7lld  %5lld  %s\n", c.name.c_str(),
                      static_cast<long long>(c.correct), static_cast<long long>(c.total),
                      fmt_accuracy(c.accuracy).c_str());
        out << line;
        correct += c.correct;
        total += c.total;
    }
    char line[128];
    std::snprintf(line, sizeof(line), "%-9s %7lld  %5lld  %s  (macro %s)\n", "Overall",
                  static_cast<long long>(correct), static_cast<long long>(total),
                  fmt_accuracy(report.overall_accuracy).c_str(),
                  fmt_accuracy(report.macro_accuracy).c_str());
    out << line;
    return out.str();
}

} // namespace tea
