#include "render.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace ucmcli {

using nlohmann::json;

std::optional<Format> format_from_string(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    return std::nullopt;
}

std::string fmt_num(double value, int round_digits) {
    char buf[64];
    if (round_digits >= 0)
        std::snprintf(buf, sizeof buf, "%.*f", round_digits, value);
    else
        std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

namespace {

// Column-aligned table with a two-space indent.
std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (widths.size() < row.size()) widths.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) {
        out += " ";
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += " " + row[i];
            if (i + 1 < row.size()) out += std::string(widths[i] - row[i].size() + 1, ' ');
        }
        out += "\n";
    }
    return out;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const char* group_heading(const std::string& group) {
    if (group == "responsibility") return "Responsibilities and points";
    if (group == "plugin") return "Plug-ins";
    if (group == "stub") return "Stubs";
    return "Components";
}

// Fixed rendering order for the object groups.
const std::vector<std::string> kGroupOrder{"responsibility", "plugin", "stub", "component"};

}  // namespace

std::string render_report(const ucm::ImportanceReport& report,
                          std::span<const ucm::ScenarioPath> paths, const AnalyzeOptions& opts,
                          Format format) {
    int digits = opts.round_digits;
    auto scenario_rows = [&](const std::vector<std::string>& names) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& name : names)
            rows.push_back({name, fmt_num(report.scenario_importance.at(name), digits)});
        return rows;
    };

    std::vector<std::string> overall, alternative;
    if (opts.overall_threshold) overall = ucm::filter_overall(report, *opts.overall_threshold);
    if (opts.alt_threshold) alternative = ucm::filter_alternative(paths, *opts.alt_threshold);

    if (format == Format::Text) {
        std::string out;
        out += "Scenario importance\n";
        out += render_table(scenario_rows(report.scenario_order));
        if (opts.overall_threshold) {
            out += "\nScenarios with overall importance >= " +
                   fmt_num(*opts.overall_threshold) + "\n";
            out += render_table(scenario_rows(overall));
        }
        if (opts.alt_threshold) {
            out += "\nScenarios with every transition probability >= " +
                   fmt_num(*opts.alt_threshold) + "\n";
            out += render_table(scenario_rows(alternative));
        }
        out += "\nObject importance\n";
        for (const auto& group : kGroupOrder) {
            auto ranked = report.rankings.find(group);
            if (ranked == report.rankings.end() || ranked->second.empty()) continue;
            out += std::string(" ") + group_heading(group) + "\n";
            std::vector<std::vector<std::string>> rows;
            for (const auto& id : ranked->second) {
                std::string percent;
                auto pg = report.percents.find(group);
                if (pg != report.percents.end() && pg->second.count(id))
                    percent = fmt_num(pg->second.at(id), digits) + "%";
                rows.push_back({" " + id, fmt_num(report.object_importance.at(id), digits),
                                percent});
            }
            out += render_table(rows);
        }
        return out;
    }

    if (format == Format::Json) {
        json doc;
        doc["scenarios"] = json::array();
        for (const auto& name : report.scenario_order)
            doc["scenarios"].push_back(
                {{"name", name}, {"importance", report.scenario_importance.at(name)}});
        if (opts.overall_threshold) {
            json section;
            section["threshold"] = *opts.overall_threshold;
            section["scenarios"] = json::array();
            for (const auto& name : overall)
                section["scenarios"].push_back(
                    {{"name", name}, {"importance", report.scenario_importance.at(name)}});
            doc["overall_threshold"] = std::move(section);
        }
        if (opts.alt_threshold) {
            json section;
            section["threshold"] = *opts.alt_threshold;
            section["scenarios"] = json::array();
            for (const auto& name : alternative)
                section["scenarios"].push_back(
                    {{"name", name}, {"importance", report.scenario_importance.at(name)}});
            doc["alternative_threshold"] = std::move(section);
        }
        doc["objects"] = json::object();
        for (const auto& group : kGroupOrder) {
            auto ranked = report.rankings.find(group);
            if (ranked == report.rankings.end()) continue;
            json list = json::array();
            for (const auto& id : ranked->second) {
                json entry{{"id", id},
                           {"type", ucm::to_string(report.object_types.at(id))},
                           {"importance", report.object_importance.at(id)}};
                auto pg = report.percents.find(group);
                if (pg != report.percents.end() && pg->second.count(id))
                    entry["percent"] = pg->second.at(id);
                list.push_back(std::move(entry));
            }
            doc["objects"][group] = std::move(list);
        }
        return doc.dump(2) + "\n";
    }

    // CSV
    std::string out = "section,name,importance,percent\n";
    auto row = [&](const std::string& section, const std::string& name, double value,
                   const std::string& percent) {
        out += csv_escape(section) + "," + csv_escape(name) + "," + fmt_num(value, digits) + "," +
               percent + "\n";
    };
    for (const auto& name : report.scenario_order)
        row("scenario", name, report.scenario_importance.at(name), "");
    for (const auto& name : overall)
        row("overall", name, report.scenario_importance.at(name), "");
    for (const auto& name : alternative)
        row("alternative", name, report.scenario_importance.at(name), "");
    for (const auto& group : kGroupOrder) {
        auto ranked = report.rankings.find(group);
        if (ranked == report.rankings.end()) continue;
        for (const auto& id : ranked->second) {
            std::string percent;
            auto pg = report.percents.find(group);
            if (pg != report.percents.end() && pg->second.count(id))
                percent = fmt_num(pg->second.at(id), digits);
            row("object." + group, id, report.object_importance.at(id), percent);
        }
    }
    return out;
}

std::string render_estimate(const ucm::Estimate& est, int loop_bound,
                            const std::map<std::string, std::string>& signature_names,
                            int round_digits, Format format) {
    auto label = [&](const std::string& signature) {
        auto it = signature_names.find(signature);
        return it == signature_names.end() ? signature : it->second;
    };

    if (format == Format::Text) {
        std::string out;
        out += "generator: " + est.generator + "\n";
        out += "seed: " + std::to_string(est.seed) + "\n";
        out += "walks: " + std::to_string(est.walks) + "\n";
        out += "loop bound: " + std::to_string(loop_bound) + "\n";
        out += "\nSignature frequencies\n";
        std::vector<std::vector<std::string>> rows;
        for (const auto& [signature, frequency] : est.signature_frequency)
            rows.push_back({label(signature), fmt_num(frequency, round_digits)});
        out += render_table(rows);
        out += "\nMean visits\n";
        rows.clear();
        for (const auto& [object, mean] : est.mean_visits)
            rows.push_back({object, fmt_num(mean, round_digits)});
        out += render_table(rows);
        return out;
    }

    if (format == Format::Json) {
        json doc;
        doc["generator"] = est.generator;
        doc["seed"] = est.seed;
        doc["walks"] = est.walks;
        doc["loop_bound"] = loop_bound;
        doc["frequencies"] = json::array();
        for (const auto& [signature, frequency] : est.signature_frequency) {
            json entry{{"signature", signature}, {"frequency", frequency}};
            auto it = signature_names.find(signature);
            if (it != signature_names.end()) entry["scenario"] = it->second;
            doc["frequencies"].push_back(std::move(entry));
        }
        doc["mean_visits"] = json::array();
        for (const auto& [object, mean] : est.mean_visits)
            doc["mean_visits"].push_back({{"object", object}, {"mean", mean}});
        return doc.dump(2) + "\n";
    }

    std::string out = "section,name,value\n";
    out += "meta,generator," + csv_escape(est.generator) + "\n";
    out += "meta,seed," + std::to_string(est.seed) + "\n";
    out += "meta,walks," + std::to_string(est.walks) + "\n";
    out += "meta,loop_bound," + std::to_string(loop_bound) + "\n";
    for (const auto& [signature, frequency] : est.signature_frequency)
        out += "frequency," + csv_escape(label(signature)) + "," +
               fmt_num(frequency, round_digits) + "\n";
    for (const auto& [object, mean] : est.mean_visits)
        out += "visits," + csv_escape(object) + "," + fmt_num(mean, round_digits) + "\n";
    return out;
}

std::string render_validation(const ucm::ValidationReport& report) {
    if (report.ok()) return "OK: 0 issues\n";
    std::string out;
    for (const auto& issue : report.issues) out += issue.where + ": " + issue.message + "\n";
    return out;
}

}  // namespace ucmcli
