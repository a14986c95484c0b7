#include "frogs/experiments.hpp"
#include "frogs/pointset_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace frogs {

namespace {

constexpr const char* kSchema = "frogmatch.report/1";

using Json = nlohmann::ordered_json;

Json named_values(const NamedValues& values)
{
    Json out = Json::object();
    for (const auto& [k, v] : values)
        out[k] = v;
    return out;
}

std::string csv_field(const std::string& text)
{
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace

std::string report_to_json(const ExperimentReport& report, const EmitOptions& options)
{
    Json root;
    root["schema"] = kSchema;
    Json spec;
    spec["experiment"] = std::string(to_string(report.spec.id));
    Json grid = Json::object();
    for (const auto& [k, v] : report.spec.grid)
        grid[k] = v;
    spec["grid"] = grid;
    spec["trials"] = report.spec.trials;
    spec["seed"] = report.spec.seed;
    spec["region"] = report.spec.region.to_string();
    root["spec"] = spec;

    Json cells = Json::array();
    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        const auto& cell = report.cells[c];
        Json aggregates = Json::object();
        for (const auto& [k, s] : cell.aggregates)
            aggregates[k] = {{"mean", s.mean}, {"std_error", s.std_error}, {"count", s.count}};
        cells.push_back({{"cell", c}, {"params", named_values(cell.params)}, {"aggregates", aggregates}});
    }
    root["cells"] = cells;

    Json checks = Json::array();
    for (const auto& check : report.checks)
        checks.push_back({{"name", check.name}, {"status", std::string(to_string(check.status))}, {"detail", check.detail}});
    root["checks"] = checks;
    root["passed"] = report.passed();

    Json records = Json::array();
    for (const auto& r : report.records)
        records.push_back({{"cell", r.cell}, {"trial", r.trial}, {"seed", r.seed}, {"values", named_values(r.values)}});
    root["records"] = records;

    if (options.include_timing)
        root["wall_seconds"] = report.wall_seconds;
    return root.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& report, const EmitOptions& options)
{
    std::ostringstream os;
    os << "# schema " << kSchema << '\n';
    os << "# experiment " << to_string(report.spec.id) << " trials " << report.spec.trials << " seed "
       << report.spec.seed << " region " << report.spec.region.to_string() << '\n';
    os << "# kind is one of param, aggregate, record, check; unused columns are empty\n";
    if (options.include_timing)
        os << "# wall_seconds " << format_decimal(report.wall_seconds) << '\n';
    os << "kind,cell,trial,seed,name,value,std_error,count,status,detail\n";

    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        const auto& cell = report.cells[c];
        for (const auto& [k, v] : cell.params)
            os << "param," << c << ",,," << csv_field(k) << ',' << format_decimal(v) << ",,,,\n";
        for (const auto& [k, s] : cell.aggregates)
            os << "aggregate," << c << ",,," << csv_field(k) << ',' << format_decimal(s.mean) << ','
               << format_decimal(s.std_error) << ',' << s.count << ",,\n";
    }
    for (const auto& r : report.records)
        for (const auto& [k, v] : r.values)
            os << "record," << r.cell << ',' << r.trial << ',' << r.seed << ',' << csv_field(k) << ','
               << format_decimal(v) << ",,,,\n";
    for (const auto& check : report.checks)
        os << "check,,,," << csv_field(check.name) << ",,,," << to_string(check.status) << ','
           << csv_field(check.detail) << '\n';
    return os.str();
}

void emit(const ExperimentReport& report, ReportFormat format, const std::string& path, const EmitOptions& options)
{
    const std::string text = format == ReportFormat::json ? report_to_json(report, options) : report_to_csv(report, options);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace frogs
