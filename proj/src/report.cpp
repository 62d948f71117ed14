#include <fstream>
#include <ostream>

#include "exchlab/distribution.hpp"
#include "exchlab/error.hpp"
#include "exchlab/experiment.hpp"

namespace exchlab {

bool Report::all_pass() const
{
    return failures().empty();
}

std::vector<const ReportCell*> Report::failures() const
{
    std::vector<const ReportCell*> out;
    for (const auto& c : cells)
        if (c.pass && !*c.pass)
            out.push_back(&c);
    return out;
}

ReportFormat parse_format(const std::string& name)
{
    if (name == "csv")
        return ReportFormat::csv;
    if (name == "jsonl")
        return ReportFormat::jsonl;
    throw ConfigError("unknown report format '" + name + "' (expected csv or jsonl)");
}

namespace {

std::string cell_key(const ReportCell& c)
{
    std::string s;
    for (const auto& [k, v] : c.keys) {
        if (!s.empty())
            s += ';';
        s += k + "=" + v;
    }
    return s;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"')
            q += '"';
        q += ch;
    }
    return q + "\"";
}

} // namespace

void emit_report(const Report& report, ReportFormat format, std::ostream& os)
{
    if (format == ReportFormat::csv) {
        if (!report.config.is_null())
            os << "# config: " << report.config.dump() << '\n';
        os << "scenario,cell,metric,estimate,ci_lo,ci_hi,replicas,pass\n";
        for (const auto& c : report.cells) {
            os << csv_field(report.scenario) << ',' << csv_field(cell_key(c)) << ',' << csv_field(c.metric) << ','
               << format_double(c.estimate) << ',' << format_double(c.ci_lo) << ',' << format_double(c.ci_hi) << ','
               << c.replicas << ',' << (c.pass ? (*c.pass ? "true" : "false") : "") << '\n';
        }
    } else {
        if (!report.config.is_null())
            os << Json{{"record", "config"}, {"scenario", report.scenario}, {"config", report.config}}.dump() << '\n';
        for (const auto& c : report.cells) {
            Json keys = Json::object();
            for (const auto& [k, v] : c.keys)
                keys[k] = v;
            Json rec{{"record", "cell"},       {"scenario", report.scenario}, {"keys", keys},
                     {"metric", c.metric},     {"estimate", c.estimate},      {"ci_lo", c.ci_lo},
                     {"ci_hi", c.ci_hi},       {"replicas", c.replicas}};
            rec["pass"] = c.pass ? Json(*c.pass) : Json(nullptr);
            os << rec.dump() << '\n';
        }
    }
    if (!os)
        throw IoError("emit_report: write failed");
}

void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("emit_report: cannot open '" + path.string() + "' for writing");
    emit_report(report, format, out);
    out.flush();
    if (!out)
        throw IoError("emit_report: write to '" + path.string() + "' failed");
}

} // namespace exchlab
