#include "slater/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace slater::report {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json_value(const ReportRecord& r) {
    ordered_json j;
    j["command"] = r.command;
    ordered_json inputs = ordered_json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    j["inputs"] = inputs;
    ordered_json terms = ordered_json::array();
    for (const TermEntry& t : r.per_term)
        terms.push_back(ordered_json{{"label", t.label}, {"value", t.value}, {"err", t.err}});
    j["per_term"] = terms;
    j["total"] = r.total;
    if (r.oracle) j["oracle"] = *r.oracle;
    if (r.passed) j["passed"] = *r.passed;
    j["n_evals"] = r.n_evals;
    if (r.wall_time_ms) j["wall_time_ms"] = *r.wall_time_ms;
    return j;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void csv_record(std::ostringstream& os, const ReportRecord& r) {
    double err_sum = 0.0;
    for (const TermEntry& t : r.per_term) {
        os << t.label << "," << fmt(t.value) << "," << fmt(t.err) << "\n";
        err_sum += t.err;
    }
    os << "TOTAL," << fmt(r.total) << "," << fmt(err_sum) << "\n";
}

void table_record(std::ostringstream& os, const ReportRecord& r) {
    os << r.command;
    for (const auto& [k, v] : r.inputs) os << "  " << k << "=" << v;
    os << "\n";
    for (const TermEntry& t : r.per_term) {
        char line[128];
        std::snprintf(line, sizeof line, "  %-18s %18.10g  +/- %-12.4g\n", t.label.c_str(),
                      t.value, t.err);
        os << line;
    }
    char total[160];
    std::snprintf(total, sizeof total, "  %-18s %18.10g\n", "total", r.total);
    os << total;
    if (r.oracle) {
        std::snprintf(total, sizeof total, "  %-18s %18.10g\n", "oracle", *r.oracle);
        os << total;
    }
    if (r.passed) os << "  result             " << (*r.passed ? "pass" : "FAIL") << "\n";
    os << "  n_evals            " << r.n_evals << "\n";
    if (r.wall_time_ms) os << "  wall_time_ms       " << *r.wall_time_ms << "\n";
}

}  // namespace

std::string to_json(const ReportRecord& record) { return to_json_value(record).dump(2) + "\n"; }

std::string to_json(const std::vector<ReportRecord>& records) {
    ordered_json arr = ordered_json::array();
    for (const ReportRecord& r : records) arr.push_back(to_json_value(r));
    return arr.dump(2) + "\n";
}

std::string to_csv(const ReportRecord& record) {
    std::ostringstream os;
    os << "label,value,err\n";
    csv_record(os, record);
    return os.str();
}

std::string to_csv(const std::vector<ReportRecord>& records) {
    std::ostringstream os;
    os << "label,value,err\n";
    for (const ReportRecord& r : records) csv_record(os, r);
    return os.str();
}

std::string to_table(const ReportRecord& record) {
    std::ostringstream os;
    table_record(os, record);
    return os.str();
}

std::string to_table(const std::vector<ReportRecord>& records) {
    std::ostringstream os;
    for (const ReportRecord& r : records) table_record(os, r);
    return os.str();
}

}  // namespace slater::report
