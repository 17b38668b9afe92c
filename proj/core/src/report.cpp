#include "opdcat/report.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace opdcat {

void CheckReport::bump(const std::string& what, int64_t dn) {
    for (auto& [k, v] : counts) {
        if (k == what) {
            v += dn;
            return;
        }
    }
    counts.emplace_back(what, dn);
}

void CheckReport::fail(const std::string& why) {
    if (passed) {
        passed = false;
        witness = why;
    }
    bump("failures", 1);
}

int64_t CheckReport::get_count(const std::string& what) const {
    for (const auto& [k, v] : counts)
        if (k == what)
            return v;
    return 0;
}

std::string CheckReport::text() const {
    std::ostringstream os;
    os << (passed ? "PASS" : "FAIL") << "  " << name;
    if (!bounds.empty())
        os << "  [" << bounds << "]";
    os << "\n";
    for (const auto& [k, v] : counts)
        os << "      " << k << ": " << v << "\n";
    for (const auto& n : notes)
        os << "      note: " << n << "\n";
    if (!witness.empty())
        os << "      witness: " << witness << "\n";
    return os.str();
}

static nlohmann::ordered_json report_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["bounds"] = r.bounds;
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.counts)
        counts[k] = v;
    j["counts"] = counts;
    j["notes"] = r.notes;
    if (!r.witness.empty())
        j["witness"] = r.witness;
    return j;
}

std::string CheckReport::json_string() const { return report_json(*this).dump(2); }

bool ReportSet::all_passed() const {
    for (const auto& r : reports)
        if (!r.passed)
            return false;
    return true;
}

std::string ReportSet::text() const {
    std::ostringstream os;
    for (const auto& r : reports)
        os << r.text();
    os << (all_passed() ? "ALL PASS" : "FAILURES PRESENT") << " (" << reports.size()
       << " checks)\n";
    return os.str();
}

std::string ReportSet::json_string() const {
    nlohmann::ordered_json j;
    j["all_passed"] = all_passed();
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports)
        arr.push_back(report_json(r));
    j["checks"] = arr;
    return j.dump(2);
}

}  // namespace opdcat
