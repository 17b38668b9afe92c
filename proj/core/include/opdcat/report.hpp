#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace opdcat {

/* Outcome of one checker run.  Every checker fills in the bounds it actually
 * used, whatever it counted along the way, and a witness for the first
 * failure it saw.  Checkers never stop early on failure unless noted; they
 * keep their counters meaningful either way. */
struct CheckReport {
    std::string name;
    bool passed = true;
    std::string bounds;
    std::vector<std::pair<std::string, int64_t>> counts;
    std::vector<std::string> notes;
    std::string witness;

    void count(const std::string& what, int64_t n) { counts.emplace_back(what, n); }
    void bump(const std::string& what, int64_t dn = 1);
    void note(const std::string& text) { notes.push_back(text); }

    // records the first witness and flips passed; later calls only count
    void fail(const std::string& why);

    int64_t get_count(const std::string& what) const;

    std::string text() const;
    std::string json_string() const;  // deterministic: no timing, fixed key order
};

struct ReportSet {
    std::vector<CheckReport> reports;

    CheckReport& add(CheckReport r) {
        reports.push_back(std::move(r));
        return reports.back();
    }
    bool all_passed() const;
    std::string text() const;
    std::string json_string() const;
};

}  // namespace opdcat
