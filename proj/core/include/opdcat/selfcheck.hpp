#pragma once

#include "opdcat/bounds.hpp"
#include "opdcat/report.hpp"

#include <string>
#include <vector>

namespace opdcat {

// one themed block of the battery; a section passes when every report does
struct SelfcheckSection {
    std::string title;
    std::vector<CheckReport> reports;

    bool passed() const;
};

struct SelfcheckRun {
    Bounds bounds;
    std::vector<SelfcheckSection> sections;

    bool all_passed() const;
    std::string summary() const;  // one PASS/FAIL line per section
    std::string text() const;     // every report in full, grouped by section
    std::string json_string() const;
};

/* The whole battery at the given bounds: the commutative envelope against
 * finite sets, the operad corpus under and back out of its envelopes, the
 * hereditary condition with its counterexamples, the counit against
 * hereditary plus generation on the corpus and a hundred seeded random
 * envelopes, inert active factorization in the three index shapes, the
 * elements construction, the localization identities, the Segal checks on
 * nerves upstairs and downstairs, nerve reconstruction, and left Kan
 * extension along left fibrations.  Sections that need more room than the
 * bounds give are reported as skipped, with the reason in a note. */
SelfcheckRun run_selfcheck(const Bounds& b);

}  // namespace opdcat
