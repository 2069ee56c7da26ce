#pragma once
// Verification reports: ordered entries with expected/computed text and a verdict.

#include <string>
#include <vector>

namespace twistcalc {

enum class Status {
    Pass,
    Fail,
    Discrepancy,  // flagged printed value that the engine does not reproduce
    Info,         // computed only, nothing asserted
};

const char* status_name(Status s);

struct ReportEntry {
    std::string id;
    std::string anchor;
    std::string expected;
    std::string computed;
    Status status = Status::Info;
    std::string note;
    std::string latex;  // optional LaTeX rendering of the relation
};

struct Summary {
    int pass = 0, fail = 0, discrepancy = 0, info = 0;
    int total() const { return pass + fail + discrepancy + info; }
};

class Report {
public:
    explicit Report(std::string title = {}) : title_(std::move(title)) {}

    const std::string& title() const { return title_; }
    const std::vector<ReportEntry>& entries() const { return entries_; }

    void add(ReportEntry e) { entries_.push_back(std::move(e)); }
    // pass/fail from a boolean
    void check(const std::string& id, const std::string& anchor, bool ok, const std::string& expected = {},
               const std::string& computed = {});
    void append(const Report& other);

    Summary summary() const;
    bool ok() const { return summary().fail == 0; }
    int exit_code() const { return ok() ? 0 : 1; }

private:
    std::string title_;
    std::vector<ReportEntry> entries_;
};

enum class Format { Text, Json, Latex };

Format parse_format(const std::string& s);  // throws std::invalid_argument
std::string render(const Report& r, Format f, bool failures_only = false);

}  // namespace twistcalc
