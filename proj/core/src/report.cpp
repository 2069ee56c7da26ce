#include "twistcalc/report.hpp"

#include <sstream>
#include <stdexcept>

namespace twistcalc {

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "FAIL";
        case Status::Discrepancy: return "discrepancy";
        case Status::Info: return "info";
    }
    return "?";
}

void Report::check(const std::string& id, const std::string& anchor, bool ok, const std::string& expected,
                   const std::string& computed) {
    add({id, anchor, expected, computed, ok ? Status::Pass : Status::Fail, {}, {}});
}

void Report::append(const Report& other) {
    for (auto& e : other.entries_) entries_.push_back(e);
}

Summary Report::summary() const {
    Summary s;
    for (auto& e : entries_) {
        switch (e.status) {
            case Status::Pass: ++s.pass; break;
            case Status::Fail: ++s.fail; break;
            case Status::Discrepancy: ++s.discrepancy; break;
            case Status::Info: ++s.info; break;
        }
    }
    return s;
}

Format parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "latex") return Format::Latex;
    throw std::invalid_argument("unknown format '" + s + "'");
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    return out;
}

std::string latex_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '_' || ch == '&' || ch == '%' || ch == '#') out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace

std::string render(const Report& r, Format f, bool failures_only) {
    std::ostringstream os;
    Summary s = r.summary();
    auto shown = [&](const ReportEntry& e) { return !failures_only || e.status == Status::Fail; };
    switch (f) {
        case Format::Text: {
            if (!r.title().empty()) os << "== " << r.title() << "\n";
            std::string anchor;
            for (auto& e : r.entries()) {
                if (!shown(e)) continue;
                if (e.anchor != anchor) {
                    anchor = e.anchor;
                    os << "-- " << anchor << "\n";
                }
                os << "[" << status_name(e.status) << "] " << e.id << "\n";
                if (!e.expected.empty()) os << "    expected: " << e.expected << "\n";
                if (!e.computed.empty() && (e.status != Status::Pass || e.expected.empty()))
                    os << "    computed: " << e.computed << "\n";
                if (!e.note.empty()) os << "    note: " << e.note << "\n";
            }
            os << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.discrepancy << " discrepancy, "
               << s.info << " info\n";
            break;
        }
        case Format::Json: {
            // hand-rolled to keep key order fixed
            os << "{\"schema\":\"twistcalc-report/1\",\"title\":\"" << json_escape(r.title()) << "\",\"entries\":[";
            bool first = true;
            for (auto& e : r.entries()) {
                if (!shown(e)) continue;
                os << (first ? "" : ",") << "\n {\"id\":\"" << json_escape(e.id) << "\",\"anchor\":\""
                   << json_escape(e.anchor) << "\",\"expected\":\"" << json_escape(e.expected) << "\",\"computed\":\""
                   << json_escape(e.computed) << "\",\"status\":\"" << status_name(e.status) << "\"";
                if (!e.note.empty()) os << ",\"note\":\"" << json_escape(e.note) << "\"";
                os << "}";
                first = false;
            }
            os << "],\n \"summary\":{\"pass\":" << s.pass << ",\"fail\":" << s.fail
               << ",\"discrepancy\":" << s.discrepancy << ",\"info\":" << s.info << "}}\n";
            break;
        }
        case Format::Latex: {
            os << "% " << r.title() << "\n\\begin{longtable}{lll}\n";
            for (auto& e : r.entries()) {
                if (!shown(e)) continue;
                std::string body = !e.latex.empty() ? e.latex : latex_escape(e.expected.empty() ? e.computed : e.expected);
                os << "\\texttt{" << latex_escape(e.id) << "} & $" << body << "$ & " << status_name(e.status)
                   << "\\\\\n";
            }
            os << "\\end{longtable}\n";
            break;
        }
    }
    return os.str();
}

}  // namespace twistcalc
