#pragma once

// Append-only JSON-lines catalog of family reports. One record per line:
//   {"version": "...", "timestamp": "...", "field": {...}, "report": {...}}
// The timestamp is optional. Every record carries enough to rebuild the
// instance from scratch, so the catalog is never needed to replay one.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <istream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ppinv/serialize.hpp"

#ifndef PPINV_VERSION
#define PPINV_VERSION "0.0.0"
#endif

namespace ppinv {

inline constexpr const char* kVersion = PPINV_VERSION;

inline std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

inline Json make_record(const FamilyInstance& inst, bool timestamp, const ReportOptions& opt = {}) {
    Json r;
    r["version"] = kVersion;
    if (timestamp) r["timestamp"] = utc_timestamp();
    r["field"] = to_json(inst.field->spec());
    r["report"] = to_json(inst, opt);
    return r;
}

/// Serializes appends from any number of threads onto one file.
class CatalogWriter {
public:
    explicit CatalogWriter(std::string path) : path_(std::move(path)) {
        out_.open(path_, std::ios::app);
        if (!out_) throw PreconditionError("cannot open catalog '" + path_ + "' for appending");
    }

    void append(const Json& record) {
        const std::string line = record.dump();
        std::lock_guard lock(mu_);
        out_ << line << '\n';
        out_.flush();
        if (!out_) throw PreconditionError("write to catalog '" + path_ + "' failed");
        ++written_;
    }

    std::uint64_t written() const noexcept { return written_; }

private:
    std::string path_;
    std::ofstream out_;
    std::mutex mu_;
    std::uint64_t written_ = 0;
};

struct CatalogError {
    std::uint64_t line = 0;
    std::string message;
};

struct CatalogEntry {
    std::uint64_t line = 0;
    Json record;
};

struct CatalogContents {
    std::vector<CatalogEntry> entries;
    std::vector<CatalogError> errors;
};

/// Reads every well-formed record; bad lines are reported and skipped.
inline CatalogContents read_catalog(std::istream& in) {
    CatalogContents c;
    std::string line;
    std::uint64_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j = Json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            c.errors.push_back({no, "malformed JSON"});
            continue;
        }
        if (!j.is_object() || !j.contains("report") || !j.contains("field")) {
            c.errors.push_back({no, "record lacks 'field' or 'report'"});
            continue;
        }
        try {
            (void)summary_from_json(j.at("report"));
        } catch (const std::exception& e) {
            c.errors.push_back({no, e.what()});
            continue;
        }
        c.entries.push_back({no, std::move(j)});
    }
    return c;
}

/// A missing file reads as an empty catalog.
inline CatalogContents read_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    return read_catalog(in);
}

struct CatalogQuery {
    std::optional<FamilyId> family;
    std::optional<FieldSpec> field;
    /// name -> expected JSON value of that parameter
    std::vector<std::pair<std::string, Json>> params;
};

/// Parses "name=value"; the value is read as JSON when it parses, else as a string.
inline std::pair<std::string, Json> parse_param_predicate(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw PreconditionError("parameter predicate must be name=value: '" + text + "'");
    const std::string value = text.substr(eq + 1);
    Json v = Json::parse(value, nullptr, false);
    if (v.is_discarded()) v = value;
    return {text.substr(0, eq), v};
}

inline bool matches(const CatalogQuery& q, const Json& record) {
    const Json& rep = record.at("report");
    if (q.family && parse_family(rep.at("family_id").get<std::string>()) != q.family) return false;
    if (q.field && field_spec_from_json(record.at("field")) != *q.field) return false;
    const Json& params = rep.at("params");
    for (const auto& [name, want] : q.params) {
        if (!params.contains(name)) return false;
        const Json& have = params.at(name);
        // Elements may be queried by integer code as well as by coefficients.
        if (want.is_number_integer() && have.is_array() && q.field) {
            const Field f = make_field(*q.field);
            if (elem_from_json(*f, have).code() != want.get<std::int64_t>()) return false;
            continue;
        }
        if (have != want) return false;
    }
    return true;
}

inline std::vector<CatalogEntry> query_catalog(const CatalogContents& c, const CatalogQuery& q) {
    std::vector<CatalogEntry> out;
    for (const auto& e : c.entries)
        if (matches(q, e.record)) out.push_back(e);
    return out;
}

struct ReplayResult {
    bool identical = false;     ///< same check names, same order, same outcomes, same verdict
    std::vector<std::string> differences;
    std::optional<FamilyInstance> instance;
};

/// Rebuilds the record's instance and compares every check outcome.
inline ReplayResult replay(const Json& record, const ScanPolicy& policy = {}) {
    ReplayResult r;
    const ReportSummary s = summary_from_json(record.at("report"));
    r.instance = rebuild(s, policy);
    const auto& inst = *r.instance;
    if (inst.checks.size() != s.checks.size())
        r.differences.push_back("check count " + std::to_string(s.checks.size()) + " -> " +
                                std::to_string(inst.checks.size()));
    const std::size_t n = std::min(inst.checks.size(), s.checks.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [name, pass] = s.checks[i];
        if (inst.checks[i].name != name)
            r.differences.push_back("check " + std::to_string(i) + " renamed '" + name + "' -> '" + inst.checks[i].name + "'");
        else if (inst.checks[i].pass != pass)
            r.differences.push_back("check '" + name + "' " + (pass ? "pass" : "fail") + " -> " +
                                    (inst.checks[i].pass ? "pass" : "fail"));
    }
    if (inst.verified() != s.verified) r.differences.push_back("verdict changed");
    r.identical = r.differences.empty();
    return r;
}

}  // namespace ppinv
