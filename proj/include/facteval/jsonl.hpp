#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace facteval {

/// One problem found while loading or validating an input file.
struct ValidationIssue {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string file;
    int line = 0;  // 1-based; 0 = whole file
    std::string message;

    std::string render() const;
};

class IssueList {
public:
    void error(const std::string& file, int line, const std::string& message);
    void warning(const std::string& file, int line, const std::string& message);

    bool has_errors() const;
    const std::vector<ValidationIssue>& all() const { return issues_; }
    std::size_t size() const { return issues_.size(); }

    /// Throws std::runtime_error listing every error if any was recorded.
    void throw_if_errors() const;

private:
    std::vector<ValidationIssue> issues_;
};

/// Streams a line-delimited JSON file, invoking `fn(line_number, record)`
/// for each non-empty line. Parse failures are recorded as errors and the
/// line is skipped. Returns the number of records handed to `fn`.
std::size_t for_each_jsonl_record(
    const std::string& path, IssueList& issues,
    const std::function<void(int, const nlohmann::json&)>& fn);

/// Rejects fields outside `allowed` when `strict` is set; always rejects a
/// record that is not a JSON object.
bool check_record_fields(const nlohmann::json& record,
                         const std::vector<std::string>& allowed, bool strict,
                         const std::string& path, int line, IssueList& issues);

/// Fetches a required string field, recording an error when missing, not a
/// string, or (optionally) empty.
std::optional<std::string> require_string(const nlohmann::json& record,
                                          const std::string& field,
                                          const std::string& path, int line,
                                          IssueList& issues,
                                          bool allow_empty = false);

// ---------------------------------------------------------------------------
// JsonWriter
//
// Report files must be byte-stable: fixed field order and fixed numeric
// formatting (6 decimal places for metric values, exact round-trip for raw
// doubles). nlohmann::json is used for parsing inputs; this writer emits
// output under our formatting control.
// ---------------------------------------------------------------------------

class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();

    JsonWriter& key(std::string_view name);

    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& value(bool b);
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(std::size_t v);
    JsonWriter& value(long long v);
    /// Fixed 6-decimal rendering (metric values).
    JsonWriter& metric(double v);
    /// Nullable metric; emits null when absent.
    JsonWriter& metric(const std::optional<double>& v);
    /// Shortest exact round-trip rendering (cache payloads).
    JsonWriter& number(double v);
    JsonWriter& null();

    /// key + value shorthands.
    JsonWriter& field(std::string_view name, std::string_view s) { return key(name).value(s); }
    JsonWriter& field(std::string_view name, const char* s) { return key(name).value(s); }
    JsonWriter& field(std::string_view name, bool b) { return key(name).value(b); }
    JsonWriter& field(std::string_view name, int v) { return key(name).value(v); }
    JsonWriter& field(std::string_view name, std::size_t v) { return key(name).value(v); }
    JsonWriter& field(std::string_view name, long long v) { return key(name).value(v); }
    JsonWriter& field_metric(std::string_view name, double v) { return key(name).metric(v); }
    JsonWriter& field_metric(std::string_view name, const std::optional<double>& v) {
        return key(name).metric(v);
    }
    JsonWriter& field_number(std::string_view name, double v) { return key(name).number(v); }

    const std::string& str() const { return out_; }

    static std::string escape(std::string_view s);
    static std::string format_metric(double v);
    static std::string format_exact(double v);

private:
    void comma();
    std::string out_;
    std::vector<bool> first_in_scope_;
    bool pending_key_ = false;
};

/// Writes `content` to `path` (binary, truncating).
void write_text_file(const std::string& path, const std::string& content);

}  // namespace facteval
