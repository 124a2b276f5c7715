#include "facteval/jsonl.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace facteval {

std::string ValidationIssue::render() const {
    std::ostringstream os;
    os << (severity == Severity::Error ? "error" : "warning") << ": " << file;
    if (line > 0) os << ":" << line;
    os << ": " << message;
    return os.str();
}

void IssueList::error(const std::string& file, int line, const std::string& message) {
    issues_.push_back({ValidationIssue::Severity::Error, file, line, message});
}

void IssueList::warning(const std::string& file, int line, const std::string& message) {
    issues_.push_back({ValidationIssue::Severity::Warning, file, line, message});
}

bool IssueList::has_errors() const {
    for (const auto& i : issues_)
        if (i.severity == ValidationIssue::Severity::Error) return true;
    return false;
}

void IssueList::throw_if_errors() const {
    if (!has_errors()) return;
    std::ostringstream os;
    os << "input validation failed:";
    for (const auto& i : issues_)
        if (i.severity == ValidationIssue::Severity::Error) os << "\n  " << i.render();
    throw std::runtime_error(os.str());
}

std::size_t for_each_jsonl_record(
    const std::string& path, IssueList& issues,
    const std::function<void(int, const nlohmann::json&)>& fn) {
    std::ifstream in(path);
    if (!in) {
        issues.error(path, 0, "cannot open file");
        return 0;
    }
    std::string line;
    int line_no = 0;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = line.find_first_not_of(" \t") == std::string::npos;
        if (blank) continue;
        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded()) {
            issues.error(path, line_no, "malformed JSON record");
            continue;
        }
        fn(line_no, record);
        ++count;
    }
    return count;
}

bool check_record_fields(const nlohmann::json& record,
                         const std::vector<std::string>& allowed, bool strict,
                         const std::string& path, int line, IssueList& issues) {
    if (!record.is_object()) {
        issues.error(path, line, "record is not a JSON object");
        return false;
    }
    if (!strict) return true;
    bool ok = true;
    for (auto it = record.begin(); it != record.end(); ++it) {
        bool known = false;
        for (const auto& a : allowed)
            if (it.key() == a) { known = true; break; }
        if (!known) {
            issues.error(path, line, "unknown field \"" + it.key() + "\"");
            ok = false;
        }
    }
    return ok;
}

std::optional<std::string> require_string(const nlohmann::json& record,
                                          const std::string& field,
                                          const std::string& path, int line,
                                          IssueList& issues, bool allow_empty) {
    auto it = record.find(field);
    if (it == record.end()) {
        issues.error(path, line, "missing field \"" + field + "\"");
        return std::nullopt;
    }
    if (!it->is_string()) {
        issues.error(path, line, "field \"" + field + "\" must be a string");
        return std::nullopt;
    }
    std::string v = it->get<std::string>();
    if (v.empty() && !allow_empty) {
        issues.error(path, line, "field \"" + field + "\" must be non-empty");
        return std::nullopt;
    }
    return v;
}

// --- JsonWriter -------------------------------------------------------------

std::string JsonWriter::escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

std::string JsonWriter::format_metric(double v) {
    // Normalize negative zero so 0 always renders as 0.000000.
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string JsonWriter::format_exact(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    // Bare exponentless integers are still valid JSON numbers; keep as-is.
    return s;
}

void JsonWriter::comma() {
    if (pending_key_) {
        pending_key_ = false;
        return;
    }
    if (!first_in_scope_.empty()) {
        if (!first_in_scope_.back()) out_ += ',';
        first_in_scope_.back() = false;
    }
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ += '{';
    first_in_scope_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    first_in_scope_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    comma();
    out_ += '[';
    first_in_scope_.push_back(true);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    first_in_scope_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
    comma();
    out_ += '"';
    out_ += escape(name);
    out_ += "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    comma();
    out_ += '"';
    out_ += escape(s);
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::value(bool b) {
    comma();
    out_ += b ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
    comma();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(long long v) {
    comma();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::metric(double v) {
    comma();
    out_ += format_metric(v);
    return *this;
}

JsonWriter& JsonWriter::metric(const std::optional<double>& v) {
    if (v.has_value()) return metric(*v);
    return null();
}

JsonWriter& JsonWriter::number(double v) {
    comma();
    out_ += format_exact(v);
    return *this;
}

JsonWriter& JsonWriter::null() {
    comma();
    out_ += "null";
    return *this;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace facteval
