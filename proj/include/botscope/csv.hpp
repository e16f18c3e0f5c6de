#pragma once

#include <charconv>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "botscope/errors.hpp"

namespace botscope::csv {

// Field values must not contain the delimiter; no quoting layer.
inline void split(std::string_view line, char delim, std::vector<std::string_view>& out) {
    out.clear();
    size_t start = 0;
    while (true) {
        size_t pos = line.find(delim, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline bool parse_double(std::string_view s, double& value) {
    // strip surrounding spaces; from_chars wants a bare token
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto res = std::from_chars(first, last, value);
    return res.ec == std::errc() && res.ptr == last;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Calls row_fn(line_number, fields) for every non-empty line. Line numbers are
// 1-based and count every line including a skipped header.
inline void for_each_row(const std::string& path, char delim, bool has_header,
                         const std::function<void(size_t, const std::vector<std::string_view>&)>& row_fn) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open file: " + path);
    std::string line;
    std::vector<std::string_view> fields;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 && has_header) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        split(line, delim, fields);
        row_fn(lineno, fields);
    }
}

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path) {
        if (!out_) throw io_error("cannot open file for writing: " + path);
        path_ = path;
    }
    template <typename... Parts>
    void row(const Parts&... parts) {
        bool first = true;
        ((out_ << (first ? "" : ","), first = false, out_ << parts), ...);
        out_ << '\n';
    }
    void close() {
        out_.close();
        if (!out_) throw io_error("write failed: " + path_);
    }

private:
    std::ofstream out_;
    std::string path_;
};

// Shortest decimal form that round-trips a double.
inline std::string format_double(double v) {
    char buf[32];
    int n = snprintf(buf, sizeof(buf), "%.17g", v);
    double check;
    for (int prec = 1; prec < 17; ++prec) {
        char tmp[32];
        int m = snprintf(tmp, sizeof(tmp), "%.*g", prec, v);
        if (parse_double(std::string_view(tmp, m), check) && check == v) return std::string(tmp, m);
    }
    return std::string(buf, n);
}

}  // namespace botscope::csv
