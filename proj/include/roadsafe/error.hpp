#pragma once

#include <stdexcept>
#include <string>

namespace roadsafe {

// Base of every error raised by the library. Each subclass maps to one
// failure category so callers (the CLI in particular) can pick exit codes.
struct error: std::runtime_error {
    explicit error(const std::string& what_msg): std::runtime_error(what_msg) {}
};

struct invalid_argument: error {
    explicit invalid_argument(const std::string& what_msg): error(what_msg) {}
};

// Resampling target grid does not intersect the series' time span.
struct empty_overlap: error {
    explicit empty_overlap(const std::string& what_msg): error(what_msg) {}
};

// Not enough jointly-present points to compute a metric.
struct insufficient_data: error {
    explicit insufficient_data(const std::string& what_msg): error(what_msg) {}
};

// Malformed external input (CSV/JSON). Carries an optional 1-based line.
struct parse_error: error {
    parse_error(const std::string& what_msg, std::size_t line = 0):
        error(line ? what_msg + " (line " + std::to_string(line) + ")" : what_msg),
        line(line) {}
    std::size_t line;
};

struct io_error: error {
    explicit io_error(const std::string& what_msg): error(what_msg) {}
};

inline void require(bool pred, const std::string& msg) {
    if (!pred) throw invalid_argument(msg);
}

} // namespace roadsafe
