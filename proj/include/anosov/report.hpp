#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace anosov {

/// Formats a double with enough digits to round-trip, so repeated runs
/// produce byte-identical files.
inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Ordered `name = value` document.  One key per line on output; also the
/// machine-readable flavour (same syntax, stable key set).
class Report {
public:
    void set(const std::string& key, const std::string& value) {
        if (index_.count(key)) {
            entries_[index_[key]].second = value;
        } else {
            index_[key] = entries_.size();
            entries_.emplace_back(key, value);
        }
    }
    void set(const std::string& key, double v) { set(key, fmt_double(v)); }
    void set(const std::string& key, long long v) { set(key, std::to_string(v)); }
    void set(const std::string& key, int v) { set(key, std::to_string(v)); }
    void set(const std::string& key, bool v) { set(key, std::string(v ? "true" : "false")); }

    bool has(const std::string& key) const { return index_.count(key) > 0; }
    const std::string& get(const std::string& key) const {
        auto it = index_.find(key);
        if (it == index_.end()) throw std::out_of_range("report key missing: " + key);
        return entries_[it->second].second;
    }

    std::string to_text() const {
        std::string out;
        for (const auto& [k, v] : entries_) {
            out += k;
            out += " = ";
            out += v;
            out += '\n';
        }
        return out;
    }

    void write(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + path);
        f << to_text();
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::map<std::string, size_t> index_;
};

/// Minimal CSV writer with deterministic formatting.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != header_.size()) throw std::invalid_argument("csv row arity mismatch");
        rows_.push_back(cells);
    }

    std::string to_text() const {
        std::string out = join(header_);
        for (const auto& r : rows_) out += join(r);
        return out;
    }

    void write(const std::string& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + path);
        f << to_text();
    }

    size_t size() const { return rows_.size(); }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        line += '\n';
        return line;
    }
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace anosov
