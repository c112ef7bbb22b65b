#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "valinf/errors.hpp"
#include "valinf/rational.hpp"

namespace valinf {

// Deterministic key/value report. Values are canonical strings (exact
// rationals as "p/q", never floats), keys dotted paths. The line format
// round-trips byte for byte, and --json emits the same tree with string
// values so consumers keep exactness.
class Report {
public:
    static constexpr std::string_view header = "# valinf report v1";

    void set(std::string key, std::string value) {
        entries_.emplace_back(std::move(key), std::move(value));
    }
    void set(std::string key, const char* value) { set(std::move(key), std::string(value)); }
    void set(std::string key, const Rational& value) { set(std::move(key), to_string(value)); }
    void set(std::string key, const BigInt& value) { set(std::move(key), value.str()); }
    void set(std::string key, long long value) { set(std::move(key), std::to_string(value)); }
    void set(std::string key, int value) { set(std::move(key), std::to_string(value)); }
    void set(std::string key, bool value) { set(std::move(key), value ? "true" : "false"); }

    void check(const std::string& name, bool pass) {
        set("check." + name, pass ? "pass" : "fail");
    }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    std::string to_text() const {
        std::string out(header);
        out += '\n';
        for (const auto& [k, v] : entries_) {
            out += k;
            out += " = ";
            out += v;
            out += '\n';
        }
        return out;
    }

    static Report from_text(std::string_view text) {
        Report r;
        size_t pos = 0;
        int lineno = 0;
        while (pos < text.size()) {
            size_t end = text.find('\n', pos);
            if (end == std::string_view::npos)
                end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++lineno;
            if (line.empty() || line.front() == '#')
                continue;
            const size_t sep = line.find(" = ");
            if (sep == std::string_view::npos)
                throw ParseError("report line without ' = '", lineno);
            r.set(std::string(line.substr(0, sep)), std::string(line.substr(sep + 3)));
        }
        return r;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : entries_)
            j[k] = v;
        return j;
    }

    bool operator==(const Report& o) const { return entries_ == o.entries_; }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// FNV-1a digest of an input text, used as the inputs fingerprint in reports.
inline std::string content_digest(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace valinf
