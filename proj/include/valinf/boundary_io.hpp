#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "valinf/boundary.hpp"
#include "valinf/errors.hpp"

namespace valinf {

// Line-oriented boundary description, '#' starts a comment:
//   curve <id> self=<int> [genus=<int>] [nodes=<int>]
//   meet <id> <id> [mult=<int>]
// Integers are exact; unknown keys are errors.
inline BoundaryGraph parse_boundary(std::istream& in) {
    BoundaryGraph g;
    std::string line;
    int lineno = 0;
    std::vector<std::tuple<std::string, std::string, long long, int>> meets;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word))
            continue;
        if (word == "curve") {
            Curve c;
            if (!(ls >> c.id))
                throw ParseError("curve line without an id", lineno);
            bool have_self = false;
            std::string kv;
            while (ls >> kv) {
                const size_t eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ParseError("expected key=value, got '" + kv + "'", lineno);
                const std::string key = kv.substr(0, eq);
                long long value;
                try {
                    value = static_cast<long long>(parse_integer(kv.substr(eq + 1)));
                } catch (const ParseError& e) {
                    throw ParseError(e.what(), lineno);
                }
                if (key == "self") {
                    c.self = value;
                    have_self = true;
                } else if (key == "genus") {
                    c.genus = value;
                } else if (key == "nodes") {
                    c.nodes = value;
                } else {
                    throw ParseError("unknown curve key '" + key + "'", lineno);
                }
            }
            if (!have_self)
                throw ParseError("curve '" + c.id + "' is missing self=<int>", lineno);
            try {
                g.add_curve(std::move(c));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), lineno);
            }
        } else if (word == "meet") {
            std::string a, b;
            if (!(ls >> a >> b))
                throw ParseError("meet line needs two curve ids", lineno);
            long long mult = 1;
            std::string kv;
            while (ls >> kv) {
                const size_t eq = kv.find('=');
                if (eq == std::string::npos || kv.substr(0, eq) != "mult")
                    throw ParseError("unknown meet key '" + kv + "'", lineno);
                try {
                    mult = static_cast<long long>(parse_integer(kv.substr(eq + 1)));
                } catch (const ParseError& e) {
                    throw ParseError(e.what(), lineno);
                }
            }
            meets.emplace_back(a, b, mult, lineno);
        } else {
            throw ParseError("unknown directive '" + word + "'", lineno);
        }
    }
    for (const auto& [a, b, mult, ln] : meets) {
        try {
            g.add_meet(a, b, mult);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), ln);
        }
    }
    if (g.size() == 0)
        throw ParseError("boundary file declares no curves");
    return g;
}

inline BoundaryGraph parse_boundary(const std::string& text) {
    std::istringstream in(text);
    return parse_boundary(in);
}

inline BoundaryGraph load_boundary(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open boundary file '" + path + "'");
    return parse_boundary(in);
}

inline std::string format_boundary(const BoundaryGraph& g) {
    std::string out;
    for (const auto& c : g.curves()) {
        out += "curve " + c.id + " self=" + std::to_string(c.self);
        if (c.genus)
            out += " genus=" + std::to_string(c.genus);
        if (c.nodes)
            out += " nodes=" + std::to_string(c.nodes);
        out += '\n';
    }
    for (const auto& [k, m] : g.meets()) {
        out += "meet " + k.first + " " + k.second;
        if (m != 1)
            out += " mult=" + std::to_string(m);
        out += '\n';
    }
    return out;
}

} // namespace valinf
