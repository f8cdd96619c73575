#pragma once

#include "rat/rational.hpp"

#include <array>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

namespace rat {

// Literal +v is u_v, -v is its negation; variables are 1-based.
using Clause = std::array<int, 3>;

struct SatInstance {
    int variables = 0;
    std::vector<Clause> clauses;
    friend bool operator==(const SatInstance&, const SatInstance&) = default;
};

struct CnfError : ParseError {
    using ParseError::ParseError;
};

inline void check_instance(const SatInstance& f) {
    if (f.variables < 0) throw CnfError("negative variable count", 0);
    for (std::size_t c = 0; c < f.clauses.size(); ++c)
        for (int l : f.clauses[c])
            if (l == 0 || std::abs(l) > f.variables)
                throw CnfError("clause " + std::to_string(c + 1) + " references an unknown variable", c);
}

// DIMACS, every clause of width exactly 3. `pos` in errors is the line number.
inline SatInstance parse_cnf(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    SatInstance f;
    bool header = false;
    long declared = 0;
    std::vector<int> cur;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c" || tok[0] == 'c') continue;
        if (tok == "%") break;  // SATLIB trailer
        if (tok == "p") {
            std::string fmt;
            long v = -1, m = -1;
            if (header || !(ls >> fmt >> v >> m) || fmt != "cnf" || v < 0 || m < 0 || (ls >> tok))
                throw CnfError("malformed header", lineno);
            header = true;
            f.variables = int(v);
            declared = m;
            continue;
        }
        if (!header) throw CnfError("clause before 'p cnf' header", lineno);
        do {
            char* end = nullptr;
            long l = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0') throw CnfError("bad literal '" + tok + "'", lineno);
            if (l == 0) {
                if (cur.size() != 3)
                    throw CnfError("clause of width " + std::to_string(cur.size()) + ", expected 3", lineno);
                f.clauses.push_back({cur[0], cur[1], cur[2]});
                cur.clear();
            } else {
                if (std::labs(l) > f.variables) throw CnfError("literal out of range", lineno);
                cur.push_back(int(l));
            }
        } while (ls >> tok);
    }
    if (!header) throw CnfError("missing 'p cnf' header", lineno);
    if (!cur.empty()) throw CnfError("unterminated clause", lineno);
    if (long(f.clauses.size()) != declared)
        throw CnfError("header declares " + std::to_string(declared) + " clauses, found " +
                           std::to_string(f.clauses.size()),
                       lineno);
    return f;
}

inline std::string to_dimacs(const SatInstance& f) {
    std::ostringstream os;
    os << "p cnf " << f.variables << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) os << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
    return os.str();
}

// assignment[v-1] is the value of u_v
inline bool satisfies(const SatInstance& f, const std::vector<bool>& assignment) {
    for (const auto& c : f.clauses) {
        bool ok = false;
        for (int l : c) ok |= assignment[std::abs(l) - 1] == (l > 0);
        if (!ok) return false;
    }
    return true;
}

} // namespace rat
