#include "coopt/cop_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>
#include <utility>

#include "coopt/fault.hpp"

namespace coopt {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string write_instance(const CopInstance& inst) {
    std::string out;
    out.reserve(64 + inst.edges.size() * 32);
    out += "COP 1\n";
    out += "n " + std::to_string(inst.n) + "\n";
    out += "d";
    for (int d : inst.domain_sizes) out += " " + std::to_string(d);
    out += "\n";
    for (int i = 0; i < inst.n; ++i) {
        out += "u " + std::to_string(i + 1);
        for (double c : inst.unary[static_cast<std::size_t>(i)]) out += " " + format_double(c);
        out += "\n";
    }
    for (const Edge& e : inst.edges) {
        out += "e " + std::to_string(e.i + 1) + " " + std::to_string(e.j + 1);
        for (double c : e.costs) out += " " + format_double(c);
        out += "\n";
    }
    out += "end\n";
    return out;
}

namespace {

struct LineReader {
    std::istringstream stream;
    int line_no = 0;

    explicit LineReader(const std::string& text) : stream(text) {}

    // Next non-comment, non-blank line; false at end of input.
    bool next(std::string& line) {
        while (std::getline(stream, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            std::size_t p = line.find_first_not_of(" \t");
            if (p == std::string::npos || line[p] == '#') continue;
            return true;
        }
        return false;
    }
};

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0')
        throw ParseFault(std::string("expected integer for ") + what + ", got '" + tok + "'", line_no);
    return static_cast<int>(v);
}

double parse_float(const std::string& tok, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw ParseFault("expected number, got '" + tok + "'", line_no);
    return v;
}

}  // namespace

CopInstance parse_instance(const std::string& text) {
    LineReader reader(text);
    std::string line;

    if (!reader.next(line) || tokenize(line) != std::vector<std::string>{"COP", "1"})
        throw ParseFault("expected 'COP 1' header", reader.line_no);

    if (!reader.next(line)) throw ParseFault("unexpected end of input, expected 'n <n>'", reader.line_no);
    auto toks = tokenize(line);
    if (toks.size() != 2 || toks[0] != "n")
        throw ParseFault("expected 'n <n>' line", reader.line_no);
    const int n = parse_int(toks[1], reader.line_no, "n");
    if (n < 1) throw ParseFault("variable count must be >= 1", reader.line_no);

    if (!reader.next(line)) throw ParseFault("unexpected end of input, expected 'd' line", reader.line_no);
    toks = tokenize(line);
    if (toks.size() != static_cast<std::size_t>(n) + 1 || toks[0] != "d")
        throw ParseFault("expected 'd' line with " + std::to_string(n) + " domain sizes", reader.line_no);
    std::vector<int> domain_sizes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        domain_sizes[static_cast<std::size_t>(i)] = parse_int(toks[static_cast<std::size_t>(i) + 1], reader.line_no, "domain size");
        if (domain_sizes[static_cast<std::size_t>(i)] < 1)
            throw ParseFault("domain size must be >= 1", reader.line_no);
    }

    std::vector<std::vector<double>> unary(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (!reader.next(line))
            throw ParseFault("unexpected end of input, expected 'u' line for variable " +
                                 std::to_string(i + 1), reader.line_no);
        toks = tokenize(line);
        if (toks.empty() || toks[0] != "u")
            throw ParseFault("expected 'u' line for variable " + std::to_string(i + 1), reader.line_no);
        if (toks.size() < 2 || parse_int(toks[1], reader.line_no, "variable index") != i + 1)
            throw ParseFault("unary lines must appear with i ascending; expected variable " +
                                 std::to_string(i + 1), reader.line_no);
        const int d = domain_sizes[static_cast<std::size_t>(i)];
        if (toks.size() != static_cast<std::size_t>(d) + 2)
            throw ParseFault("dimension mismatch: variable " + std::to_string(i + 1) + " needs " +
                                 std::to_string(d) + " costs", reader.line_no);
        auto& table = unary[static_cast<std::size_t>(i)];
        table.reserve(static_cast<std::size_t>(d));
        for (int v = 0; v < d; ++v) table.push_back(parse_float(toks[static_cast<std::size_t>(v) + 2], reader.line_no));
    }

    std::vector<Edge> edges;
    std::set<std::pair<int, int>> seen;
    bool saw_end = false;
    while (reader.next(line)) {
        toks = tokenize(line);
        if (toks.size() == 1 && toks[0] == "end") {
            saw_end = true;
            break;
        }
        if (toks.empty() || toks[0] != "e")
            throw ParseFault("expected 'e' line or 'end', got '" + toks[0] + "'", reader.line_no);
        if (toks.size() < 3) throw ParseFault("edge line needs two endpoints", reader.line_no);
        const int i = parse_int(toks[1], reader.line_no, "edge endpoint");
        const int j = parse_int(toks[2], reader.line_no, "edge endpoint");
        if (i < 1 || j < 1 || i > n || j > n)
            throw ParseFault("edge endpoint out of range", reader.line_no);
        if (i == j) throw ParseFault("self-loop edge (" + std::to_string(i) + "," + std::to_string(j) + ")", reader.line_no);
        if (i > j) throw ParseFault("edge endpoints must satisfy i < j", reader.line_no);
        if (!seen.insert({i, j}).second)
            throw ParseFault("duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")", reader.line_no);
        const std::size_t want = static_cast<std::size_t>(domain_sizes[static_cast<std::size_t>(i - 1)]) *
                                 static_cast<std::size_t>(domain_sizes[static_cast<std::size_t>(j - 1)]);
        if (toks.size() != want + 3)
            throw ParseFault("dimension mismatch: edge (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") needs " + std::to_string(want) + " costs", reader.line_no);
        Edge e;
        e.i = i - 1;
        e.j = j - 1;
        e.costs.reserve(want);
        for (std::size_t k = 0; k < want; ++k) e.costs.push_back(parse_float(toks[k + 3], reader.line_no));
        edges.push_back(std::move(e));
    }
    if (!saw_end) throw ParseFault("missing 'end' sentinel", reader.line_no);

    return make_instance(n, std::move(domain_sizes), std::move(unary), std::move(edges));
}

std::string write_solution(double cost, const Assignment& a) {
    std::string out = "SOL " + format_double(cost);
    for (int v : a.values) out += " " + std::to_string(v);
    out += "\n";
    return out;
}

std::pair<double, Assignment> parse_solution(const std::string& text) {
    auto toks = tokenize(text);
    if (toks.size() < 2 || toks[0] != "SOL")
        throw ParseFault("expected 'SOL <cost> <values...>'", 1);
    const double cost = parse_float(toks[1], 1);
    Assignment a;
    a.values.reserve(toks.size() - 2);
    for (std::size_t k = 2; k < toks.size(); ++k) a.values.push_back(parse_int(toks[k], 1, "value"));
    return {cost, a};
}

}  // namespace coopt
