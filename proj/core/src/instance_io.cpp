#include "sstp/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sstp/error.hpp"

namespace sstp {

namespace {

// token stream over the comment-stripped input, tracking line numbers
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    // next whitespace-separated token; empty optional at EOF
    bool next(std::string& tok) {
        while (cursor_ >= line_.size()) {
            if (!std::getline(in_, line_)) return false;
            ++line_no_;
            if (auto hash = line_.find('#'); hash != std::string::npos)
                line_.erase(hash);
            cursor_ = line_.find_first_not_of(" \t\r");
            if (cursor_ == std::string::npos) cursor_ = line_.size();
        }
        const auto end = line_.find_first_of(" \t\r", cursor_);
        tok = line_.substr(cursor_, end == std::string::npos ? end : end - cursor_);
        cursor_ = end == std::string::npos ? line_.size() : end;
        const auto skip = line_.find_first_not_of(" \t\r", cursor_);
        cursor_ = skip == std::string::npos ? line_.size() : skip;
        return true;
    }

    std::string expect(const char* what) {
        std::string tok;
        if (!next(tok)) throw ParseError(line_no_, std::string("unexpected end of input, expected ") + what);
        return tok;
    }

    long expect_int(const char* what) {
        const std::string tok = expect(what);
        long value = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || p != tok.data() + tok.size())
            throw ParseError(line_no_, "expected integer " + std::string(what) + ", got '" + tok + "'");
        return value;
    }

    double expect_real(const char* what) {
        const std::string tok = expect(what);
        try {
            std::size_t pos = 0;
            const double value = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            return value;
        } catch (const std::exception&) {
            throw ParseError(line_no_, "expected real " + std::string(what) + ", got '" + tok + "'");
        }
    }

    void expect_keyword(const char* kw) {
        const std::string tok = expect(kw);
        if (tok != kw)
            throw ParseError(line_no_, std::string("expected '") + kw + "', got '" + tok + "'");
    }

    int line() const { return line_no_; }

private:
    std::istream& in_;
    std::string line_;
    std::size_t cursor_ = 0;
    int line_no_ = 0;
};

std::string format_real(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

} // namespace

SstpInstance parse_instance(std::istream& in) {
    TokenReader r(in);
    r.expect_keyword("SSTP");
    const long nodes = r.expect_int("node count");
    const long edges = r.expect_int("edge count");
    const long scenarios = r.expect_int("scenario count");
    if (nodes < 1) throw ParseError(r.line(), "node count must be >= 1");
    if (edges < 0) throw ParseError(r.line(), "edge count must be >= 0");
    if (scenarios < 1) throw ParseError(r.line(), "scenario count must be >= 1");

    std::vector<std::pair<NodeId, NodeId>> edge_list;
    CostVector first_stage;
    std::set<std::pair<NodeId, NodeId>> seen;
    for (long e = 0; e < edges; ++e) {
        r.expect_keyword("E");
        const long u = r.expect_int("edge endpoint");
        const long v = r.expect_int("edge endpoint");
        const double c = r.expect_real("first-stage cost");
        if (u < 1 || u > nodes || v < 1 || v > nodes)
            throw ParseError(r.line(), "edge endpoint out of range");
        if (u == v) throw ParseError(r.line(), "self loop");
        const NodeId a = static_cast<NodeId>(u - 1), b = static_cast<NodeId>(v - 1);
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
            throw ParseError(r.line(), "duplicate edge");
        if (c < 0.0) throw ParseError(r.line(), "negative cost");
        edge_list.emplace_back(a, b);
        first_stage.push_back(c);
    }

    std::vector<Scenario> scens;
    for (long s = 0; s < scenarios; ++s) {
        r.expect_keyword("S");
        Scenario scen;
        scen.probability = r.expect_real("probability");
        if (!(scen.probability > 0.0) || scen.probability > 1.0)
            throw ParseError(r.line(), "probability outside (0,1]");
        const long k = r.expect_int("terminal count");
        if (k < 0 || k > nodes) throw ParseError(r.line(), "terminal count out of range");
        for (long t = 0; t < k; ++t) {
            const long node = r.expect_int("terminal");
            if (node < 1 || node > nodes)
                throw ParseError(r.line(), "terminal node out of range");
            scen.terminals.push_back(static_cast<NodeId>(node - 1));
        }
        std::sort(scen.terminals.begin(), scen.terminals.end());
        if (std::adjacent_find(scen.terminals.begin(), scen.terminals.end()) !=
            scen.terminals.end())
            throw ParseError(r.line(), "duplicate terminal");
        for (long e = 0; e < edges; ++e) {
            r.expect_keyword("C");
            const double c = r.expect_real("second-stage cost");
            if (c < 0.0) throw ParseError(r.line(), "negative cost");
            scen.costs.push_back(c);
        }
        scens.push_back(std::move(scen));
    }

    std::string extra;
    if (r.next(extra))
        throw ParseError(r.line(), "trailing content '" + extra + "'");

    double prob_sum = 0.0;
    for (const auto& scen : scens) prob_sum += scen.probability;
    if (std::abs(prob_sum - 1.0) > kProbabilitySumTolerance)
        throw ParseError(r.line(), "scenario probabilities sum to " +
                                       format_real(prob_sum) + ", expected 1 within 1e-6");

    SstpInstance instance{Graph(static_cast<NodeId>(nodes), std::move(edge_list)),
                          std::move(first_stage), std::move(scens)};
    instance.validate();
    return instance;
}

SstpInstance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file: " + path);
    try {
        return parse_instance(in);
    } catch (const ParseError& e) {
        throw Error(path + ": " + e.what());
    }
}

std::string write_instance(const SstpInstance& instance) {
    std::ostringstream out;
    const auto& g = instance.graph;
    out << "SSTP " << g.node_count() << ' ' << g.edge_count() << ' '
        << instance.scenario_count() << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        out << "E " << u + 1 << ' ' << v + 1 << ' '
            << format_real(instance.first_stage_costs[e]) << '\n';
    }
    for (const auto& scen : instance.scenarios) {
        out << "S " << format_real(scen.probability) << ' ' << scen.terminals.size();
        for (NodeId t : scen.terminals) out << ' ' << t + 1;
        out << '\n';
        for (double c : scen.costs) out << "C " << format_real(c) << '\n';
    }
    return out.str();
}

} // namespace sstp
