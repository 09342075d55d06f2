#include "liouville/formula_table.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace liouville {
namespace {

bool parse_factor(const std::string& tok, std::string& sym, int& exp) {
    auto caret = tok.find('^');
    sym = tok.substr(0, caret);
    exp = 1;
    if (caret != std::string::npos) {
        try {
            exp = std::stoi(tok.substr(caret + 1));
        } catch (...) {
            return false;
        }
    }
    return !sym.empty() && exp > 0;
}

uint64_t fnv1a(const std::string& s, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

int Formula::total_degree() const {
    int best = 0;
    for (const auto& t : terms) {
        int d = 0;
        for (const auto& [sym, e] : t.powers) d += e;
        best = std::max(best, d);
    }
    return best;
}

int Formula::imag_term_count() const {
    int n = 0;
    for (const auto& t : terms)
        if (t.coeff.im != 0) ++n;
    return n;
}

std::vector<std::string> Formula::symbols() const {
    std::set<std::string> seen;
    for (const auto& t : terms)
        for (const auto& [sym, e] : t.powers) seen.insert(sym);
    return {seen.begin(), seen.end()};
}

uint64_t Formula::structural_hash() const {
    std::vector<std::string> lines;
    lines.reserve(terms.size());
    for (const auto& t : terms) {
        std::ostringstream os;
        os << rat_to_string(t.coeff.re) << '|' << rat_to_string(t.coeff.im);
        for (const auto& [sym, e] : t.powers) os << '|' << sym << '^' << e;
        lines.push_back(os.str());
    }
    std::sort(lines.begin(), lines.end());
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& l : lines) h = fnv1a(l + "\n", h);
    return h;
}

Formula load_formula(const std::string& path, const std::string& name) {
    std::ifstream in(path);
    if (!in) throw FormulaError("cannot open formula file: " + path);
    Formula f;
    f.name = name;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        std::string re_tok, im_tok;
        if (!(is >> re_tok)) continue;  // blank
        auto fail = [&](const std::string& what) {
            throw FormulaError(name + ":" + std::to_string(lineno) + ": " + what);
        };
        if (!(is >> im_tok)) fail("term needs RE and IM coefficients");
        FormulaTerm term;
        try {
            term.coeff = GaussRational(rat_from_string(re_tok), rat_from_string(im_tok));
        } catch (...) {
            fail("bad coefficient '" + re_tok + " " + im_tok + "'");
        }
        if (term.coeff.re == 0 && term.coeff.im == 0) fail("zero coefficient");
        std::string tok;
        while (is >> tok) {
            std::string sym;
            int exp;
            if (!parse_factor(tok, sym, exp)) fail("bad factor '" + tok + "'");
            term.powers.emplace_back(sym, exp);
        }
        std::sort(term.powers.begin(), term.powers.end());
        for (std::size_t k = 1; k < term.powers.size(); ++k)
            if (term.powers[k].first == term.powers[k - 1].first)
                fail("repeated symbol '" + term.powers[k].first + "'");
        f.terms.push_back(std::move(term));
    }
    if (f.terms.empty()) throw FormulaError(name + ": no terms");
    return f;
}

const Formula& builtin_formula(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, Formula> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it == cache.end()) {
        std::string path = std::string(LIOUVILLE_FORMULA_DIR) + "/" + name + ".txt";
        it = cache.emplace(name, load_formula(path, name)).first;
    }
    return it->second;
}

} // namespace liouville
