#include "qchar/presets.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qchar {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Split on sep outside parentheses and brackets.
std::vector<std::string> splitTop(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

struct Entry {
    int line;
    std::string key;
    std::string arg;
    std::string value;
};

[[noreturn]] void fail(int line, const std::string& why) {
    throw PresetError(PresetError::Kind::Parse, (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + why);
}

Scalar scalarAt(int line, const std::string& s) {
    try {
        return Scalar::parse(s);
    } catch (const std::exception& e) {
        fail(line, e.what());
    }
}

std::vector<Scalar> scalarList(int line, const std::string& s) {
    std::vector<Scalar> out;
    for (const auto& x : splitTop(s, ',')) out.push_back(scalarAt(line, x));
    return out;
}

std::vector<std::vector<Scalar>> scalarRows(int line, const std::string& s) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& r : splitTop(s, ';')) rows.push_back(scalarList(line, r));
    for (const auto& r : rows)
        if (r.size() != rows.size()) fail(line, "matrix is not square");
    return rows;
}

LinearMap linearMap(const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t n = rows.size();
    LinearMap m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Scalar> col;
        for (std::size_t i = 0; i < n; ++i) col.push_back(rows[i][j]);
        m.setColumn(j, FinVector::fromDense(col));
    }
    return m;
}

std::string rowsText(const std::vector<std::vector<Scalar>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < rows[i].size(); ++j) out += (j ? ", " : "") + rows[i][j].str();
    }
    return out;
}

std::vector<std::vector<Scalar>> rowsOf(const LinearMap& m) {
    std::vector<std::vector<Scalar>> rows(m.codomainDim(), std::vector<Scalar>(m.domainDim()));
    for (std::size_t j = 0; j < m.domainDim(); ++j)
        for (const auto& [i, c] : m.column(j).entries()) rows[i][j] = c;
    return rows;
}

int nameIndex(int line, const std::vector<std::string>& names, const std::string& n, const char* what) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == n) return static_cast<int>(i);
    fail(line, std::string("unknown ") + what + " '" + n + "'");
}

// "1" or factors name / name^k joined by '*'
Word parseWord(int line, const std::vector<std::string>& names, const std::string& s) {
    const std::string t = trim(s);
    if (t == "1") return Word();
    Word w;
    for (const auto& f : splitTop(t, '*')) {
        const auto caret = f.find('^');
        const std::string base = trim(f.substr(0, caret));
        int times = 1;
        if (caret != std::string::npos) {
            try {
                times = std::stoi(f.substr(caret + 1));
            } catch (const std::exception&) {
                fail(line, "bad exponent in '" + f + "'");
            }
            if (times < 1) fail(line, "bad exponent in '" + f + "'");
        }
        const int g = nameIndex(line, names, base, "generator");
        w.append(static_cast<std::size_t>(times), static_cast<char>(g));
    }
    return w;
}

// Sums of c*[x (x) y (x) ...]; each term ends at its closing bracket.
std::vector<std::pair<Scalar, std::vector<std::string>>> parseTensorTerms(int line, const std::string& s) {
    std::vector<std::pair<Scalar, std::vector<std::string>>> out;
    const std::string t = trim(s);
    if (t == "0") return out;
    std::vector<std::string> terms;
    int depth = 0;
    std::string cur;
    char lastSignificant = 0;
    for (char c : t) {
        if ((c == '+' || c == '-') && depth == 0 && lastSignificant == ']') {
            terms.push_back(trim(cur));
            cur.assign(1, c);
            lastSignificant = c;
            continue;
        }
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        cur += c;
        if (!std::isspace(static_cast<unsigned char>(c))) lastSignificant = c;
    }
    terms.push_back(trim(cur));
    for (std::string term : terms) {
        Scalar sign(1);
        if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
            if (term[0] == '-') sign = Scalar(-1);
            term = trim(term.substr(1));
        }
        const auto open = term.rfind('[');
        if (open == std::string::npos || term.back() != ']') fail(line, "expected [ ... ] in tensor term '" + term + "'");
        std::string coef = trim(term.substr(0, open));
        Scalar c(1);
        if (!coef.empty()) {
            if (coef.back() != '*') fail(line, "expected '*' before '[' in '" + term + "'");
            c = scalarAt(line, coef.substr(0, coef.size() - 1));
        }
        const std::string inner = term.substr(open + 1, term.size() - open - 2);
        std::vector<std::string> legs;
        std::size_t pos = 0;
        for (;;) {
            const auto x = inner.find("(x)", pos);
            legs.push_back(trim(inner.substr(pos, x == std::string::npos ? std::string::npos : x - pos)));
            if (x == std::string::npos) break;
            pos = x + 3;
        }
        out.emplace_back(sign * c, legs);
    }
    return out;
}

std::string tensorTerm(const Scalar& c, const std::string& body) {
    if (c.isOne()) return body;
    if (c == Scalar(-1)) return "-" + body;
    return "(" + c.str() + ")*" + body;
}

std::string joinSigned(const std::vector<std::string>& parts) {
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i][0] == '-') out += " - " + parts[i].substr(1);
        else out += " + " + parts[i];
    }
    return out;
}

std::string wordText(const HopfAlgebra& A, const Word& w) { return A.formatWord(w); }

std::string copText(const HopfAlgebra& A, const Tensor& t) {
    std::vector<std::string> parts;
    for (const auto& [key, c] : t.terms()) {
        std::string body = "[";
        for (std::size_t i = 0; i < key.size(); ++i) body += (i ? " (x) " : "") + wordText(A, key[i]);
        parts.push_back(tensorTerm(c, body + "]"));
    }
    return joinSigned(parts);
}

std::string formTensorText(const std::vector<std::string>& basis, const FinVector& x) {
    const std::size_t n = basis.size();
    std::vector<std::string> parts;
    for (const auto& [idx, c] : x.entries()) parts.push_back(tensorTerm(c, "[" + basis[idx / n] + " (x) " + basis[idx % n] + "]"));
    return joinSigned(parts);
}

FinVector parseFormTensor(int line, const std::vector<std::string>& basis, const std::string& s) {
    const std::size_t n = basis.size();
    VectorBuilder b;
    for (const auto& [c, legs] : parseTensorTerms(line, s)) {
        if (legs.size() != 2) fail(line, "expected two legs");
        const int x = nameIndex(line, basis, legs[0], "basis element");
        const int y = nameIndex(line, basis, legs[1], "basis element");
        b.add(static_cast<Index>(x * n + y), c);
    }
    return b.build();
}

HopfElement parseElement(int line, const HopfAlgebra& A, const std::string& s) {
    try {
        return A.parse(s);
    } catch (const std::exception& e) {
        fail(line, e.what());
    }
}

const std::map<std::string, std::set<std::string>>& allowedKeys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"hopf", {"generators", "star", "rule", "coproduct", "counit", "antipode"}},
        {"calculus", {"basis", "pi", "circ", "representative", "ideal", "delta", "wedge"}},
        {"representations", {"rep", "C", "S", "braid"}},
        {"options", {"name", "kind", "max-degree", "validate-degree", "parameters"}},
    };
    return keys;
}

const std::set<std::string>& keysWithArgument() {
    static const std::set<std::string> k = {"rule", "coproduct", "counit", "antipode", "pi", "circ", "representative", "delta", "rep", "C", "S", "braid"};
    return k;
}

int intAt(int line, const std::string& s) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail(line, "expected a nonnegative integer, got '" + s + "'");
    }
}

}  // namespace

const Representation* Preset::representation(const std::string& n) const {
    for (const auto& r : representations)
        if (r.name == n) return &r;
    return nullptr;
}

Preset parsePreset(const std::string& text, const std::string& source) {
    std::map<std::string, std::vector<Entry>> sections;
    std::istringstream in(text);
    std::string raw, section;
    int lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineNo, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!allowedKeys().count(section)) fail(lineNo, "unknown section [" + section + "]");
            continue;
        }
        if (section.empty()) fail(lineNo, "entry outside of a section");
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineNo, "expected key = value");
        const std::string lhs = trim(line.substr(0, eq));
        const auto sp = lhs.find_first_of(" \t");
        Entry e{lineNo, lhs.substr(0, sp), sp == std::string::npos ? "" : trim(lhs.substr(sp)), trim(line.substr(eq + 1))};
        if (!allowedKeys().at(section).count(e.key)) fail(lineNo, "unknown key '" + e.key + "' in [" + section + "]");
        if (keysWithArgument().count(e.key) != !e.arg.empty())
            fail(lineNo, e.arg.empty() ? "key '" + e.key + "' needs an argument" : "key '" + e.key + "' takes no argument");
        sections[section].push_back(e);
    }

    Preset p;
    p.source = source;
    auto single = [&](const std::string& sec, const std::string& key) -> const Entry* {
        const Entry* found = nullptr;
        for (const auto& e : sections[sec])
            if (e.key == key) {
                if (found) fail(e.line, "duplicate key '" + key + "'");
                found = &e;
            }
        return found;
    };

    // [hopf]
    const Entry* gens = single("hopf", "generators");
    if (!gens) fail(0, "[hopf] needs generators");
    HopfPresentation pres;
    pres.names = words(gens->value);
    const std::size_t ng = pres.names.size();
    if (ng == 0 || ng > 127) fail(gens->line, "bad generator count");
    const Entry* star = single("hopf", "star");
    if (!star) fail(0, "[hopf] needs star");
    for (const auto& s : words(star->value)) pres.star.push_back(nameIndex(star->line, pres.names, s, "generator"));
    if (pres.star.size() != ng) fail(star->line, "star needs one partner per generator");

    // rule-free algebra with the same generators, for reading raw words
    HopfPresentation bare;
    bare.names = pres.names;
    bare.star = pres.star;
    for (std::size_t g = 0; g < ng; ++g) {
        const Word w(1, static_cast<char>(g));
        Tensor t(2);
        t.add({w, w}, Scalar(1));
        bare.coproduct.push_back(t);
        bare.counit.push_back(Scalar(1));
        bare.antipode.push_back(HopfElement::monomial(w));
    }
    const HopfAlgebra rawAlg(bare);

    pres.coproduct.assign(ng, Tensor(2));
    pres.counit.assign(ng, Scalar());
    pres.antipode.assign(ng, HopfElement());
    std::vector<bool> haveCop(ng), haveCounit(ng), haveKappa(ng);
    for (const auto& e : sections["hopf"]) {
        if (e.key == "rule") {
            pres.rules.push_back({parseWord(e.line, pres.names, e.arg), parseElement(e.line, rawAlg, e.value)});
            if (pres.rules.back().lhs.empty()) fail(e.line, "rule with empty left hand side");
        } else if (e.key == "coproduct" || e.key == "counit" || e.key == "antipode") {
            const int g = nameIndex(e.line, pres.names, e.arg, "generator");
            if (e.key == "coproduct") {
                if (haveCop[g]) fail(e.line, "duplicate coproduct");
                haveCop[g] = true;
                for (const auto& [c, legs] : parseTensorTerms(e.line, e.value)) {
                    if (legs.size() != 2) fail(e.line, "coproduct terms need two legs");
                    pres.coproduct[g].add({parseWord(e.line, pres.names, legs[0]), parseWord(e.line, pres.names, legs[1])}, c);
                }
            } else if (e.key == "counit") {
                if (haveCounit[g]) fail(e.line, "duplicate counit");
                haveCounit[g] = true;
                pres.counit[g] = scalarAt(e.line, e.value);
            } else {
                if (haveKappa[g]) fail(e.line, "duplicate antipode");
                haveKappa[g] = true;
                pres.antipode[g] = parseElement(e.line, rawAlg, e.value);
            }
        }
    }
    for (std::size_t g = 0; g < ng; ++g)
        if (!haveCop[g] || !haveCounit[g] || !haveKappa[g])
            fail(0, "generator '" + pres.names[g] + "' needs coproduct, counit and antipode");
    auto A = std::make_shared<HopfAlgebra>(pres);
    p.hopf = A;

    // [calculus]
    const Entry* basis = single("calculus", "basis");
    if (!basis) fail(0, "[calculus] needs basis");
    CalculusTables t;
    t.basis = words(basis->value);
    const std::size_t nb = t.basis.size();
    if (nb == 0) fail(basis->line, "empty basis");
    t.piOfGenerator.assign(ng, FinVector());
    t.circOfGenerator.assign(ng, LinearMap());
    t.representatives.assign(nb, HopfElement());
    std::vector<bool> havePi(ng), haveCirc(ng), haveRep(nb), haveDelta(nb);
    std::vector<FinVector> delta(nb);
    for (const auto& e : sections["calculus"]) {
        if (e.key == "pi") {
            const int g = nameIndex(e.line, pres.names, e.arg, "generator");
            const auto v = scalarList(e.line, e.value);
            if (v.size() != nb) fail(e.line, "pi needs one coefficient per basis element");
            t.piOfGenerator[g] = FinVector::fromDense(v);
            havePi[g] = true;
        } else if (e.key == "circ") {
            const int g = nameIndex(e.line, pres.names, e.arg, "generator");
            const auto rows = scalarRows(e.line, e.value);
            if (rows.size() != nb) fail(e.line, "circ needs a square matrix of the basis size");
            t.circOfGenerator[g] = linearMap(rows);
            haveCirc[g] = true;
        } else if (e.key == "representative") {
            const int i = nameIndex(e.line, t.basis, e.arg, "basis element");
            t.representatives[i] = parseElement(e.line, *A, e.value);
            haveRep[i] = true;
        } else if (e.key == "ideal") {
            t.idealGenerators.push_back(parseElement(e.line, *A, e.value));
        } else if (e.key == "delta") {
            const int i = nameIndex(e.line, t.basis, e.arg, "basis element");
            delta[i] = parseFormTensor(e.line, t.basis, e.value);
            haveDelta[i] = true;
        } else if (e.key == "wedge") {
            t.wedgeGenerators.push_back(parseFormTensor(e.line, t.basis, e.value));
        }
    }
    for (std::size_t g = 0; g < ng; ++g)
        if (!havePi[g] || !haveCirc[g]) fail(0, "generator '" + pres.names[g] + "' needs pi and circ");
    for (std::size_t i = 0; i < nb; ++i)
        if (!haveRep[i]) fail(0, "basis element '" + t.basis[i] + "' needs a representative");
    std::size_t deltaCount = 0;
    for (bool b : haveDelta) deltaCount += b;
    if (deltaCount != 0 && deltaCount != nb) fail(0, "delta must be given for every basis element or none");
    if (deltaCount == nb) t.delta = delta;
    p.calculus = std::make_shared<Calculus>(A, t);

    // [representations]
    std::map<std::string, std::size_t> repIndex;
    for (const auto& e : sections["representations"])
        if (e.key == "rep") {
            if (repIndex.count(e.arg)) fail(e.line, "duplicate representation '" + e.arg + "'");
            Representation r;
            r.name = e.arg;
            for (const auto& row : splitTop(e.value, ';')) {
                r.u.emplace_back();
                for (const auto& x : splitTop(row, ',')) r.u.back().push_back(parseElement(e.line, *A, x));
            }
            for (const auto& row : r.u)
                if (row.size() != r.u.size()) fail(e.line, "representation matrix is not square");
            repIndex[e.arg] = p.representations.size();
            p.representations.push_back(std::move(r));
        }
    for (const auto& e : sections["representations"]) {
        if (e.key == "rep") continue;
        auto it = repIndex.find(e.arg);
        if (it == repIndex.end()) fail(e.line, "unknown representation '" + e.arg + "'");
        Representation& r = p.representations[it->second];
        const auto rows = scalarRows(e.line, e.value);
        const std::size_t want = e.key == "braid" ? r.dim() * r.dim() : r.dim();
        if (rows.size() != want) fail(e.line, e.key + " has the wrong size");
        if (e.key == "C") r.C = rows;
        else if (e.key == "S") r.S = rows;
        else r.braid = linearMap(rows);
    }
    for (const auto& r : p.representations)
        if (r.C.empty()) fail(0, "representation '" + r.name + "' needs C");

    // [options]
    if (const Entry* e = single("options", "name")) p.name = e->value;
    if (const Entry* e = single("options", "kind")) {
        if (e->value == "wedge") p.kind = CalculusKind::Wedge;
        else if (e->value == "vee") p.kind = CalculusKind::Vee;
        else fail(e->line, "kind must be wedge or vee");
    }
    if (const Entry* e = single("options", "max-degree")) p.maxDegree = intAt(e->line, e->value);
    if (const Entry* e = single("options", "validate-degree")) p.validateDegree = intAt(e->line, e->value);
    if (const Entry* e = single("options", "parameters")) {
        p.parameters = words(e->value);
        for (const auto& x : p.parameters)
            if (x != "mu" && x != "lambda" && x != "nu") fail(e->line, "unknown parameter '" + x + "'");
    }
    return p;
}

Report validatePreset(const Preset& p, std::uint64_t seed) {
    Report r = p.hopf->validate(p.validateDegree, seed);
    r.merge(p.calculus->validate(p.validateDegree));
    for (const auto& rep : p.representations) {
        const Report rr = validateRepresentation(*p.hopf, rep);
        for (const auto& c : rr.checks()) r.add(rep.name + "." + c.name, c.passed, c.detail);
    }
    return r;
}

std::string serializePreset(const Preset& p) {
    const HopfAlgebra& A = *p.hopf;
    const HopfPresentation& pres = A.presentation();
    const CalculusTables& t = p.calculus->tables();
    std::ostringstream out;
    auto names = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
        return s;
    };
    out << "[hopf]\n";
    out << "generators = " << names(pres.names) << "\n";
    std::vector<std::string> star;
    for (int g : pres.star) star.push_back(pres.names[g]);
    out << "star = " << names(star) << "\n";
    for (const auto& rule : pres.rules) out << "rule " << A.formatWord(rule.lhs) << " = " << A.format(rule.rhs) << "\n";
    for (std::size_t g = 0; g < pres.names.size(); ++g) {
        out << "coproduct " << pres.names[g] << " = " << copText(A, pres.coproduct[g]) << "\n";
        out << "counit " << pres.names[g] << " = " << pres.counit[g].str() << "\n";
        out << "antipode " << pres.names[g] << " = " << A.format(pres.antipode[g]) << "\n";
    }
    out << "\n[calculus]\n";
    out << "basis = " << names(t.basis) << "\n";
    const std::size_t nb = t.basis.size();
    for (std::size_t g = 0; g < pres.names.size(); ++g) {
        std::vector<Scalar> v(nb);
        for (const auto& [i, c] : t.piOfGenerator[g].entries()) v[i] = c;
        out << "pi " << pres.names[g] << " = " << rowsText({v}) << "\n";
        out << "circ " << pres.names[g] << " = " << rowsText(rowsOf(t.circOfGenerator[g])) << "\n";
    }
    for (std::size_t i = 0; i < nb; ++i) out << "representative " << t.basis[i] << " = " << A.format(t.representatives[i]) << "\n";
    for (const auto& x : t.idealGenerators) out << "ideal = " << A.format(x) << "\n";
    for (const auto& x : t.wedgeGenerators) out << "wedge = " << formTensorText(t.basis, x) << "\n";
    if (t.delta)
        for (std::size_t i = 0; i < nb; ++i) out << "delta " << t.basis[i] << " = " << formTensorText(t.basis, (*t.delta)[i]) << "\n";
    if (!p.representations.empty()) out << "\n[representations]\n";
    for (const auto& r : p.representations) {
        std::string m;
        for (std::size_t i = 0; i < r.dim(); ++i) {
            if (i) m += "; ";
            for (std::size_t j = 0; j < r.dim(); ++j) m += (j ? ", " : "") + A.format(r.u[i][j]);
        }
        out << "rep " << r.name << " = " << m << "\n";
        out << "C " << r.name << " = " << rowsText(r.C) << "\n";
        if (r.S) out << "S " << r.name << " = " << rowsText(*r.S) << "\n";
        if (r.braid) out << "braid " << r.name << " = " << rowsText(rowsOf(*r.braid)) << "\n";
    }
    out << "\n[options]\n";
    if (!p.name.empty()) out << "name = " << p.name << "\n";
    out << "kind = " << kindName(p.kind) << "\n";
    out << "max-degree = " << p.maxDegree << "\n";
    out << "validate-degree = " << p.validateDegree << "\n";
    if (!p.parameters.empty()) out << "parameters = " << names(p.parameters) << "\n";
    return out.str();
}

std::string presetDirectory() {
    if (const char* env = std::getenv("QCHAR_PRESET_DIR"); env && *env) return env;
#ifdef QCHAR_PRESET_DIR
    return QCHAR_PRESET_DIR;
#else
    return "presets";
#endif
}

std::string resolvePreset(const std::string& ref) {
    const bool isPath = ref.find('/') != std::string::npos ||
                        (ref.size() > 7 && ref.compare(ref.size() - 7, 7, ".preset") == 0);
    const std::string path = isPath ? ref : presetDirectory() + "/" + ref + ".preset";
    if (!std::ifstream(path)) throw PresetError(PresetError::Kind::NotFound, "unknown preset '" + ref + "' (looked for " + path + ")");
    return path;
}

Preset loadPreset(const std::string& ref, std::uint64_t seed) {
    const std::string path = resolvePreset(ref);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    Preset p = parsePreset(buf.str(), path);
    if (p.name.empty()) p.name = ref;
    Report r = validatePreset(p, seed);
    if (!r.ok()) {
        std::string why;
        for (const auto& f : r.failures()) why += (why.empty() ? "" : "; ") + f;
        throw PresetError(PresetError::Kind::Validation, "preset '" + ref + "' failed validation: " + why, r);
    }
    return p;
}

}  // namespace qchar
