// One PASS/FAIL line per acceptance criterion.
#include "CLI11.hpp"
#include "qchar/classes.hpp"
#include "qchar/exterior.hpp"
#include "qchar/presets.hpp"
#include "qchar/universal.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace qchar;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

Outcome fromReport(const Report& r) {
    const auto f = r.failures();
    return {f.empty(), f.empty() ? "" : f.front()};
}

Outcome both(const Outcome& a, const Outcome& b) {
    if (!a.pass) return a;
    return b;
}

std::string presetText(const std::string& name) {
    std::ifstream in(resolvePreset(name));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string replaceLine(std::string text, const std::string& prefix, const std::string& line) {
    const auto at = text.find("\n" + prefix);
    if (at == std::string::npos) throw std::runtime_error("no line starting with " + prefix);
    const auto end = text.find('\n', at + 1);
    return text.replace(at + 1, end - at - 1, line);
}

const Scalar lambda = Scalar::param(kLambda);

struct Context {
    Preset u1, sumu2;
    std::uint64_t seed = 1;
};

Outcome piFormula(const Context& c) {
    const HopfAlgebra& A = *c.u1.hopf;
    for (int n = -5; n <= 5; ++n) {
        if (n == 0) continue;
        const HopfElement un = n > 0 ? A.power(A.generator(0), n) : A.power(A.generator(1), -n);
        if (c.u1.calculus->pi(un) != FinVector::unit(0, Scalar(1) - lambda.pow(n))) return {false, "n = " + std::to_string(n)};
    }
    return {true, ""};
}

Outcome circCharacter(const Context& c) {
    const HopfAlgebra& A = *c.u1.hopf;
    const int u = A.presentation().generatorIndex("u"), v = A.presentation().generatorIndex("v");
    std::uint64_t state = c.seed;
    const FinVector zeta = FinVector::unit(0);
    for (int s = 0; s < 50; ++s) {
        Word w;
        const std::size_t len = randomBelow(state, 7);
        int exponent = 0;
        for (std::size_t i = 0; i < len; ++i) {
            const bool isU = randomBelow(state, 2) == 0;
            w.push_back(static_cast<char>(isU ? u : v));
            exponent += isU ? 1 : -1;
        }
        // p_lambda(u) = lambda, so p_lambda(v) = 1/lambda
        if (c.u1.calculus->circ(zeta, HopfElement::monomial(w)) != FinVector::unit(0, lambda.pow(exponent)))
            return {false, "word " + A.formatWord(w)};
    }
    return {true, ""};
}

Outcome envelopeDims(const Context& c) {
    const GradedModel m = envelopeModel(*c.u1.calculus, 4);
    const std::vector<std::size_t> d(m.dims.begin(), m.dims.begin() + 5);
    return {d == std::vector<std::size_t>{1, 1, 0, 0, 0}, join(d)};
}

Outcome groupCohomologyU1(const Context& c) {
    auto h = groupCohomology(envelopeModel(*c.u1.calculus, 4));
    h.resize(4);
    return {h == std::vector<std::size_t>{1, 1, 0, 0}, join(h)};
}

Outcome dalethU1(const Context& c) {
    const UniversalModel um(c.u1.calculus);
    const auto h = um.dalethCohomology(6);
    for (int k = 0; k <= 5; ++k)
        if (h.dims[k] != (k % 2 == 0 ? 1u : 0u)) return {false, "H = " + join(h.dims)};
    const FinVector& rep = h.representatives[2].at(0);
    const Index dz = static_cast<Index>(um.omega().index(2, OmegaWord{1}));
    if (rep.nnz() != 1 || rep.entries()[0].first != dz) return {false, "H^2 representative " + um.omega().format(2, rep, {"zeta"})};
    return {true, "H = " + join(h.dims)};
}

Outcome omegaAcyclic(const Context& c) {
    for (const Preset* p : {&c.u1, &c.sumu2}) {
        const auto h = omegaCohomology(OmegaSpace(p->calculus->dim()), 4);
        for (int k = 1; k <= 4; ++k)
            if (h[k] != 0) return {false, p->name + ": H = " + join(h)};
    }
    return {true, ""};
}

Outcome omegaStarIdentities(const Context& c) {
    Outcome o{true, ""};
    for (const Preset* p : {&c.u1, &c.sumu2}) o = both(o, fromReport(OmegaStar(p->calculus).checkIdentities(4)));
    return o;
}

Outcome antisymmetrizers(const Context& c) {
    return fromReport(antisymmetrizerChecks(c.sumu2.calculus->sigma(), c.sumu2.calculus->dim(), 4));
}

Outcome sigmaRelationsSumu2(const Context& c) { return fromReport(sumu2SigmaRelations(SigmaModel(c.sumu2.calculus))); }

Outcome factorized(const Context& c) {
    const FactorizedChern f = factorizedChernCheck(SigmaModel(c.sumu2.calculus), *c.sumu2.representation("fundamental"), 3);
    Outcome o = fromReport(f.report);
    if (!o.pass && f.alternatingMatches) o.detail += "; closed form equals the alternating-sign series";
    return o;
}

Outcome chernIdentitiesBoth(const Context& c) {
    for (const Preset* p : {&c.u1, &c.sumu2}) {
        const SigmaModel s(p->calculus);
        const auto gens = invariantGenerators(*p->hopf, p->representations);
        if (gens.empty()) return {false, p->name + ": no invariant generators"};
        std::uint64_t state = c.seed;
        for (int i = 0; i < 20; ++i) {
            const HopfElement a = randomInvariant(*p->hopf, gens, state), b = randomInvariant(*p->hopf, gens, state);
            const Report r = chernIdentities(s, a, b, 4);
            if (!r.ok()) return {false, p->name + " sample " + std::to_string(i) + ": " + r.failures().front()};
        }
    }
    return {true, ""};
}

Outcome eulerAction(const Context&) {
    const Scalar nu = Scalar::param(kNu);
    for (int k = 0; k <= 2; ++k) {
        if (eulerActionSeries(k, 0, 3) != EPolynomial{{k, Scalar(1)}}) return {false, "n = 0, k = " + std::to_string(k)};
        for (int n : {-2, -1, 1, 2}) {
            EPolynomial expect;
            Scalar factorial(1);
            for (int a = 0; a <= 3; ++a) {
                if (a > 0) factorial = factorial * Scalar(a);
                expect[k + a] = lambda.pow(static_cast<long>(n) * k) * (lambda.pow(n) - Scalar(1)).pow(a) / (nu.pow(a) * factorial);
            }
            if (eulerActionSeries(k, n, 3) != expect) return {false, "k = " + std::to_string(k) + ", n = " + std::to_string(n)};
        }
    }
    return {true, ""};
}

Outcome centrality(const Context& c) {
    Outcome o{true, ""};
    for (const Preset* p : {&c.u1, &c.sumu2}) o = both(o, fromReport(checkCentrality(SigmaModel(p->calculus), 4, 6)));
    return o;
}

Outcome negativeControls(const Context& c) {
    const Preset counit = parsePreset(replaceLine(presetText("sumu2-4d"), "counit G", "counit G = 1"));
    if (!validatePreset(counit, c.seed).failed("counit-law")) return {false, "broken counit not reported as counit-law"};
    const Preset circ = parsePreset(replaceLine(presetText("u1"), "circ u", "circ u = lambda^2"));
    if (!validatePreset(circ, c.seed).failed("circ-module-law")) return {false, "broken circ not reported as circ-module-law"};
    try {
        (void)loadPreset("/nonexistent/x.preset");
        return {false, "missing preset accepted"};
    } catch (const PresetError& e) {
        if (e.kind != PresetError::Kind::NotFound) return {false, "missing preset misreported"};
    }
    return {true, "counit-law, circ-module-law"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    Context ctx;
    std::vector<int> expected, only;
    app.add_option("--seed", ctx.seed, "seed for sampled criteria");
    app.add_option("--expected-failures", expected, "criteria known to fail; exit 0 iff exactly these fail")->delimiter(',');
    app.add_option("--only", only, "run a subset")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    ctx.u1 = loadPreset("u1", ctx.seed);
    ctx.sumu2 = loadPreset("sumu2-4d", ctx.seed);

    const std::vector<std::pair<std::string, std::function<Outcome(const Context&)>>> criteria = {
        {"U(1) pi of u^n", piFormula},
        {"U(1) circ character on 50 random words", circCharacter},
        {"U(1) envelope dims 1,1,0,0,0", envelopeDims},
        {"U(1) group cohomology 1,1,0,0", groupCohomologyU1},
        {"U(1) daleth cohomology to degree 6", dalethU1},
        {"Omega acyclic to degree 4, both presets", omegaAcyclic},
        {"Omega_* identities to degree 4, both presets", omegaStarIdentities},
        {"antisymmetrizer factorization on the 4-dim space", antisymmetrizers},
        {"S_mu U(2) Sigma relations", sigmaRelationsSumu2},
        {"S_mu U(2) factorized Chern series to order 3", factorized},
        {"Chern series identities, 20 samples per preset, order 4", chernIdentitiesBoth},
        {"Euler action series", eulerAction},
        {"centrality of invariants in Sigma", centrality},
        {"negative controls", negativeControls},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second(ctx);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) failed.insert(id);
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
        if (!o.detail.empty()) std::cout << "  [" << o.detail << "]";
        std::cout << "  (" << std::fixed << std::setprecision(1) << secs << " s)\n" << std::flush;
    }
    std::set<int> want(expected.begin(), expected.end());
    if (!only.empty()) {
        std::set<int> sel(only.begin(), only.end());
        std::erase_if(want, [&](int x) { return !sel.count(x); });
    }
    return failed == want ? 0 : 1;
}
