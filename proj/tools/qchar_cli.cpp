#include "CLI11.hpp"
#include "qchar/classes.hpp"
#include "qchar/exterior.hpp"
#include "qchar/presets.hpp"
#include "qchar/universal.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace qchar;

namespace {

constexpr int kUsage = 2;

// Line records. text: "key = value"; machine: "command<TAB>key<TAB>value".
class Emitter {
public:
    Emitter(std::string command, bool machine) : cmd_(std::move(command)), machine_(machine) {}

    void put(const std::string& key, const std::string& value) {
        if (machine_) std::cout << cmd_ << '\t' << key << '\t' << value << '\n';
        else std::cout << key << " = " << value << '\n';
    }
    void check(const Report& r, const std::string& prefix = "") {
        for (const auto& c : r.checks()) {
            put("check." + prefix + c.name, c.passed ? "pass" : "fail" + (c.detail.empty() ? "" : ": " + c.detail));
            ok_ = ok_ && c.passed;
        }
    }
    void fail(const std::string& key, const std::string& why) {
        put(key, "fail: " + why);
        ok_ = false;
    }
    int status() const { return ok_ ? 0 : 1; }

private:
    std::string cmd_;
    bool machine_;
    bool ok_ = true;
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string formatTensor(const std::vector<std::string>& names, int k, const FinVector& x) {
    if (x.isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : x.entries()) {
        os << (first ? "" : " + ") << "(" << c.str() << ")*";
        first = false;
        const auto digits = tensorDigits(i, names.size(), k);
        for (std::size_t j = 0; j < digits.size(); ++j) os << (j ? "*" : "") << names[static_cast<std::size_t>(digits[j])];
    }
    return os.str();
}

struct Options {
    std::string preset;
    bool machine = false;
    std::uint64_t seed = 1;
    std::optional<int> max;
    int order = 0;
    std::string element;
    int samples = 0;
    int k = 0;
    int n = 0;
    std::string rep;
};

// Exit code when loading fails, or nullopt with p filled in.
std::optional<int> load(Emitter& out, const Options& o, Preset& p, const std::string& fallback = "") {
    const std::string ref = o.preset.empty() ? fallback : o.preset;
    if (ref.empty()) {
        std::cerr << "error: --preset is required\n";
        return kUsage;
    }
    try {
        p = loadPreset(ref, o.seed);
    } catch (const PresetError& e) {
        if (e.kind == PresetError::Kind::NotFound) {
            std::cerr << "error: " << e.what() << "\n";
            return kUsage;
        }
        out.put("preset", ref);
        if (e.kind == PresetError::Kind::Parse) out.fail("check.parse", e.what());
        else out.check(e.report, "preset.");
        return out.status();
    }
    out.put("preset", p.name);
    return std::nullopt;
}

int maxOf(const Options& o, const Preset& p) { return o.max.value_or(p.maxDegree); }

int cmdValidate(Emitter& out, const Options& o) {
    Preset p;
    const std::string ref = o.preset;
    if (ref.empty()) {
        std::cerr << "error: validate needs a preset\n";
        return kUsage;
    }
    try {
        p = parsePreset([&] {
            std::ifstream in(resolvePreset(ref));
            std::stringstream s;
            s << in.rdbuf();
            return s.str();
        }(), resolvePreset(ref));
    } catch (const PresetError& e) {
        if (e.kind == PresetError::Kind::NotFound) {
            std::cerr << "error: " << e.what() << "\n";
            return kUsage;
        }
        out.put("preset", ref);
        out.fail("check.parse", e.what());
        return out.status();
    }
    out.put("preset", p.name);
    out.put("source", p.source);
    out.put("generators", std::to_string(p.hopf->numGenerators()));
    out.put("calculus.dim", std::to_string(p.calculus->dim()));
    out.put("calculus.basis", [&] {
        std::string s;
        for (const auto& b : p.calculus->tables().basis) s += (s.empty() ? "" : ",") + b;
        return s;
    }());
    out.put("calculus.kind", kindName(p.kind));
    out.put("delta", p.calculus->hasDelta() ? "present" : "absent");
    std::string reps;
    for (const auto& r : p.representations) reps += (reps.empty() ? "" : ",") + r.name;
    out.put("representations", reps.empty() ? "-" : reps);
    out.check(validatePreset(p, o.seed));
    return out.status();
}

int cmdExteriorDims(Emitter& out, const Options& o) {
    Preset p;
    if (auto e = load(out, o, p)) return *e;
    const Calculus& c = *p.calculus;
    const int max = maxOf(o, p);
    out.put("vee.dims", join(exteriorDims(c, max)));
    if (c.wedgeSpace()) {
        const QuadraticAlgebra env = envelopeAlgebra(c);
        std::vector<std::size_t> d;
        for (int k = 0; k <= max; ++k) d.push_back(env.dim(k));
        out.put("wedge.dims", join(d));
    }
    out.check(antisymmetrizerChecks(c.sigma(), c.dim(), std::min(max, 4)), "antisymmetrizer.");
    return out.status();
}

int cmdGroupCohomology(Emitter& out, const Options& o) {
    Preset p;
    if (auto e = load(out, o, p)) return *e;
    const int max = maxOf(o, p);
    const GradedModel m = p.kind == CalculusKind::Vee ? veeModel(*p.calculus, max + 1) : envelopeModel(*p.calculus, max + 1);
    out.put("kind", kindName(m.kind));
    std::vector<std::size_t> dims(m.dims.begin(), m.dims.begin() + max + 1);
    out.put("dims", join(dims));
    auto h = groupCohomology(m);
    h.resize(static_cast<std::size_t>(max) + 1);
    out.put("cohomology", join(h));
    return out.status();
}

int cmdDalethCohomology(Emitter& out, const Options& o) {
    Preset p;
    if (auto e = load(out, o, p)) return *e;
    const int max = maxOf(o, p);
    const UniversalModel um(p.calculus);
    const auto h = um.dalethCohomology(max);
    std::vector<std::size_t> dims;
    for (int k = 0; k <= max; ++k) dims.push_back(um.dalethBasis(k).size());
    out.put("daleth.dims", join(dims));
    out.put("cohomology", join(h.dims));
    const auto& names = p.calculus->tables().basis;
    for (int k = 0; k <= max; ++k)
        for (std::size_t i = 0; i < h.representatives[k].size(); ++i)
            out.put("representative." + std::to_string(k) + "." + std::to_string(i), um.omega().format(k, h.representatives[k][i], names));
    return out.status();
}

int cmdSigmaRelations(Emitter& out, const Options& o) {
    Preset p;
    if (auto e = load(out, o, p)) return *e;
    const int max = o.max.value_or(4);
    const SigmaModel s(p.calculus);
    const auto rel = sigmaRelations(*p.calculus);
    out.put("relations.count", std::to_string(rel.size()));
    for (std::size_t i = 0; i < rel.size(); ++i)
        out.put("relation." + std::to_string(i), formatTensor(p.calculus->tables().basis, 2, rel[i]));
    std::vector<std::size_t> dims, inv;
    for (int k = 0; k <= max; ++k) {
        dims.push_back(s.dim(k));
        inv.push_back(s.invariants(k).size());
    }
    out.put("sigma.dims", join(dims));
    out.put("invariant.dims", join(inv));
    out.check(checkCentrality(s, max, max), "centrality.");
    try {
        out.check(sumu2SigmaRelations(s), "sumu2.");
    } catch (const std::invalid_argument&) {
        // basis is not tau, e3, ep, em
    }
    return out.status();
}

void putSeries(Emitter& out, const SigmaModel& s, const std::string& key, const ChernSeries& ch) {
    for (std::size_t n = 0; n < ch.coefficients.size(); ++n)
        out.put(key + std::to_string(n), formatSigma(s, static_cast<int>(n), ch.coefficients[n]));
}

int cmdChern(Emitter& out, const Options& o) {
    Preset p;
    if (auto e = load(out, o, p)) return *e;
    const SigmaModel s(p.calculus);
    const HopfAlgebra& A = *p.hopf;
    if (!o.element.empty()) {
        HopfElement a;
        try {
            a = A.parse(o.element);
        } catch (const std::exception& e) {
            std::cerr << "error: cannot parse element: " << e.what() << "\n";
            return kUsage;
        }
        out.put("element", A.format(a));
        try {
            const ChernSeries ch = chernSeries(s, a, o.order);
            putSeries(out, s, "c", ch);
            out.check(ch.report);
        } catch (const NotInvariant& e) {
            out.fail("check.ad-invariant", e.what());
        }
    }
    if (o.samples > 0) {
        const auto gens = invariantGenerators(A, p.representations);
        std::uint64_t state = o.seed;
        for (int i = 0; i < o.samples; ++i) {
            const HopfElement a = randomInvariant(A, gens, state), b = randomInvariant(A, gens, state);
            const std::string tag = "sample." + std::to_string(i) + ".";
            out.put(tag + "a", A.format(a));
            out.put(tag + "b", A.format(b));
            out.check(chernIdentities(s, a, b, o.order), tag);
        }
    }
    return out.status();
}

int cmdChernCheck(Emitter& out, const Options& o) {
    Preset p;
    if (auto e = load(out, o, p, "sumu2-4d")) return *e;
    const std::string repName = o.rep.empty() ? "fundamental" : o.rep;
    const Representation* u = p.representation(repName);
    if (!u) {
        std::cerr << "error: preset has no representation '" << repName << "'\n";
        return kUsage;
    }
    const SigmaModel s(p.calculus);
    FactorizedChern f;
    try {
        f = factorizedChernCheck(s, *u, o.order);
    } catch (const std::invalid_argument& e) {
        out.fail("check.applicable", e.what());
        return out.status();
    }
    for (std::size_t n = 0; n < f.computedText.size(); ++n) {
        out.put("computed." + std::to_string(n), f.computedText[n]);
        out.put("expected." + std::to_string(n), f.expectedText[n]);
    }
    out.put("expected-equals-alternating-series", f.alternatingMatches ? "yes" : "no");
    out.check(f.report);
    return out.status();
}

int cmdEulerAction(Emitter& out, const Options& o) {
    out.put("k", std::to_string(o.k));
    out.put("n", std::to_string(o.n));
    const EPolynomial series = eulerActionSeries(o.k, o.n, o.order);
    out.put("series", formatEPolynomial(series));
    for (const auto& [deg, c] : series) out.put("coefficient." + std::to_string(deg), c.str());
    return out.status();
}

int cmdEulerClass(Emitter& out, const Options& o) {
    Preset p;
    if (auto e = load(out, o, p)) return *e;
    const Representation* u = p.representation(o.rep);
    if (!u) {
        std::cerr << "error: preset has no representation '" << o.rep << "'\n";
        return kUsage;
    }
    out.put("rep", u->name);
    if (!u->S || !u->braid) {
        out.fail("check.data", "representation needs S and braid");
        return out.status();
    }
    const SigmaModel s(p.calculus);
    const EulerClassResult e = quantumEulerClass(s, *u, *u->S, *u->braid);
    out.put("exterior.dims", join(e.exteriorDims));
    out.put("top-degree", std::to_string(e.topDegree));
    if (e.ok) {
        out.put("determinant", p.hopf->format(e.determinant));
        out.put("euler.degree", std::to_string(e.eulerDegree));
        out.put("euler.class", formatSigma(s, e.eulerDegree, e.eulerClass));
    }
    out.check(e.report);
    return out.status();
}

int cmdOmegaCohomology(Emitter& out, const Options& o) {
    Preset p;
    if (auto e = load(out, o, p)) return *e;
    const int max = o.max.value_or(4);
    const OmegaSpace omega(p.calculus->dim());
    std::vector<std::size_t> dims;
    for (int k = 0; k <= max + 1; ++k) dims.push_back(omega.dim(k));
    out.put("omega.dims", join(dims));
    const auto h = omegaCohomology(omega, max);
    out.put("cohomology", join(h));
    const bool acyclic = h[0] == 1 && std::all_of(h.begin() + 1, h.end(), [](std::size_t x) { return x == 0; });
    if (acyclic) out.put("check.acyclic", "pass");
    else out.fail("check.acyclic", "H = " + join(h));
    return out.status();
}

int cmdKIdealCheck(Emitter& out, const Options& o) {
    Preset p;
    if (auto e = load(out, o, p)) return *e;
    if (!p.calculus->hasDelta()) {
        out.fail("check.delta", "preset has no embedded differential");
        return out.status();
    }
    const int max = o.max.value_or(3);
    const OmegaStar star(p.calculus);
    out.check(star.checkIdentities(max), "identities.");
    const KIdealResult k = kIdealCheck(star, max);
    out.put("omega.dims", join(k.omegaDims));
    out.put("ideal.dims", join(k.idealDims));
    out.put("quotient.dims", join(k.quotientDims));
    out.put("quotient.cohomology", join(k.quotientCohomology));
    const bool trivial = !k.quotientCohomology.empty() && k.quotientCohomology[0] == 1 &&
                         std::all_of(k.quotientCohomology.begin() + 1, k.quotientCohomology.end(), [](std::size_t x) { return x == 0; });
    out.put("quotient.cohomology-trivial", trivial ? "yes" : "no");
    out.check(k.report, "ideal.");
    return out.status();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact characteristic-class computations for compact matrix quantum groups"};
    app.require_subcommand(1);
    Options o;
    std::string format = "text";
    app.add_option("--preset", o.preset, "preset name or path (directory from QCHAR_PRESET_DIR)");
    app.add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--seed", o.seed, "seed for sampled checks");

    auto maxOpt = [&](CLI::App* s, const char* help) {
        s->add_option_function<int>("--max", [&](int v) { o.max = v; }, help)->check(CLI::PositiveNumber);
    };
    auto orderOpt = [&](CLI::App* s) { s->add_option("--order", o.order, "truncation order")->required()->check(CLI::NonNegativeNumber); };

    struct Entry {
        CLI::App* app;
        int (*run)(Emitter&, const Options&);
    };
    std::vector<Entry> commands;
    auto sub = [&](const char* name, const char* help, int (*run)(Emitter&, const Options&)) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        commands.push_back({s, run});
        return s;
    };

    auto* validate = sub("validate", "parse and validate a preset", cmdValidate);
    validate->add_option("preset", o.preset, "preset name or path");
    maxOpt(sub("exterior-dims", "dimensions of the braided exterior algebra and the envelope", cmdExteriorDims), "top degree");
    maxOpt(sub("group-cohomology", "invariant group cohomology", cmdGroupCohomology), "top degree");
    maxOpt(sub("daleth-cohomology", "cohomology of the universal characteristic classes", cmdDalethCohomology), "top degree");
    maxOpt(sub("sigma-relations", "quadratic relations, dimensions and centrality of Sigma", cmdSigmaRelations), "top degree");
    auto* chern = sub("chern", "Chern series of an ad-invariant element", cmdChern);
    chern->add_option("--element", o.element, "element of the Hopf algebra");
    chern->add_option("--samples", o.samples, "random invariant pairs for the series identities")->check(CLI::NonNegativeNumber);
    orderOpt(chern);
    auto* check = sub("chern-check-sumu2", "factorized Chern series of the fundamental character", cmdChernCheck);
    check->add_option("--rep", o.rep, "representation (default fundamental)");
    orderOpt(check);
    auto* euler = sub("euler-action", "Euler action series on e^k", cmdEulerAction);
    euler->add_option("--k", o.k, "power of e")->required()->check(CLI::NonNegativeNumber);
    euler->add_option("--n", o.n, "irreducible label")->required();
    orderOpt(euler);
    sub("euler-class", "quantum Euler class of a representation", cmdEulerClass)->add_option("--rep", o.rep, "representation")->required();
    maxOpt(sub("omega-cohomology", "cohomology of the free differential envelope", cmdOmegaCohomology), "top degree");
    maxOpt(sub("k-ideal-check", "regular quotient, its identities and cohomology", cmdKIdealCheck), "top degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    o.machine = format == "machine";
    if (chern->parsed() && o.element.empty() && o.samples == 0) {
        std::cerr << "error: chern needs --element or --samples\n";
        return kUsage;
    }
    for (const auto& c : commands)
        if (c.app->parsed()) {
            Emitter out(c.app->get_name(), o.machine);
            try {
                return c.run(out, o);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
    return kUsage;
}
