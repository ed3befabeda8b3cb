#include "doctest.h"
#include "qchar/presets.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qchar;

namespace {

std::string readPreset(const std::string& name) {
    std::ifstream in(resolvePreset(name));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string replaceLine(std::string text, const std::string& prefix, const std::string& line) {
    const auto at = text.find("\n" + prefix);
    REQUIRE(at != std::string::npos);
    const auto end = text.find('\n', at + 1);
    return text.replace(at + 1, end - at - 1, line);
}

}  // namespace

TEST_CASE("shipped presets load and validate") {
    const Preset u1 = loadPreset("u1");
    CHECK(u1.calculus->dim() == 1);
    CHECK(u1.parameters == std::vector<std::string>{"lambda"});
    CHECK(u1.maxDegree == 6);
    // pi kills the generator of the right ideal
    CHECK(u1.calculus->pi(u1.hopf->parse("v + u/lambda - (1 + 1/lambda)")).isZero());
    CHECK(u1.representation("pair") != nullptr);
    CHECK(u1.representation("pair")->braid.has_value());

    const Preset s = loadPreset("sumu2-4d");
    CHECK(s.calculus->dim() == 4);
    CHECK(s.calculus->tables().basis == std::vector<std::string>{"tau", "e3", "ep", "em"});
    CHECK(s.calculus->hasDelta());
    CHECK(s.representation("fundamental")->S.has_value());
}

TEST_CASE("round trip through the canonical text") {
    for (const char* name : {"u1", "sumu2-4d"}) {
        const Preset p = parsePreset(readPreset(name));
        const std::string once = serializePreset(p);
        const Preset q = parsePreset(once);
        CHECK(serializePreset(q) == once);
        const auto& a = p.calculus->tables();
        const auto& b = q.calculus->tables();
        CHECK(a.basis == b.basis);
        CHECK(a.piOfGenerator == b.piOfGenerator);
        for (std::size_t g = 0; g < a.circOfGenerator.size(); ++g) CHECK(a.circOfGenerator[g] == b.circOfGenerator[g]);
        CHECK(a.representatives == b.representatives);
        CHECK(a.idealGenerators == b.idealGenerators);
        CHECK(*a.delta == *b.delta);
        CHECK(p.hopf->presentation().rules.size() == q.hopf->presentation().rules.size());
        CHECK(p.representations.size() == q.representations.size());
    }
}

TEST_CASE("corrupted presets are rejected with the failing check named") {
    const std::string base = readPreset("sumu2-4d");
    SUBCASE("broken counit") {
        const Preset p = parsePreset(replaceLine(base, "counit G", "counit G = 1"));
        const Report r = validatePreset(p);
        CHECK(r.failed("counit-law"));
    }
    SUBCASE("broken circ module law") {
        const std::string u1 = readPreset("u1");
        const Preset p = parsePreset(replaceLine(u1, "circ u", "circ u = lambda^2"));
        const Report r = validatePreset(p);
        CHECK(r.failed("circ-module-law"));
    }
    SUBCASE("representation that is not a corepresentation") {
        const Preset p = parsePreset(replaceLine(base, "rep fundamental", "rep fundamental = a, G; g, A"));
        CHECK(validatePreset(p).failed("fundamental.representation-coproduct"));
    }
}

TEST_CASE("parse errors") {
    const std::string base = readPreset("u1");
    CHECK_THROWS_AS(parsePreset(base + "\n[options]\ncolour = blue\n"), PresetError);
    CHECK_THROWS_AS(parsePreset(base + "\n[extras]\n"), PresetError);
    CHECK_THROWS_AS(parsePreset(replaceLine(base, "pi u", "pi u = 1, 2")), PresetError);
    CHECK_THROWS_AS(parsePreset(replaceLine(base, "coproduct u", "coproduct w = [u (x) u]")), PresetError);
    try {
        parsePreset(base + "\n[options]\ncolour = blue\n");
    } catch (const PresetError& e) {
        CHECK(e.kind == PresetError::Kind::Parse);
        CHECK(std::string(e.what()).find("colour") != std::string::npos);
    }
    try {
        loadPreset("no-such-preset");
        CHECK(false);
    } catch (const PresetError& e) {
        CHECK(e.kind == PresetError::Kind::NotFound);
    }
}

TEST_CASE("preset directory from the environment") {
    const auto dir = std::filesystem::temp_directory_path() / "qchar-preset-test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "copy.preset");
        out << readPreset("u1");
    }
    const char* old = std::getenv("QCHAR_PRESET_DIR");
    const std::string saved = old ? old : "";
    setenv("QCHAR_PRESET_DIR", dir.c_str(), 1);
    CHECK(presetDirectory() == dir.string());
    CHECK(loadPreset("copy").calculus->dim() == 1);
    if (old) setenv("QCHAR_PRESET_DIR", saved.c_str(), 1);
    else unsetenv("QCHAR_PRESET_DIR");
    std::filesystem::remove_all(dir);
}
