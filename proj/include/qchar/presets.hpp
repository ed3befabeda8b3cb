#pragma once

#include "qchar/calculus.hpp"
#include "qchar/classes.hpp"
#include "qchar/exterior.hpp"
#include "qchar/hopf.hpp"
#include "qchar/report.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qchar {

// A quantum group, its first-order calculus and a few representations, as read
// from a preset document.
struct Preset {
    std::string name;
    std::string source;  // file path or "<string>"
    std::shared_ptr<const HopfAlgebra> hopf;
    std::shared_ptr<const Calculus> calculus;
    std::vector<Representation> representations;
    CalculusKind kind = CalculusKind::Wedge;
    int maxDegree = 4;
    int validateDegree = 3;
    std::vector<std::string> parameters;

    const Representation* representation(const std::string& name) const;
};

class PresetError : public std::runtime_error {
public:
    enum class Kind { NotFound, Parse, Validation };
    PresetError(Kind k, const std::string& what, Report r = {}) : std::runtime_error(what), kind(k), report(std::move(r)) {}
    Kind kind;
    Report report;
};

// Parses and builds the algebraic objects; no validation. Throws PresetError (Parse).
Preset parsePreset(const std::string& text, const std::string& source = "<string>");
// Hopf, calculus and representation validators.
Report validatePreset(const Preset& p, std::uint64_t seed = 1);
// Canonical text; parsePreset(serializePreset(p)) describes the same data.
std::string serializePreset(const Preset& p);

// Directory searched for "<name>.preset": $QCHAR_PRESET_DIR, else the build-time default.
std::string presetDirectory();
// A path (anything containing '/' or ending in ".preset") or a preset name.
std::string resolvePreset(const std::string& ref);
// Resolve, parse and validate. Throws PresetError.
Preset loadPreset(const std::string& ref, std::uint64_t seed = 1);

}  // namespace qchar
