#include "fmcw/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "fmcw/errors.hpp"

namespace fmcw {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string at_line(const std::string& message, int line) {
    return message + " (line " + std::to_string(line) + ")";
}

double parse_double(const std::string& value, int line) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ParseError(at_line("expected a number, got \"" + value + "\"", line));
    return v;
}

std::uint64_t parse_u64(const std::string& value, int line) {
    char* end = nullptr;
    const std::uint64_t v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ParseError(at_line("expected an unsigned integer, got \"" + value + "\"", line));
    return v;
}

std::vector<double> parse_list(const std::string& value, int line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line));
    if (out.empty()) throw ParseError(at_line("expected a comma-separated list", line));
    return out;
}

const std::vector<std::string>& unit_suffixes() {
    static const std::vector<std::string> kSuffixes = {"_m",   "_cm",  "_mm", "_um", "_s",
                                                       "_ms",  "_hz",  "_deg", "_bpm", "_brpm"};
    return kSuffixes;
}

using Setter = std::function<void(ScenarioConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& schema() {
    static const std::map<std::string, Setter> kSchema = {
        {"scenario.experiment",
         [](ScenarioConfig& c, const std::string& v, int line) {
             if (v != "range" && v != "noise" && v != "displacement" && v != "vitals")
                 throw ParseError(at_line("unknown experiment \"" + v + "\"", line));
             c.experiment = v;
         }},
        {"scenario.seed",
         [](ScenarioConfig& c, const std::string& v, int line) { c.seed = parse_u64(v, line); }},
        {"scenario.profiles",
         [](ScenarioConfig& c, const std::string& v, int line) {
             std::stringstream ss(v);
             std::string item;
             while (std::getline(ss, item, ',')) {
                 const auto id = parse_profile_id(trim(item));
                 if (!id || *id == ProfileId::Custom)
                     throw ParseError(at_line("unknown profile \"" + trim(item) + "\"", line));
                 c.profiles.push_back(*id);
             }
             if (c.profiles.empty())
                 throw ParseError(at_line("expected at least one profile", line));
         }},
        {"scene.phantom",
         [](ScenarioConfig& c, const std::string& v, int line) {
             if (v == "metal")
                 c.phantom = PhantomKind::Metal;
             else if (v == "gelatin")
                 c.phantom = PhantomKind::Gelatin;
             else
                 throw ParseError(at_line("unknown phantom \"" + v + "\"", line));
         }},
        {"scene.angle_deg",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.angle_deg = parse_double(v, line);
         }},
        {"scene.base_range_cm",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.base_range_m = parse_double(v, line) * 1e-2;
         }},
        {"scene.duration_s",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.duration_s = parse_double(v, line);
         }},
        {"noise.if_noise_sigma",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.if_noise_sigma = parse_double(v, line);
         }},
        {"noise.dc_offset",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.dc_offset = parse_double(v, line);
         }},
        {"noise.calibrate_target_mm",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.calibrate_target_m = parse_double(v, line) * 1e-3;
         }},
        {"range.distances_cm",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.distances_m.clear();
             for (double d : parse_list(v, line)) c.distances_m.push_back(d * 1e-2);
         }},
        {"displacement.amplitudes_mm",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.amplitudes_m.clear();
             for (double a : parse_list(v, line)) c.amplitudes_m.push_back(a * 1e-3);
         }},
        {"motion.amplitude_mm",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.motion_amplitude_m = parse_double(v, line) * 1e-3;
         }},
        {"motion.frequency_hz",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.motion_freq_hz = parse_double(v, line);
         }},
        {"motion.quantization_um",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.quantization_step_m = parse_double(v, line) * 1e-6;
         }},
        {"vitals.chest",
         [](ScenarioConfig& c, const std::string& v, int line) {
             if (v != "true" && v != "false")
                 throw ParseError(at_line("expected true or false", line));
             c.chest_scene = v == "true";
         }},
        {"vitals.hr_bpm",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.chest.hr_hz = parse_double(v, line) / 60.0;
         }},
        {"vitals.rr_brpm",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.chest.rr_hz = parse_double(v, line) / 60.0;
         }},
        {"vitals.heart_amplitude_mm",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.chest.heart_amplitude_m = parse_double(v, line) * 1e-3;
         }},
        {"vitals.breath_amplitude_mm",
         [](ScenarioConfig& c, const std::string& v, int line) {
             c.chest.breath_amplitude_m = parse_double(v, line) * 1e-3;
         }},
        {"vitals.harmonic_order",
         [](ScenarioConfig& c, const std::string& v, int line) {
             if (c.chest.breath_harmonics.empty()) c.chest.breath_harmonics.resize(1);
             c.chest.breath_harmonics[0].order = static_cast<int>(parse_u64(v, line));
         }},
        {"vitals.harmonic_relative_amplitude",
         [](ScenarioConfig& c, const std::string& v, int line) {
             if (c.chest.breath_harmonics.empty()) c.chest.breath_harmonics.resize(1);
             c.chest.breath_harmonics[0].relative_amplitude = parse_double(v, line);
         }},
    };
    return kSchema;
}

/// An unknown key that would be valid with a unit suffix appended is a
/// unit violation, not a typo.
bool is_missing_unit(const std::string& qualified) {
    for (const auto& [key, setter] : schema()) {
        (void)setter;
        for (const auto& suffix : unit_suffixes()) {
            if (key.size() == qualified.size() + suffix.size() &&
                key.compare(0, qualified.size(), qualified) == 0 &&
                key.compare(qualified.size(), suffix.size(), suffix) == 0)
                return true;
        }
    }
    return false;
}

}  // namespace

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path);

    ScenarioConfig config;
    std::string section;
    std::string line;
    int line_no = 0;
    bool any_key = false;

    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(at_line("unterminated section header", line_no));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ParseError(at_line("empty section name", line_no));
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(at_line("expected key = value", line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(at_line("empty key", line_no));
        if (section.empty()) throw ParseError(at_line("key before any [section]", line_no));

        const std::string qualified = section + "." + key;
        const auto it = schema().find(qualified);
        if (it == schema().end()) {
            if (is_missing_unit(qualified))
                throw UnitViolation(at_line("key \"" + key + "\" needs a unit suffix", line_no));
            throw UnknownKey(at_line("unknown key \"" + qualified + "\"", line_no));
        }
        it->second(config, value, line_no);
        any_key = true;
    }

    if (!any_key) throw ParseError("scenario file declares nothing: " + path);
    if (config.profiles.empty())
        throw ParseError("scenario must set scenario.profiles: " + path);
    return config;
}

}  // namespace fmcw
