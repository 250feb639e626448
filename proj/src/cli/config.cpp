#include "hybridcat/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace hybridcat::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError(field, "expected a number, got '" + text + "'");
    }
    if (used != t.size() || !std::isfinite(value)) throw ConfigError(field, "expected a number, got '" + text + "'");
    return value;
}

long long parse_integer(const std::string& field, const std::string& text) {
    const std::string t = trim(text);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(field, "expected an integer, got '" + text + "'");
    return value;
}

}  // namespace

std::vector<double> Sweep::values() const {
    if (steps == 1) return {start};
    std::vector<double> out;
    for (int i = 0; i < steps; ++i) out.push_back(start + (stop - start) * i / (steps - 1));
    return out;
}

Sweep parse_sweep(const std::string& field, const std::string& text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const auto colon = text.find(':', pos);
        parts.push_back(text.substr(pos, colon - pos));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts.size() == 1) {
        const double v = parse_real(field, parts[0]);
        return {v, v, 1};
    }
    if (parts.size() != 3) throw ConfigError(field, "sweep must be start:stop:steps, got '" + text + "'");
    const long long steps = parse_integer(field, parts[2]);
    if (steps < 1) throw ConfigError(field, "sweep steps must be >= 1, got " + std::to_string(steps));
    return {parse_real(field, parts[0]), parse_real(field, parts[1]), static_cast<int>(steps)};
}

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::Generate: return "generate";
        case Protocol::SwapDv: return "swap-dv";
        case Protocol::SwapCv: return "swap-cv";
        case Protocol::Teleport: return "teleport";
        case Protocol::Wigner: return "wigner";
    }
    return "?";
}

std::optional<Protocol> parse_protocol(std::string_view text) {
    for (auto p : {Protocol::Generate, Protocol::SwapDv, Protocol::SwapCv, Protocol::Teleport, Protocol::Wigner})
        if (to_string(p) == text) return p;
    return std::nullopt;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {"protocol", "alpha", "r",  "eta",      "variant", "model",       "ch",
                                                  "cv",       "resource", "seed", "out", "wigner-grid", "cutoff", "max-dim"};
    return keys;
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "protocol") {
        const auto p = parse_protocol(value);
        if (!p) throw ConfigError(key, "unknown protocol '" + value + "'");
        c.protocol = *p;
    } else if (key == "alpha") {
        c.alpha = parse_sweep(key, value);
    } else if (key == "r") {
        c.r = parse_sweep(key, value);
    } else if (key == "eta") {
        c.eta = parse_real(key, value);
    } else if (key == "variant") {
        c.variant = static_cast<int>(parse_integer(key, value));
    } else if (key == "model") {
        if (value == "projector")
            c.model = BsmModel::ProjectorBSM;
        else if (value == "physical")
            c.model = BsmModel::PhysicalStation;
        else
            throw ConfigError(key, "expected projector or physical, got '" + value + "'");
    } else if (key == "ch") {
        c.ch = parse_real(key, value);
    } else if (key == "cv") {
        c.cv = parse_real(key, value);
    } else if (key == "resource") {
        if (value == "ideal")
            c.resource = ResourceQuality::Kind::Ideal;
        else if (value == "generated")
            c.resource = ResourceQuality::Kind::Generated;
        else
            throw ConfigError(key, "expected ideal or generated, got '" + value + "'");
    } else if (key == "seed") {
        const long long s = parse_integer(key, value);
        if (s < 0) throw ConfigError(key, "seed must be non-negative");
        c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "out") {
        if (value.empty()) throw ConfigError(key, "output directory is empty");
        c.out = value;
    } else if (key == "wigner-grid") {
        c.wigner_grid = static_cast<int>(parse_integer(key, value));
    } else if (key == "cutoff") {
        c.cutoff = static_cast<int>(parse_integer(key, value));
    } else if (key == "max-dim") {
        const long long d = parse_integer(key, value);
        if (d < 1) throw ConfigError(key, "must be positive");
        c.max_dim = static_cast<std::size_t>(d);
    } else {
        throw ConfigError(key, "unknown setting");
    }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config", path + ":" + std::to_string(number) + ": expected key = value");
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        out.emplace_back(trim(line.substr(0, eq)), value);
    }
    return out;
}

void validate_config(const ExperimentConfig& c) {
    for (double a : c.alpha.values())
        if (!(a > 0.0)) throw ConfigError("alpha", "must be positive, got " + std::to_string(a));
    for (double r : c.r.values())
        if (!(r > 0.0 && r < 1.0)) throw ConfigError("r", "must lie in (0, 1), got " + std::to_string(r));
    if (!(c.eta > 0.0 && c.eta <= 1.0)) throw ConfigError("eta", "must lie in (0, 1], got " + std::to_string(c.eta));
    if (c.variant < 1 || c.variant > 4) throw ConfigError("variant", "must be 1..4, got " + std::to_string(c.variant));
    if (std::abs(c.ch * c.ch + c.cv * c.cv - 1.0) > 1e-9)
        throw ConfigError("ch", "ch^2 + cv^2 must equal 1");
    if (c.cutoff && *c.cutoff < 1) throw ConfigError("cutoff", "must be >= 1");
    if (c.wigner_grid && *c.wigner_grid < 2) throw ConfigError("wigner-grid", "needs at least 2 points per axis");
}

}  // namespace hybridcat::cli
