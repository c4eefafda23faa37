#include "sturmian/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace sturmian {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_number(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config field \"" + key + "\": cannot parse number \"" + value + "\"");
    }
    if (pos != value.size())
        throw ConfigError("config field \"" + key + "\": trailing characters in \"" + value + "\"");
    return v;
}

} // namespace

ModelSpec parse_model_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected \"key = value\"");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key)) throw ConfigError("config field \"" + key + "\" given twice");
        kv[key] = value;
    }

    auto take = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw ConfigError("config field \"" + key + "\" is missing");
        const std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_number = [&](const std::string& key) { return to_number(key, take(key)); };
    auto take_number_or = [&](const std::string& key, double dflt) {
        return kv.count(key) ? to_number(key, take(key)) : dflt;
    };

    ModelSpec spec;
    try {
        spec.kind = model_kind_from_string(take("model"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config field \"model\": ") + e.what());
    }
    spec.varied = take("varied");
    spec.theta_p = take_number("theta_p");
    spec.theta_q = take_number("theta_q");

    switch (spec.kind) {
        case ModelKind::Chain:
            spec.chain.m = spec.varied == "m" ? take_number_or("m", 1.0) : take_number("m");
            spec.chain.K = spec.varied == "K" ? take_number_or("K", 1.0) : take_number("K");
            break;
        case ModelKind::Rod:
            spec.rod.EA = spec.varied == "EA" ? take_number_or("EA", 1.0) : take_number("EA");
            spec.rod.rhoA = spec.varied == "rhoA" ? take_number_or("rhoA", 1.0) : take_number("rhoA");
            spec.rod.l = spec.varied == "l" ? take_number_or("l", 1.0) : take_number("l");
            break;
        case ModelKind::Beam:
        case ModelKind::BeamOnSupports:
            spec.beam.EI = spec.varied == "EI" ? take_number_or("EI", 1.0) : take_number("EI");
            spec.beam.GA = spec.varied == "GA" ? take_number_or("GA", 1.0) : take_number("GA");
            spec.beam.rhoA = spec.varied == "rhoA" ? take_number_or("rhoA", 1.0) : take_number("rhoA");
            spec.beam.rhoI = spec.varied == "rhoI" ? take_number_or("rhoI", 1.0) : take_number("rhoI");
            spec.beam.l = spec.varied == "l" ? take_number_or("l", 1.0) : take_number("l");
            if (spec.kind == ModelKind::BeamOnSupports)
                spec.support_stiffness =
                    spec.varied == "K" ? take_number_or("K", 0.0) : take_number("K");
            break;
    }

    if (!kv.empty()) throw ConfigError("config field \"" + kv.begin()->first + "\" is not recognised");

    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

ModelSpec load_model_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_config(buf.str());
}

} // namespace sturmian
