// SPDX-License-Identifier: Apache-2.0
#include "dadp/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dadp {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: malformed line: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!section.empty()) key = section + "." + key;
        cfg.kv_[key] = val;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_string(ss.str());
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stod(it->second);
}

long long Config::get_int(const std::string& key, long long fallback) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stoll(it->second);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const std::string& v = it->second;
    return v == "1" || v == "true" || v == "yes" || v == "on";
}

std::vector<double> Config::get_double_list(
    const std::string& key, const std::vector<double>& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<double> out;
    for (const auto& s : split(it->second, ',')) out.push_back(std::stod(s));
    return out;
}

std::vector<std::string> Config::get_string_list(
    const std::string& key, const std::vector<std::string>& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    return split(it->second, ',');
}

void Config::set(const std::string& key, const std::string& value) {
    kv_[key] = value;
}

} // namespace dadp
