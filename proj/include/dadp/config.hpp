// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

namespace dadp {

/// Plain-text configuration: `key = value` lines grouped under `[section]`
/// headers. Keys are addressed as "section.key"; lines before any header use
/// the bare key. '#' starts a comment.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<std::string> get_string_list(
        const std::string& key, const std::vector<std::string>& fallback) const;

    void set(const std::string& key, const std::string& value);

    const std::map<std::string, std::string>& entries() const { return kv_; }

private:
    std::map<std::string, std::string> kv_;
};

} // namespace dadp
