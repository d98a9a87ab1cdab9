#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spt {

// `key = value` lines; `#` starts a comment; blank lines ignored. Keys are
// unique. Used for both simulator and run configs.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::string_view text);
    static KeyValueConfig load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    // Comma-separated numbers; throws ValidationError on a bad entry.
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<std::string> get_list(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const noexcept { return values_; }
    // Throws ValidationError naming the first key not in `known`.
    void require_known(const std::vector<std::string>& known) const;

    // Raw text the config was parsed from (used for hashing).
    const std::string& source() const noexcept { return source_; }

private:
    std::map<std::string, std::string> values_;
    std::string source_;
};

// FNV-1a 64-bit, lowercase hex.
std::string fnv1a_hex(std::string_view data);

}  // namespace spt
