#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace drinlab {

std::string sha256_hex(const std::string& data);

// Content-addressed store: <dir>/<sha256 of request>.json holding the request,
// the result text and the result's own digest.  Entries whose digest does not
// match are treated as missing.  IO failures throw std::runtime_error.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::optional<std::string> load(const std::string& request) const;
    void store(const std::string& request, const std::string& result) const;
    std::filesystem::path entry_path(const std::string& request) const;

private:
    std::filesystem::path dir_;
};

}  // namespace drinlab
