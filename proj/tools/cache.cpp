#include "cache.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace drinlab {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

fs::path ResultCache::entry_path(const std::string& request) const { return dir_ / (sha256_hex(request) + ".json"); }

std::optional<std::string> ResultCache::load(const std::string& request) const {
    fs::path p = entry_path(request);
    std::error_code ec;
    if (!fs::exists(p, ec)) {
        if (ec) throw std::runtime_error("cannot stat " + p.string() + ": " + ec.message());
        return std::nullopt;
    }
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("result") || !j.contains("sha256") ||
        !j.contains("request") || !j["result"].is_string())
        return std::nullopt;
    if (j["request"] != request) return std::nullopt;
    std::string result = j["result"].get<std::string>();
    if (j["sha256"] != sha256_hex(result)) return std::nullopt;
    return result;
}

void ResultCache::store(const std::string& request, const std::string& result) const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create " + dir_.string() + ": " + ec.message());
    nlohmann::json j = {{"request", request}, {"result", result}, {"sha256", sha256_hex(result)}};
    fs::path p = entry_path(request);
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << j.dump();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, p, ec);
    if (ec) throw std::runtime_error("cannot move cache entry into place: " + ec.message());
}

}  // namespace drinlab
