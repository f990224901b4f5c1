#include "wpvol/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>

namespace wpvol {

namespace {

std::string checksum_hex(const std::string& data) {
    // FNV-1a 64.
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_name(const CacheKey& key) {
    return key.kind + "_g" + std::to_string(key.g) + "_n" + std::to_string(key.n) + "_p" +
           std::to_string(key.p) + (key.basis.empty() ? "" : "_" + key.basis) + "_v" +
           std::to_string(kCacheFormatVersion) + ".json";
}

}  // namespace

std::filesystem::path cache_dir() {
    if (const char* env = std::getenv("WP_CACHE_DIR")) return std::filesystem::path(env);
    if (const char* home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "wpvol";
    return std::filesystem::path(".wpvol-cache");
}

std::optional<nlohmann::json> cache_load(const CacheKey& key) {
    std::filesystem::path path = cache_dir() / file_name(key);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json wrapper;
    try {
        in >> wrapper;
        if (wrapper.value("format_version", -1) != kCacheFormatVersion) return std::nullopt;
        std::string payload = wrapper.at("payload").get<std::string>();
        if (wrapper.value("checksum", std::string()) != checksum_hex(payload))
            return std::nullopt;
        return nlohmann::json::parse(payload);
    } catch (const std::exception&) {
        return std::nullopt;  // corrupt entries are treated as misses
    }
}

void cache_store(const CacheKey& key, const nlohmann::json& payload) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir(), ec);
    if (ec) return;
    std::string data = payload.dump();
    nlohmann::json wrapper{
        {"format_version", kCacheFormatVersion},
        {"kind", key.kind},
        {"g", key.g},
        {"n", key.n},
        {"p", key.p},
        {"basis", key.basis},
        {"checksum", checksum_hex(data)},
        {"payload", data},
    };
    std::filesystem::path path = cache_dir() / file_name(key);
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << wrapper.dump();
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace wpvol
