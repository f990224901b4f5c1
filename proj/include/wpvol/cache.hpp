#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

namespace wpvol {

/// On-disk memoization of exact results. Entries are keyed by
/// (kind, g, n, p, basis) plus a format version; payloads are canonical JSON,
/// so hits are byte-identical to recomputation. Writes are atomic
/// (temp file + rename). Entries with a different format version are ignored.
struct CacheKey {
    std::string kind;  // V | T | P | omega | Tgnp | Hp | intersection
    int g = 0;
    int n = 0;
    int p = 0;
    std::string basis;
};

inline constexpr int kCacheFormatVersion = 1;

/// WP_CACHE_DIR if set, else <home>/.cache/wpvol (or ./.wpvol-cache without
/// a home directory).
std::filesystem::path cache_dir();

std::optional<nlohmann::json> cache_load(const CacheKey& key);
void cache_store(const CacheKey& key, const nlohmann::json& payload);

}  // namespace wpvol
