#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "wpvol/cache.hpp"
#include "wpvol/json_io.hpp"
#include "wpvol/kernel_recursion.hpp"
#include "wpvol/n_recursion.hpp"
#include "wpvol/render.hpp"
#include "wpvol/residue_recursion.hpp"

using namespace wpvol;
using nlohmann::json;

TEST_CASE("volume rendering golden strings") {
    CHECK(render_volume(wp_volume(1, 1), OutputFormat::Latex) ==
          "\\frac{L_1^2}{48} + \\frac{\\pi^2}{12}");
    CHECK(render_volume(wp_volume(0, 3), OutputFormat::Table) == "1");
    CHECK(render_volume(wp_volume(0, 3), OutputFormat::Latex) == "1");
}

TEST_CASE("moments basis rendering factors the invM0 prefactor") {
    std::string s = render_volume(tight_in_moments(0, 4), OutputFormat::Table);
    CHECK(s == "invM0^2 * (1/2*b1 + 1/2*b2 + 1/2*b3 + 1/2*b4 - m1)");
    std::string latex = render_volume(tight_in_moments(0, 4), OutputFormat::Latex);
    CHECK(latex ==
          "\\frac{1}{M_0^{2}}\\left(\\frac{L_1^2}{2} + \\frac{L_2^2}{2} + \\frac{L_3^2}{2} + "
          "\\frac{L_4^2}{2} - m_1\\right)");
}

TEST_CASE("volume json round-trip") {
    for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 4}, {1, 2}, {2, 1}}) {
        VolumePoly v = tight_volume(g, n);
        json j = volume_poly_to_json(v);
        VolumePoly back = volume_poly_from_json(j);
        CHECK(back.g == v.g);
        CHECK(back.n == v.n);
        CHECK(back.poly == v.poly);
        CHECK(volume_poly_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("correlator json round-trip") {
    const CorrelatorLaurent& w = omega(1, 2);
    json j = correlator_to_json(w);
    CorrelatorLaurent back = correlator_from_json(j);
    CHECK(back == w);
}

TEST_CASE("weight json parsing and diagnostics") {
    json good = json::parse(R"({
      "atoms": [
        {"kind": "geodesic", "length": 1.0, "angle": null, "weight": 0.05},
        {"kind": "cone", "length": null, "angle": 2.0, "weight": 0.01},
        {"kind": "cusp", "length": null, "angle": null, "weight": 0.001}
      ],
      "fzzt": null,
      "mode": "numeric"
    })");
    Weight w = weight_from_json(good);
    CHECK(w.atoms.size() == 3);
    CHECK(!w.formal);
    CHECK(weight_from_json(weight_to_json(w)).atoms.size() == 3);

    json bad = good;
    bad["atoms"][1]["angle"] = 3.5;  // blunt cone: out of range
    try {
        weight_from_json(bad);
        FAIL("expected WeightParseError");
    } catch (const WeightParseError& e) {
        CHECK(e.pointer == "/atoms/1/angle");
    }

    json formal = json::parse(R"({"atoms":[{"kind":"cusp","weight":1.0}],"mode":{"formal":5}})");
    Weight wf = weight_from_json(formal);
    CHECK(wf.formal);
    CHECK(wf.formal_order == 5);
}

TEST_CASE("cache round-trip and corruption handling") {
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "wpvol-cache-test";
    std::filesystem::remove_all(dir);
    setenv("WP_CACHE_DIR", dir.c_str(), 1);

    CacheKey key{"V", 1, 2, 0, "wp"};
    CHECK(!cache_load(key).has_value());
    json payload = volume_poly_to_json(wp_volume(1, 2));
    cache_store(key, payload);
    auto hit = cache_load(key);
    REQUIRE(hit.has_value());
    CHECK(hit->dump() == payload.dump());

    // Corrupt the file: the checksum must reject it.
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::ofstream out(entry.path());
        out << "{\"format_version\":1,\"checksum\":\"0\",\"payload\":\"[]\"}";
    }
    CHECK(!cache_load(key).has_value());
    unsetenv("WP_CACHE_DIR");
    std::filesystem::remove_all(dir);
}

TEST_CASE("intersection table export") {
    psi_intersection(2, {4});
    json j = intersection_table_to_json();
    bool found = false;
    for (const auto& row : j)
        if (row.at("g") == 2 && row.at("d") == json::array({4})) {
            CHECK(row.at("value") == "1/1152");
            found = true;
        }
    CHECK(found);
}
