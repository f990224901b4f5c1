#include "wpvol/extract_tight.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "wpvol/kernel_recursion.hpp"

namespace wpvol {

namespace {

std::recursive_mutex g_mutex;
std::map<int, MPoly> g_h_memo;
std::map<std::tuple<int, int, int>, MPoly> g_t_memo;

// Relabels slots 1..k of `p` onto `targets` (simultaneous).
MPoly relabel_slots(const MPoly& p, const std::vector<uint32_t>& targets) {
    std::map<uint32_t, uint32_t> slot_map;
    for (size_t t = 0; t < targets.size(); ++t)
        slot_map.emplace(static_cast<uint32_t>(t + 1), targets[t]);
    return relabel_boundaries(p, slot_map);
}

// integral_0^{L_to} K dK applied to the shared slot `kvar`, evaluated at the
// upper limit b_to.
MPoly glue_integral(const MPoly& p, uint32_t kvar, uint32_t to) {
    MPoly integrated = integrate_even(p, kvar);
    return relabel_boundaries(integrated, {{kvar, to}});
}

// All ways to distribute labels {first..last} into `bins` ordered bins.
void distributions(uint32_t first, uint32_t last, int bins,
                   std::vector<std::vector<std::vector<uint32_t>>>& out) {
    std::vector<std::vector<uint32_t>> cur(bins);
    std::function<void(uint32_t)> rec = [&](uint32_t label) {
        if (label > last) {
            out.push_back(cur);
            return;
        }
        for (int b = 0; b < bins; ++b) {
            cur[b].push_back(label);
            rec(label + 1);
            cur[b].pop_back();
        }
    };
    rec(first);
}

MPoly compute_h(int p) {
    // H_p = V_{0,2+p} - sum over proper splits of the defect labels of
    //       \int_0^{L_2} H_{|I1|}(L_1,K,L_{I1}) H_{|I2|}(L_2,K,L_{I2}) K dK
    MPoly acc = wp_volume(0, 2 + p).poly;
    const uint32_t kvar = static_cast<uint32_t>(2 + p + 1);
    if (p >= 2) {
        unsigned full = (1u << p) - 1u;
        for (unsigned mask = 1; mask < full; ++mask) {
            std::vector<uint32_t> i1{1, kvar}, i2{2, kvar};
            for (int t = 0; t < p; ++t)
                ((mask >> t) & 1u ? i1 : i2).push_back(static_cast<uint32_t>(t + 3));
            MPoly a = relabel_slots(half_tight_volume(static_cast<int>(i1.size()) - 2), i1);
            MPoly b = relabel_slots(half_tight_volume(static_cast<int>(i2.size()) - 2), i2);
            acc -= glue_integral(a * b, kvar, 2);
        }
    }
    return acc;
}

MPoly compute_t(int g, int n, int p) {
    // T_{g,n,p} = V_{g,n+p} - sum over distributions with |I_0| < p of
    //   \int T_{g,n,|I_0|}(K, L_{I0}) prod_{I_i != empty} H_{|I_i|}(L_i, K_i, L_{I_i}) K_i dK_i
    MPoly acc = wp_volume(g, n + p).poly;
    std::vector<std::vector<std::vector<uint32_t>>> dists;
    distributions(static_cast<uint32_t>(n + 1), static_cast<uint32_t>(n + p), n + 1, dists);
    for (const auto& dist : dists) {
        const auto& i0 = dist[0];
        if (static_cast<int>(i0.size()) == p) continue;  // the unknown itself
        // Tight factor: slots 1..n onto K_i (or L_i when I_i is empty),
        // defect slots onto I_0.
        std::vector<uint32_t> t_targets;
        for (int i = 1; i <= n; ++i) {
            bool glued = !dist[i].empty();
            t_targets.push_back(glued ? static_cast<uint32_t>(n + p + i)
                                      : static_cast<uint32_t>(i));
        }
        for (uint32_t lbl : i0) t_targets.push_back(lbl);
        MPoly term = relabel_slots(tight_volume_defects(g, n, static_cast<int>(i0.size())),
                                   t_targets);
        for (int i = 1; i <= n; ++i) {
            if (dist[i].empty()) continue;
            uint32_t kvar = static_cast<uint32_t>(n + p + i);
            std::vector<uint32_t> h_targets{static_cast<uint32_t>(i), kvar};
            for (uint32_t lbl : dist[i]) h_targets.push_back(lbl);
            MPoly h = relabel_slots(half_tight_volume(static_cast<int>(dist[i].size())),
                                    h_targets);
            term = glue_integral(term * h, kvar, static_cast<uint32_t>(i));
        }
        acc -= term;
    }
    return acc;
}

}  // namespace

const MPoly& half_tight_volume(int p) {
    if (p < 1) throw std::domain_error("half_tight_volume: p >= 1 required");
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    auto it = g_h_memo.find(p);
    if (it == g_h_memo.end()) it = g_h_memo.emplace(p, compute_h(p)).first;
    return it->second;
}

const MPoly& tight_volume_defects(int g, int n, int p) {
    if (g < 0 || n < 0 || p < 0) throw std::domain_error("tight_volume_defects: bad indices");
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    auto it = g_t_memo.find({g, n, p});
    if (it != g_t_memo.end()) return it->second;
    MPoly value;
    if (g == 0 && (n == 1 || n == 2)) {
        value = MPoly();  // tight cylinders and disks are empty
    } else if (p == 0) {
        value = wp_volume(g, n).poly;
    } else {
        if (2 * g - 2 + n <= 0) throw std::domain_error("tight_volume_defects: unstable core");
        value = compute_t(g, n, p);
    }
    return g_t_memo.emplace(std::make_tuple(g, n, p), std::move(value)).first->second;
}

MPoly reglue_volume(int g, int n, int p) {
    MPoly acc;
    std::vector<std::vector<std::vector<uint32_t>>> dists;
    distributions(static_cast<uint32_t>(n + 1), static_cast<uint32_t>(n + p), n + 1, dists);
    for (const auto& dist : dists) {
        const auto& i0 = dist[0];
        std::vector<uint32_t> t_targets;
        for (int i = 1; i <= n; ++i)
            t_targets.push_back(dist[i].empty() ? static_cast<uint32_t>(i)
                                                : static_cast<uint32_t>(n + p + i));
        for (uint32_t lbl : i0) t_targets.push_back(lbl);
        MPoly term = relabel_slots(tight_volume_defects(g, n, static_cast<int>(i0.size())),
                                   t_targets);
        for (int i = 1; i <= n; ++i) {
            if (dist[i].empty()) continue;
            uint32_t kvar = static_cast<uint32_t>(n + p + i);
            std::vector<uint32_t> h_targets{static_cast<uint32_t>(i), kvar};
            for (uint32_t lbl : dist[i]) h_targets.push_back(lbl);
            MPoly h = relabel_slots(half_tight_volume(static_cast<int>(dist[i].size())),
                                    h_targets);
            term = glue_integral(term * h, kvar, static_cast<uint32_t>(i));
        }
        acc += term;
    }
    return acc;
}

MPoly reglue_cylinder(int p) {
    MPoly acc = half_tight_volume(p);
    const uint32_t kvar = static_cast<uint32_t>(2 + p + 1);
    if (p >= 2) {
        unsigned full = (1u << p) - 1u;
        for (unsigned mask = 1; mask < full; ++mask) {
            std::vector<uint32_t> i1{1, kvar}, i2{2, kvar};
            for (int t = 0; t < p; ++t)
                ((mask >> t) & 1u ? i1 : i2).push_back(static_cast<uint32_t>(t + 3));
            MPoly a = relabel_slots(half_tight_volume(static_cast<int>(i1.size()) - 2), i1);
            MPoly b = relabel_slots(half_tight_volume(static_cast<int>(i2.size()) - 2), i2);
            acc += glue_integral(a * b, kvar, 2);
        }
    }
    return acc;
}

void clear_extract_tight_memo() {
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    g_h_memo.clear();
    g_t_memo.clear();
}

}  // namespace wpvol
