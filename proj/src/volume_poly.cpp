#include "wpvol/volume_poly.hpp"

#include <stdexcept>

namespace wpvol {

std::string basis_name(Basis b) {
    switch (b) {
        case Basis::Beta: return "beta";
        case Basis::Moments: return "moments";
        case Basis::WP: return "wp";
    }
    return "?";
}

std::vector<MPoly> eta0_coefficients(int max_p) {
    // M_p[0]/(2p+1)!! = (-4 pi^2)^p / (2p+1)!
    std::vector<MPoly> out;
    out.reserve(max_p + 1);
    for (int p = 0; p <= max_p; ++p) {
        Rat c = rat_pow(Rat(-4), p) / factorial(2 * p + 1);
        out.push_back(MPoly::variable(sym_q(), p).scaled(c));
    }
    return out;
}

std::vector<MPoly> beta_mu0_table(int max_m) {
    TruncSeries eta("u", max_m);
    auto coeffs = eta0_coefficients(max_m);
    for (int p = 0; p <= max_m; ++p) eta.set_coeff(p, coeffs[p]);
    TruncSeries rec = series_recip(eta);
    std::vector<MPoly> out;
    out.reserve(max_m + 1);
    for (int m = 0; m <= max_m; ++m) out.push_back(rec.coeff(m));
    return out;
}

std::vector<MPoly> beta_small_m_table(int max_m) {
    TruncSeries eta("u", max_m);
    eta.set_coeff(0, MPoly(Rat(1)));
    for (int p = 1; p <= max_m; ++p)
        eta.set_coeff(p, MPoly::variable(sym_m(p)).scaled(Rat(1) / double_factorial(2 * p + 1)));
    TruncSeries rec = series_recip(eta);
    MPoly inv = MPoly::variable(sym_invM0());
    std::vector<MPoly> out;
    out.reserve(max_m + 1);
    for (int m = 0; m <= max_m; ++m) out.push_back(inv * rec.coeff(m));
    return out;
}

MPoly specialize_moments_to_wp(const MPoly& p) {
    std::map<Symbol, MPoly> assign;
    assign.emplace(sym_invM0(), MPoly(Rat(1)));
    int top = p.max_index_of_kind(SymKind::SmallM);
    for (int k = 1; k <= top; ++k) {
        Rat c = rat_pow(Rat(-2), k) / factorial(k);
        assign.emplace(sym_m(k), MPoly::variable(sym_q(), k).scaled(c));
    }
    return subst(p, assign);
}

VolumePoly convert_basis(const VolumePoly& v, Basis target) {
    if (v.basis == target) return v;
    VolumePoly out{v.g, v.n, target, MPoly()};
    if (v.basis == Basis::Beta) {
        int top = v.poly.max_index_of_kind(SymKind::Beta);
        auto table = target == Basis::WP ? beta_mu0_table(std::max(top, 0))
                                         : beta_small_m_table(std::max(top, 0));
        std::map<Symbol, MPoly> assign;
        for (int m = 0; m <= top; ++m) assign.emplace(sym_beta(m), table[m]);
        out.poly = subst(v.poly, assign);
        return out;
    }
    if (v.basis == Basis::Moments && target == Basis::WP) {
        out.poly = specialize_moments_to_wp(v.poly);
        return out;
    }
    throw std::invalid_argument("unsupported basis conversion " + basis_name(v.basis) +
                                " -> " + basis_name(target));
}

bool symmetric_in_boundaries(const MPoly& p, int n) {
    for (int i = 1; i < n; ++i) {
        std::map<uint32_t, uint32_t> swap_ids{
            {sym_b(i).id(), sym_b(i + 1).id()},
            {sym_b(i + 1).id(), sym_b(i).id()},
        };
        if (rename_symbols(p, swap_ids) != p) return false;
    }
    return true;
}

bool sigma_homogeneous(const MPoly& p, int expected_degree) {
    for (const auto& [mono, c] : p.terms) {
        long w = 0;
        for (const auto& [sid, e] : mono) {
            Symbol s = symbol_from_id(sid);
            if (s.kind == SymKind::B) w += e;
            if (s.kind == SymKind::SmallM) w += static_cast<long>(s.index) * e;
        }
        if (w != expected_degree) return false;
    }
    return true;
}

std::map<std::pair<uint32_t, uint32_t>, MPoly> coefficients_in2(const MPoly& p, Symbol x,
                                                                Symbol y) {
    std::map<std::pair<uint32_t, uint32_t>, MPoly> out;
    uint32_t idx = x.id(), idy = y.id();
    for (const auto& [mono, c] : p.terms) {
        uint32_t kx = 0, ky = 0;
        Monomial rest;
        rest.reserve(mono.size());
        for (const auto& [sid, e] : mono) {
            if (sid == idx)
                kx = e;
            else if (sid == idy)
                ky = e;
            else
                rest.emplace_back(sid, e);
        }
        out[{kx, ky}].add_term(std::move(rest), c);
    }
    return out;
}

MPoly relabel_boundaries(const MPoly& p, const std::map<uint32_t, uint32_t>& slot_map) {
    std::map<uint32_t, uint32_t> idmap;
    for (const auto& [from, to] : slot_map) idmap.emplace(sym_b(from).id(), sym_b(to).id());
    return rename_symbols(p, idmap);
}

}  // namespace wpvol
