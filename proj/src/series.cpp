#include "wpvol/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace wpvol {

namespace {
const MPoly kZero;

// Inverts c * M0^a * invM0^b monomials; nullopt for anything else.
std::optional<MPoly> invert_unit(const MPoly& p) {
    if (p.terms.size() != 1) return std::nullopt;
    const auto& [mono, c] = *p.terms.begin();
    Monomial inv;
    for (const auto& [sid, e] : mono) {
        Symbol s = symbol_from_id(sid);
        if (s.kind == SymKind::M && s.index == 0)
            inv.emplace_back(sym_invM0().id(), e);
        else if (s.kind == SymKind::InvM0)
            inv.emplace_back(sym_M(0).id(), e);
        else
            return std::nullopt;
    }
    MPoly out;
    out.add_term(std::move(inv), Rat(1) / c);
    return out;
}
}  // namespace

const MPoly& TruncSeries::coeff(int k) const {
    if (k < 0 || k > order || k >= static_cast<int>(c.size())) return kZero;
    return c[k];
}

void TruncSeries::set_coeff(int k, MPoly p) {
    if (k < 0 || k > order) return;
    if (static_cast<int>(c.size()) <= k) c.resize(order + 1);
    c[k] = std::move(p);
}

bool TruncSeries::is_zero() const {
    for (const auto& p : c)
        if (!p.is_zero()) return false;
    return true;
}

static void check_vars(const TruncSeries& a, const TruncSeries& b) {
    if (a.var != b.var)
        throw std::invalid_argument("series variable mismatch: " + a.var + " vs " + b.var);
}

TruncSeries series_add(const TruncSeries& a, const TruncSeries& b) {
    check_vars(a, b);
    TruncSeries out(a.var, std::min(a.order, b.order));
    for (int k = 0; k <= out.order; ++k) out.c[k] = a.coeff(k) + b.coeff(k);
    return out;
}

TruncSeries series_sub(const TruncSeries& a, const TruncSeries& b) {
    check_vars(a, b);
    TruncSeries out(a.var, std::min(a.order, b.order));
    for (int k = 0; k <= out.order; ++k) out.c[k] = a.coeff(k) - b.coeff(k);
    return out;
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
    check_vars(a, b);
    TruncSeries out(a.var, std::min(a.order, b.order));
    for (int i = 0; i <= out.order; ++i) {
        if (a.coeff(i).is_zero()) continue;
        for (int j = 0; i + j <= out.order; ++j) {
            if (b.coeff(j).is_zero()) continue;
            out.c[i + j] += a.coeff(i) * b.coeff(j);
        }
    }
    return out;
}

TruncSeries series_scale(const TruncSeries& a, const MPoly& f) {
    TruncSeries out(a.var, a.order);
    for (int k = 0; k <= a.order; ++k) out.c[k] = a.coeff(k) * f;
    return out;
}

TruncSeries series_pow(const TruncSeries& a, uint32_t e) {
    TruncSeries out(a.var, a.order);
    out.set_coeff(0, MPoly(Rat(1)));
    TruncSeries base = a;
    while (e) {
        if (e & 1u) out = series_mul(out, base);
        base = series_mul(base, base);
        e >>= 1;
    }
    return out;
}

TruncSeries series_recip(const TruncSeries& a) {
    auto u = invert_unit(a.coeff(0));
    if (!u)
        throw std::domain_error(
            "series_recip: constant term is not an invertible unit monomial");
    TruncSeries out(a.var, a.order);
    out.set_coeff(0, *u);
    // b_n = -b_0 * sum_{k=1..n} a_k b_{n-k}
    for (int n = 1; n <= a.order; ++n) {
        MPoly acc;
        for (int k = 1; k <= n; ++k) acc += a.coeff(k) * out.coeff(n - k);
        out.c[n] = (*u * acc).scaled(Rat(-1));
    }
    return out;
}

TruncSeries series_eval_poly(const std::vector<MPoly>& poly_coeffs, const TruncSeries& s) {
    TruncSeries out(s.var, s.order);
    // Horner from the top coefficient down.
    for (auto it = poly_coeffs.rbegin(); it != poly_coeffs.rend(); ++it) {
        out = series_mul(out, s);
        out.c[0] += *it;
    }
    return out;
}

bool LaurentSeries::is_zero() const {
    for (const auto& p : c)
        if (!p.is_zero()) return false;
    return true;
}

MPoly LaurentSeries::coeff(int e) const {
    int i = e - min_exp;
    if (i < 0 || i >= static_cast<int>(c.size())) return MPoly();
    return c[i];
}

void LaurentSeries::add_coeff(int e, const MPoly& p) {
    if (p.is_zero()) return;
    if (c.empty()) {
        min_exp = e;
        c.push_back(p);
        return;
    }
    if (e < min_exp) {
        c.insert(c.begin(), static_cast<size_t>(min_exp - e), MPoly());
        min_exp = e;
    } else if (e >= min_exp + static_cast<int>(c.size())) {
        c.resize(static_cast<size_t>(e - min_exp) + 1);
    }
    c[e - min_exp] += p;
}

void LaurentSeries::truncate(int hi) {
    if (c.empty()) return;
    int top = min_exp + static_cast<int>(c.size()) - 1;
    if (top > hi) c.resize(std::max(0, hi - min_exp + 1));
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    size_t lead = 0;
    while (lead < c.size() && c[lead].is_zero()) ++lead;
    if (lead > 0) {
        c.erase(c.begin(), c.begin() + static_cast<long>(lead));
        min_exp += static_cast<int>(lead);
    }
    if (c.empty()) min_exp = 0;
}

LaurentSeries laurent_add(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries out = a;
    for (size_t i = 0; i < b.c.size(); ++i)
        out.add_coeff(b.min_exp + static_cast<int>(i), b.c[i]);
    return out;
}

LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b, int hi) {
    LaurentSeries out;
    out.var = a.var;
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        int ea = a.min_exp + static_cast<int>(i);
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j].is_zero()) continue;
            int eb = b.min_exp + static_cast<int>(j);
            if (ea + eb > hi) break;
            out.add_coeff(ea + eb, a.c[i] * b.c[j]);
        }
    }
    return out;
}

LaurentSeries laurent_scale(const LaurentSeries& a, const MPoly& f) {
    LaurentSeries out;
    out.var = a.var;
    out.min_exp = a.min_exp;
    out.c.reserve(a.c.size());
    for (const auto& p : a.c) out.c.push_back(p * f);
    return out;
}

}  // namespace wpvol
