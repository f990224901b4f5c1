#include "wpvol/mpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wpvol {

std::optional<Symbol> symbol_from_name(const std::string& name) {
    auto indexed = [&](const std::string& prefix, SymKind kind,
                       uint32_t min_index) -> std::optional<Symbol> {
        if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0)
            return std::nullopt;
        uint32_t idx = 0;
        for (size_t i = prefix.size(); i < name.size(); ++i) {
            char c = name[i];
            if (c < '0' || c > '9') return std::nullopt;
            idx = idx * 10 + static_cast<uint32_t>(c - '0');
        }
        if (idx < min_index) return std::nullopt;
        return Symbol{kind, idx};
    };
    if (name == "pi2") return sym_q();
    if (name == "invM0") return sym_invM0();
    if (auto s = indexed("beta", SymKind::Beta, 0)) return s;
    if (auto s = indexed("b", SymKind::B, 1)) return s;
    if (auto s = indexed("M", SymKind::M, 0)) return s;
    if (auto s = indexed("m", SymKind::SmallM, 1)) return s;
    return std::nullopt;
}

bool monomial_lex_less(const Monomial& a, const Monomial& b) {
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        uint32_t ida = i < a.size() ? a[i].first : UINT32_MAX;
        uint32_t idb = j < b.size() ? b[j].first : UINT32_MAX;
        if (ida == idb) {
            if (a[i].second != b[j].second) return a[i].second < b[j].second;
            ++i;
            ++j;
        } else if (ida < idb) {
            // a has a positive exponent where b has zero: a is lex-greater.
            return false;
        } else {
            return true;
        }
    }
    return false;
}

namespace {

const uint32_t kM0Id = sym_M(0).id();
const uint32_t kInvM0Id = sym_invM0().id();

// Cancels M0 against invM0 inside a monomial; keeps it sorted.
void reduce_monomial(Monomial& m) {
    int m0 = -1, inv = -1;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].first == kM0Id) m0 = static_cast<int>(i);
        if (m[i].first == kInvM0Id) inv = static_cast<int>(i);
    }
    if (m0 < 0 || inv < 0) return;
    uint32_t c = std::min(m[m0].second, m[inv].second);
    m[m0].second -= c;
    m[inv].second -= c;
    m.erase(std::remove_if(m.begin(), m.end(),
                           [](const auto& p) { return p.second == 0; }),
            m.end());
}

Monomial mul_monomial(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        } else if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else {
            out.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    reduce_monomial(out);
    return out;
}

}  // namespace

void MPoly::add_term(Monomial mono, const Rat& c) {
    if (c == 0) return;
    std::sort(mono.begin(), mono.end());
    // Merge duplicate symbols (can arise from non-injective renames).
    size_t w = 0;
    for (size_t r = 0; r < mono.size(); ++r) {
        if (w > 0 && mono[w - 1].first == mono[r].first)
            mono[w - 1].second += mono[r].second;
        else
            mono[w++] = mono[r];
    }
    mono.resize(w);
    mono.erase(std::remove_if(mono.begin(), mono.end(),
                              [](const auto& p) { return p.second == 0; }),
               mono.end());
    reduce_monomial(mono);
    auto [it, inserted] = terms.emplace(std::move(mono), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

MPoly MPoly::operator-() const {
    MPoly out;
    for (const auto& [m, c] : terms) out.terms.emplace(m, -c);
    return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms) {
        auto [it, inserted] = terms.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms) {
        auto [it, inserted] = terms.emplace(m, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second == 0) terms.erase(it);
        }
    }
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out;
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            Rat c = ca * cb;
            Monomial m = mul_monomial(ma, mb);
            auto [it, inserted] = out.terms.emplace(std::move(m), c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) out.terms.erase(it);
            }
        }
    }
    return out;
}

MPoly MPoly::scaled(const Rat& c) const {
    MPoly out;
    if (c == 0) return out;
    for (const auto& [m, coeff] : terms) out.terms.emplace(m, coeff * c);
    return out;
}

MPoly MPoly::pow(uint32_t e) const {
    MPoly out(Rat(1));
    MPoly base = *this;
    while (e) {
        if (e & 1u) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

uint32_t MPoly::degree_in(Symbol s) const {
    uint32_t id = s.id(), deg = 0;
    for (const auto& [m, c] : terms)
        for (const auto& [sid, e] : m)
            if (sid == id) deg = std::max(deg, e);
    return deg;
}

uint32_t MPoly::total_degree_kind(SymKind k) const {
    uint32_t deg = 0;
    for (const auto& [m, c] : terms) {
        uint32_t d = 0;
        for (const auto& [sid, e] : m)
            if (symbol_from_id(sid).kind == k) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

int MPoly::max_index_of_kind(SymKind k) const {
    int idx = -1;
    for (const auto& [m, c] : terms)
        for (const auto& [sid, e] : m) {
            Symbol s = symbol_from_id(sid);
            if (s.kind == k) idx = std::max(idx, static_cast<int>(s.index));
        }
    return idx;
}

MPoly subst(const MPoly& p, const std::map<Symbol, MPoly>& assignments) {
    std::map<uint32_t, const MPoly*> by_id;
    for (const auto& [s, q] : assignments) by_id.emplace(s.id(), &q);
    MPoly out;
    for (const auto& [m, c] : p.terms) {
        Monomial untouched;
        MPoly factor(c);
        for (const auto& [sid, e] : m) {
            auto it = by_id.find(sid);
            if (it == by_id.end()) {
                untouched.emplace_back(sid, e);
            } else {
                factor = factor * it->second->pow(e);
            }
        }
        if (untouched.empty()) {
            out += factor;
        } else {
            MPoly mono;
            mono.add_term(std::move(untouched), Rat(1));
            out += factor * mono;
        }
    }
    return out;
}

MPoly rename_symbols(const MPoly& p, const std::map<uint32_t, uint32_t>& idmap) {
    MPoly out;
    for (const auto& [m, c] : p.terms) {
        Monomial renamed;
        renamed.reserve(m.size());
        for (const auto& [sid, e] : m) {
            auto it = idmap.find(sid);
            renamed.emplace_back(it == idmap.end() ? sid : it->second, e);
        }
        out.add_term(std::move(renamed), c);
    }
    return out;
}

MPoly integrate_even(const MPoly& p, uint32_t boundary_index) {
    uint32_t id = sym_b(boundary_index).id();
    MPoly out;
    for (const auto& [m, c] : p.terms) {
        Monomial shifted = m;
        uint32_t k = 0;
        bool found = false;
        for (auto& [sid, e] : shifted) {
            if (sid == id) {
                k = e;
                e += 1;
                found = true;
                break;
            }
        }
        if (!found) shifted.emplace_back(id, 1);
        out.add_term(std::move(shifted), c / Rat(2 * k + 2));
    }
    return out;
}

MPoly differentiate_even(const MPoly& p, uint32_t boundary_index) {
    uint32_t id = sym_b(boundary_index).id();
    MPoly out;
    for (const auto& [m, c] : p.terms) {
        Monomial shifted = m;
        uint32_t k = 0;
        for (auto& [sid, e] : shifted) {
            if (sid == id) {
                k = e;
                e -= 1;
                break;
            }
        }
        if (k == 0) continue;
        // Inverse of the length integral: f(L) = F'(L)/L, i.e. b^k -> 2k b^{k-1}.
        out.add_term(std::move(shifted), c * Rat(2 * k));
    }
    return out;
}

MPoly derivative(const MPoly& p, Symbol s) {
    uint32_t id = s.id();
    MPoly out;
    for (const auto& [m, c] : p.terms) {
        Monomial shifted = m;
        uint32_t k = 0;
        for (auto& [sid, e] : shifted) {
            if (sid == id) {
                k = e;
                e -= 1;
                break;
            }
        }
        if (k == 0) continue;
        out.add_term(std::move(shifted), c * Rat(k));
    }
    return out;
}

std::map<uint32_t, MPoly> coefficients_in(const MPoly& p, Symbol s) {
    uint32_t id = s.id();
    std::map<uint32_t, MPoly> out;
    for (const auto& [m, c] : p.terms) {
        Monomial rest;
        rest.reserve(m.size());
        uint32_t k = 0;
        for (const auto& [sid, e] : m) {
            if (sid == id)
                k = e;
            else
                rest.emplace_back(sid, e);
        }
        out[k].add_term(std::move(rest), c);
    }
    return out;
}

MPoly coefficient_of(const MPoly& p, Symbol s, uint32_t k) {
    auto all = coefficients_in(p, s);
    auto it = all.find(k);
    return it == all.end() ? MPoly() : it->second;
}

double eval_double(const MPoly& p, const std::function<double(Symbol)>& value_of) {
    double acc = 0.0;
    for (const auto& [m, c] : p.terms) {
        double t = rat_to_double(c);
        for (const auto& [sid, e] : m)
            t *= std::pow(value_of(symbol_from_id(sid)), static_cast<int>(e));
        acc += t;
    }
    return acc;
}

std::string to_string(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print leading (lex-greatest) terms first.
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const Rat& c = it->second;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        Rat a = abs(c);
        bool coeff_one = (a == 1) && !it->first.empty();
        if (!coeff_one) os << a.get_str();
        bool need_star = !coeff_one;
        for (const auto& [sid, e] : it->first) {
            if (need_star) os << "*";
            os << symbol_name(symbol_from_id(sid));
            if (e > 1) os << "^" << e;
            need_star = true;
        }
    }
    return os.str();
}

}  // namespace wpvol
