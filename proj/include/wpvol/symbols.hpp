#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace wpvol {

/// Kinds of generators of the coefficient ring. The encoded id (kind in the
/// high byte, index below) gives the canonical total order used for monomials,
/// so canonical forms are identical across runs.
enum class SymKind : uint8_t {
    Q = 0,       // pi^2
    B = 1,       // squared boundary length L_i^2, index i >= 1
    M = 2,       // moment M_k, index k >= 0
    InvM0 = 3,   // M_0^{-1}
    SmallM = 4,  // normalized moment m_k = M_k / M_0, index k >= 1
    Beta = 5,    // reverse moment beta_m, index m >= 0
};

struct Symbol {
    SymKind kind;
    uint32_t index = 0;

    constexpr uint32_t id() const {
        return (static_cast<uint32_t>(kind) << 24) | index;
    }
    friend bool operator==(const Symbol& a, const Symbol& b) { return a.id() == b.id(); }
    friend bool operator<(const Symbol& a, const Symbol& b) { return a.id() < b.id(); }
};

inline Symbol sym_q() { return {SymKind::Q, 0}; }
inline Symbol sym_b(uint32_t i) { return {SymKind::B, i}; }
inline Symbol sym_M(uint32_t k) { return {SymKind::M, k}; }
inline Symbol sym_invM0() { return {SymKind::InvM0, 0}; }
inline Symbol sym_m(uint32_t k) { return {SymKind::SmallM, k}; }
inline Symbol sym_beta(uint32_t m) { return {SymKind::Beta, m}; }

inline Symbol symbol_from_id(uint32_t id) {
    return {static_cast<SymKind>(id >> 24), id & 0xffffffu};
}

inline std::string symbol_name(Symbol s) {
    switch (s.kind) {
        case SymKind::Q: return "pi2";
        case SymKind::B: return "b" + std::to_string(s.index);
        case SymKind::M: return "M" + std::to_string(s.index);
        case SymKind::InvM0: return "invM0";
        case SymKind::SmallM: return "m" + std::to_string(s.index);
        case SymKind::Beta: return "beta" + std::to_string(s.index);
    }
    return "?";
}

/// Inverse of symbol_name; std::nullopt for anything unrecognized.
std::optional<Symbol> symbol_from_name(const std::string& name);

}  // namespace wpvol
