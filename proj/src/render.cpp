#include "wpvol/render.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "wpvol/json_io.hpp"

namespace wpvol {

OutputFormat parse_format(const std::string& name) {
    if (name == "table") return OutputFormat::Table;
    if (name == "json") return OutputFormat::Json;
    if (name == "latex") return OutputFormat::Latex;
    if (name == "csv") return OutputFormat::Csv;
    throw std::invalid_argument("unknown format: " + name);
}

namespace {

// Display order: total boundary degree descending, then canonical order
// descending. Puts the L-terms ahead of the constant-in-L tail.
std::vector<std::pair<Monomial, Rat>> ordered_terms(const MPoly& p) {
    std::vector<std::pair<Monomial, Rat>> out(p.terms.begin(), p.terms.end());
    auto bdeg = [](const Monomial& m) {
        long d = 0;
        for (const auto& [sid, e] : m)
            if (symbol_from_id(sid).kind == SymKind::B) d += e;
        return d;
    };
    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        long da = bdeg(a.first), db = bdeg(b.first);
        if (da != db) return da > db;
        return monomial_lex_less(b.first, a.first);
    });
    return out;
}

std::string latex_symbol(Symbol s, uint32_t e) {
    std::ostringstream os;
    switch (s.kind) {
        case SymKind::B:
            os << "L_" << (s.index < 10 ? "" : "{") << s.index << (s.index < 10 ? "" : "}")
               << "^" << (e == 1 ? "2" : "{" + std::to_string(2 * e) + "}");
            break;
        case SymKind::Q:
            os << "\\pi^" << (e == 1 ? "2" : "{" + std::to_string(2 * e) + "}");
            break;
        case SymKind::M:
            os << "M_" << s.index;
            if (e > 1) os << "^" << e;
            break;
        case SymKind::InvM0:
            os << "M_0^{-" << e << "}";
            break;
        case SymKind::SmallM:
            os << "m_" << s.index;
            if (e > 1) os << "^" << e;
            break;
        case SymKind::Beta:
            os << "\\beta_" << s.index;
            if (e > 1) os << "^" << e;
            break;
    }
    return os.str();
}

std::string latex_monomial(const Monomial& m) {
    std::string out;
    for (const auto& [sid, e] : m) {
        if (!out.empty()) out += " ";
        out += latex_symbol(symbol_from_id(sid), e);
    }
    return out;
}

std::string plain_monomial(const Monomial& m) {
    std::string out;
    for (const auto& [sid, e] : m) {
        if (!out.empty()) out += "*";
        out += symbol_name(symbol_from_id(sid));
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace

std::string mpoly_to_latex(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : ordered_terms(p)) {
        Rat a = abs(c);
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        std::string mstr = latex_monomial(mono);
        std::string num = a.get_num().get_str();
        std::string den = a.get_den().get_str();
        if (den == "1") {
            if (num == "1" && !mstr.empty())
                os << mstr;
            else
                os << num << (mstr.empty() ? "" : " " + mstr);
        } else {
            std::string numerator = (num == "1" && !mstr.empty()) ? mstr
                                    : mstr.empty()                ? num
                                                                  : num + " " + mstr;
            os << "\\frac{" << numerator << "}{" << den << "}";
        }
    }
    return os.str();
}

std::string mpoly_to_table(const MPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, c] : ordered_terms(p)) {
        Rat a = abs(c);
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        std::string mstr = plain_monomial(mono);
        if (a == 1 && !mstr.empty())
            os << mstr;
        else
            os << a.get_str() << (mstr.empty() ? "" : "*" + mstr);
    }
    return os.str();
}

std::string mpoly_to_csv(const MPoly& p) {
    std::ostringstream os;
    os << "monomial,coeff\n";
    for (const auto& [mono, c] : ordered_terms(p)) {
        std::string mstr = plain_monomial(mono);
        os << (mstr.empty() ? "1" : mstr) << "," << c.get_str() << "\n";
    }
    return os.str();
}

std::string render_volume(const VolumePoly& v, OutputFormat f) {
    if (f == OutputFormat::Json) return volume_poly_to_json(v).dump();
    if (f == OutputFormat::Csv) return mpoly_to_csv(v.poly);

    // Factor the invM0 power common to all terms into a prefactor.
    uint32_t common = UINT32_MAX;
    for (const auto& [mono, c] : v.poly.terms) {
        uint32_t e = 0;
        for (const auto& [sid, ex] : mono)
            if (sid == sym_invM0().id()) e = ex;
        common = std::min(common, e);
    }
    if (v.poly.is_zero()) common = 0;
    MPoly body = v.poly;
    std::string prefix;
    if (common != 0 && common != UINT32_MAX) {
        body = v.poly * MPoly::variable(sym_M(0), common);
        if (f == OutputFormat::Latex)
            prefix = "\\frac{1}{M_0^{" + std::to_string(common) + "}}\\left(";
        else
            prefix = "invM0^" + std::to_string(common) + " * (";
    }
    std::string rendered = f == OutputFormat::Latex ? mpoly_to_latex(body) : mpoly_to_table(body);
    if (prefix.empty()) return rendered;
    return prefix + rendered + (f == OutputFormat::Latex ? "\\right)" : ")");
}

}  // namespace wpvol
