#include "baker/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

namespace baker {
namespace {

using i64 = std::int64_t;
using i128 = __int128;

constexpr i64 kExpBound = i64(1) << 31;

i64 guard_exp(i128 v) {
    if (v > kExpBound || v < -kExpBound)
        throw GuardError("monomial exponent exceeds the supported range");
    return static_cast<i64>(v);
}

void need_vars(const MultiLaurent& f, int nvars, const char* what) {
    if (f.nvars != nvars)
        throw PreconditionError(std::string(what) + " expects " + std::to_string(nvars) +
                                " variables, got " + std::to_string(f.nvars));
}

unsigned lcm_level(unsigned a, unsigned b) { return std::lcm(a, b); }

}  // namespace

MultiLaurent ml_zero(unsigned level, int nvars) {
    MultiLaurent f;
    f.level = level;
    f.nvars = nvars;
    return f;
}

bool ml_is_zero(const MultiLaurent& f) { return f.terms.empty(); }

MultiLaurent ml_lift(const FieldTower& T, const MultiLaurent& f, unsigned level) {
    if (f.level == level) return f;
    MultiLaurent g = ml_zero(lcm_level(f.level, level), f.nvars);
    for (const auto& [e, c] : f.terms) g.terms.emplace(e, T.embed(c, g.level));
    return g;
}

void ml_add_term(const FieldTower& T, MultiLaurent& f, std::vector<std::int64_t> e,
                 const FqElem& c) {
    if (static_cast<int>(e.size()) != f.nvars)
        throw PreconditionError("term arity does not match the polynomial");
    if (T.is_zero(c)) return;
    for (i64 x : e) guard_exp(x);
    unsigned lv = lcm_level(f.level, c.level);
    if (lv != f.level) f = ml_lift(T, f, lv);
    auto it = f.terms.find(e);
    if (it == f.terms.end()) {
        f.terms.emplace(std::move(e), T.embed(c, lv));
        return;
    }
    it->second = T.add(it->second, c);
    if (T.is_zero(it->second)) f.terms.erase(it);
}

MultiLaurent ml_add(const FieldTower& T, const MultiLaurent& f, const MultiLaurent& g) {
    if (f.nvars != g.nvars) throw PreconditionError("cannot add polynomials of different arity");
    MultiLaurent r = ml_lift(T, f, lcm_level(f.level, g.level));
    for (const auto& [e, c] : g.terms) ml_add_term(T, r, e, c);
    return r;
}

MultiLaurent ml_sub(const FieldTower& T, const MultiLaurent& f, const MultiLaurent& g) {
    return ml_add(T, f, ml_neg(T, g));
}

MultiLaurent ml_neg(const FieldTower& T, const MultiLaurent& f) {
    MultiLaurent r = ml_zero(f.level, f.nvars);
    for (const auto& [e, c] : f.terms) r.terms.emplace(e, T.neg(c));
    return r;
}

MultiLaurent ml_mul(const FieldTower& T, const MultiLaurent& f, const MultiLaurent& g) {
    if (f.nvars != g.nvars) throw PreconditionError("cannot multiply polynomials of different arity");
    MultiLaurent r = ml_zero(lcm_level(f.level, g.level), f.nvars);
    std::vector<i64> e(f.nvars);
    for (const auto& [ef, cf] : f.terms)
        for (const auto& [eg, cg] : g.terms) {
            for (int i = 0; i < f.nvars; ++i)
                e[i] = guard_exp(static_cast<i128>(ef[i]) + eg[i]);
            ml_add_term(T, r, e, T.mul(cf, cg));
        }
    return r;
}

MultiLaurent ml_scale(const FieldTower& T, const MultiLaurent& f, const FqElem& c) {
    if (T.is_zero(c)) return ml_zero(f.level, f.nvars);
    MultiLaurent r = ml_zero(lcm_level(f.level, c.level), f.nvars);
    for (const auto& [e, a] : f.terms) r.terms.emplace(e, T.mul(a, c));
    return r;
}

bool ml_equal(const FieldTower& T, const MultiLaurent& f, const MultiLaurent& g) {
    if (f.nvars != g.nvars) return false;
    return ml_is_zero(ml_sub(T, f, g));
}

MultiLaurent ml_from_unipoly(const FieldTower& T, const UniPoly& u, int nvars, int var) {
    if (var < 0 || var >= nvars) throw PreconditionError("variable index out of range");
    MultiLaurent f = ml_zero(u.level, nvars);
    std::vector<i64> e(nvars, 0);
    for (std::size_t i = 0; i < u.c.size(); ++i) {
        if (T.is_zero(u.c[i])) continue;
        e[var] = static_cast<i64>(i);
        f.terms.emplace(e, u.c[i]);
    }
    return f;
}

std::vector<Vec2> ml_support2(const MultiLaurent& f) {
    need_vars(f, 2, "support extraction");
    std::vector<Vec2> s;
    s.reserve(f.terms.size());
    for (const auto& [e, c] : f.terms) s.push_back({e[0], e[1]});
    return s;
}

std::int64_t ml_ord(const MultiLaurent& f, const std::vector<std::int64_t>& v) {
    if (ml_is_zero(f)) throw PreconditionError("the zero polynomial has no order");
    if (static_cast<int>(v.size()) != f.nvars)
        throw PreconditionError("weight arity does not match the polynomial");
    bool first = true;
    i128 best = 0;
    for (const auto& [e, c] : f.terms) {
        i128 dot = 0;
        for (int i = 0; i < f.nvars; ++i) dot += static_cast<i128>(v[i]) * e[i];
        if (first || dot < best) best = dot;
        first = false;
    }
    return guard_exp(best);
}

MultiLaurent ml_face(const MultiLaurent& f, const std::vector<std::int64_t>& v) {
    i64 m = ml_ord(f, v);
    MultiLaurent r = ml_zero(f.level, f.nvars);
    for (const auto& [e, c] : f.terms) {
        i128 dot = 0;
        for (int i = 0; i < f.nvars; ++i) dot += static_cast<i128>(v[i]) * e[i];
        if (dot == m) r.terms.emplace(e, c);
    }
    return r;
}

MultiLaurent ml_partial_scaled(const FieldTower& T, const MultiLaurent& f, int var) {
    if (var < 0 || var >= f.nvars) throw PreconditionError("variable index out of range");
    MultiLaurent r = ml_zero(f.level, f.nvars);
    for (const auto& [e, c] : f.terms) {
        FqElem m = T.mul(c, T.from_int(e[var], f.level));
        if (!T.is_zero(m)) r.terms.emplace(e, m);
    }
    return r;
}

MonomialImage ml_monomial_substitute(const FieldTower& T, const MultiLaurent& f, const MatZ& M) {
    need_vars(f, 2, "monomial substitution");
    if (M.size() != 2 || M.rows[0].size() != 2 || M.rows[1].size() != 2)
        throw PreconditionError("monomial substitution expects a 2x2 matrix");
    MonomialImage out;
    out.g = ml_zero(f.level, 2);
    if (ml_is_zero(f)) return out;
    for (const auto& [e, c] : f.terms) {
        i64 a = guard_exp(static_cast<i128>(M.rows[0][0]) * e[0] +
                          static_cast<i128>(M.rows[0][1]) * e[1]);
        i64 b = guard_exp(static_cast<i128>(M.rows[1][0]) * e[0] +
                          static_cast<i128>(M.rows[1][1]) * e[1]);
        ml_add_term(T, out.g, {a, b}, c);
    }
    if (ml_is_zero(out.g)) return out;  // degenerate map collapsed everything
    i64 mx = out.g.terms.begin()->first[0], my = out.g.terms.begin()->first[1];
    for (const auto& [e, c] : out.g.terms) {
        mx = std::min(mx, e[0]);
        my = std::min(my, e[1]);
    }
    MultiLaurent stripped = ml_zero(out.g.level, 2);
    for (auto& [e, c] : out.g.terms) stripped.terms.emplace(std::vector<i64>{e[0] - mx, e[1] - my}, c);
    out.g = std::move(stripped);
    out.shift_x = mx;
    out.shift_y = my;
    return out;
}

MultiLaurent ml_monomial_map(const FieldTower& T, const MultiLaurent& f, const MatZ& R) {
    std::size_t arity = R.size();
    for (const auto& row : R.rows)
        if (static_cast<int>(row.size()) != f.nvars)
            throw PreconditionError("exponent map arity does not match the polynomial");
    MultiLaurent r = ml_zero(f.level, static_cast<int>(arity));
    std::vector<i64> e(arity);
    for (const auto& [ef, c] : f.terms) {
        for (std::size_t i = 0; i < arity; ++i) {
            i128 dot = 0;
            for (int j = 0; j < f.nvars; ++j) dot += static_cast<i128>(R.rows[i][j]) * ef[j];
            e[i] = guard_exp(dot);
        }
        ml_add_term(T, r, e, c);
    }
    return r;
}

std::vector<std::int64_t> ml_clear_denominators(MultiLaurent& f) {
    std::vector<i64> shift(f.nvars, 0);
    if (ml_is_zero(f)) return shift;
    for (const auto& [e, c] : f.terms)
        for (int i = 0; i < f.nvars; ++i) shift[i] = std::min(shift[i], e[i]);
    for (auto& s : shift) s = -s;
    if (std::all_of(shift.begin(), shift.end(), [](i64 s) { return s == 0; })) return shift;
    std::map<std::vector<i64>, FqElem> moved;
    for (auto& [e, c] : f.terms) {
        std::vector<i64> ne(e);
        for (int i = 0; i < f.nvars; ++i) ne[i] = guard_exp(static_cast<i128>(ne[i]) + shift[i]);
        moved.emplace(std::move(ne), c);
    }
    f.terms = std::move(moved);
    return shift;
}

MultiLaurent ml_shift_x(const FieldTower& T, const MultiLaurent& f, const FqElem& a,
                        std::int64_t corr) {
    need_vars(f, 2, "shift");
    if (corr < 0) throw PreconditionError("correction exponent must be nonnegative");
    i64 dmax = 0;
    std::map<i64, MultiLaurent> rows;
    for (const auto& [e, c] : f.terms) {
        if (e[0] < 0) throw PreconditionError("shift expects nonnegative x exponents");
        dmax = std::max(dmax, e[0]);
        auto it = rows.try_emplace(e[0], ml_zero(f.level, 2)).first;
        ml_add_term(T, it->second, {0, e[1]}, c);
    }
    unsigned lv = lcm_level(f.level, a.level);
    MultiLaurent s = ml_zero(lv, 2);
    ml_add_term(T, s, {1, 0}, T.one(lv));
    ml_add_term(T, s, {0, 0}, a);
    if (corr > 0) ml_add_term(T, s, {0, corr}, T.from_int(-1, lv));
    MultiLaurent acc = ml_zero(lv, 2);
    for (i64 i = dmax; i >= 0; --i) {
        acc = ml_mul(T, acc, s);
        auto it = rows.find(i);
        if (it != rows.end()) acc = ml_add(T, acc, it->second);
    }
    return acc;
}

UniPoly ml_eval_y0(const FieldTower& T, const MultiLaurent& f) {
    need_vars(f, 2, "evaluation at y = 0");
    i64 dmax = -1;
    for (const auto& [e, c] : f.terms) {
        if (e[0] < 0 || e[1] < 0)
            throw PreconditionError("evaluation at y = 0 expects nonnegative exponents");
        if (e[1] == 0) dmax = std::max(dmax, e[0]);
    }
    std::vector<FqElem> coeffs(static_cast<std::size_t>(dmax + 1), T.zero(f.level));
    for (const auto& [e, c] : f.terms)
        if (e[1] == 0) coeffs[static_cast<std::size_t>(e[0])] = c;
    return up_make(T, f.level, std::move(coeffs));
}

std::vector<UniPoly> ml_coeffs_in(const FieldTower& T, const MultiLaurent& f, int var) {
    need_vars(f, 2, "coefficient extraction");
    if (var != 0 && var != 1) throw PreconditionError("variable index out of range");
    int other = 1 - var;
    i64 dmax = -1, omax = -1;
    for (const auto& [e, c] : f.terms) {
        if (e[0] < 0 || e[1] < 0)
            throw PreconditionError("coefficient extraction expects nonnegative exponents");
        dmax = std::max(dmax, e[var]);
        omax = std::max(omax, e[other]);
    }
    std::vector<std::vector<FqElem>> rows(static_cast<std::size_t>(dmax + 1));
    for (auto& r : rows) r.assign(static_cast<std::size_t>(omax + 1), T.zero(f.level));
    for (const auto& [e, c] : f.terms) rows[e[var]][e[other]] = c;
    std::vector<UniPoly> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.push_back(up_make(T, f.level, std::move(r)));
    return out;
}

UniPoly ml_edge_restriction(const FieldTower& T, const MultiLaurent& f, const Edge& e) {
    need_vars(f, 2, "edge restriction");
    std::vector<FqElem> coeffs;
    coeffs.reserve(e.lattice_points.size());
    for (const Vec2& pt : e.lattice_points) {
        auto it = f.terms.find(std::vector<i64>{pt[0], pt[1]});
        coeffs.push_back(it == f.terms.end() ? T.zero(f.level) : it->second);
    }
    return up_make(T, f.level, std::move(coeffs));
}

namespace {

struct Parser {
    const FieldTower& T;
    const std::string& s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw ParseError("polynomial: " + why + " at position " + std::to_string(i));
    }

    i64 parse_int() {
        if (eat('(')) {
            i64 v = parse_int();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        bool neg = eat('-');
        skip();
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected an integer");
        i64 v = 0;
        auto res = std::from_chars(s.data() + start, s.data() + i, v);
        if (res.ec != std::errc()) fail("integer out of range");
        guard_exp(neg ? -static_cast<i128>(v) : static_cast<i128>(v));
        return neg ? -v : v;
    }

    MultiLaurent power(MultiLaurent base, i64 e) {
        if (base.terms.size() == 1) {
            const auto& [be, bc] = *base.terms.begin();
            MultiLaurent r = ml_zero(base.level, 2);
            std::vector<i64> ne(2);
            for (int k = 0; k < 2; ++k) ne[k] = guard_exp(static_cast<i128>(be[k]) * e);
            FqElem c = e >= 0 ? T.pow(bc, static_cast<std::uint64_t>(e))
                              : T.pow(T.inv(bc), static_cast<std::uint64_t>(-e));
            r.terms.emplace(std::move(ne), c);
            return r;
        }
        if (e < 0) fail("cannot raise a sum to a negative power");
        if (e > 4096) throw GuardError("polynomial power exceeds the supported range");
        MultiLaurent acc = ml_zero(base.level, 2);
        ml_add_term(T, acc, {0, 0}, T.one(base.level));
        for (i64 k = 0; k < e; ++k) acc = ml_mul(T, acc, base);
        return acc;
    }

    MultiLaurent atom() {
        char c = peek();
        if (c == '(') {
            ++i;
            MultiLaurent inner = sum();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            std::uint64_t v = 0;
            auto res = std::from_chars(s.data() + start, s.data() + i, v);
            if (res.ec != std::errc()) fail("coefficient out of range");
            MultiLaurent r = ml_zero(1, 2);
            ml_add_term(T, r, {0, 0}, T.from_int(static_cast<std::int64_t>(v % T.p())));
            return r;
        }
        if (c == 't') {
            ++i;
            if (T.base_degree() == 1) fail("'t' has no meaning over a prime field");
            MultiLaurent r = ml_zero(1, 2);
            ml_add_term(T, r, {0, 0}, T.gen());
            return r;
        }
        if (c == 'x' || c == 'X' || c == 'y' || c == 'Y') {
            ++i;
            MultiLaurent r = ml_zero(1, 2);
            std::vector<i64> e{0, 0};
            e[(c == 'x' || c == 'X') ? 0 : 1] = 1;
            ml_add_term(T, r, std::move(e), T.one());
            return r;
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }

    MultiLaurent factor() {
        MultiLaurent base = atom();
        if (eat('^')) return power(std::move(base), parse_int());
        return base;
    }

    MultiLaurent term() {
        MultiLaurent acc = factor();
        for (;;) {
            if (eat('*')) {
                acc = ml_mul(T, acc, factor());
                continue;
            }
            char c = peek();
            if (c == '(' || std::isalnum(static_cast<unsigned char>(c))) {
                acc = ml_mul(T, acc, factor());
                continue;
            }
            return acc;
        }
    }

    MultiLaurent sum() {
        MultiLaurent acc = ml_zero(1, 2);
        bool neg = eat('-');
        if (!neg) eat('+');
        for (;;) {
            MultiLaurent t = term();
            acc = neg ? ml_sub(T, acc, t) : ml_add(T, acc, t);
            if (eat('+'))
                neg = false;
            else if (eat('-'))
                neg = true;
            else
                return acc;
        }
    }
};

}  // namespace

MultiLaurent ml_parse(const FieldTower& T, const std::string& text) {
    Parser p{T, text};
    if (p.peek() == '\0') throw ParseError("polynomial: empty input");
    MultiLaurent f = p.sum();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return f;
}

std::string ml_render(const FieldTower& T, const MultiLaurent& f,
                      const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != f.nvars)
        throw PreconditionError("variable name list does not match the polynomial");
    if (ml_is_zero(f)) return "0";
    std::string out;
    for (const auto& [e, c] : f.terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (int i = 0; i < f.nvars; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = T.render(c);
        if (mono.empty()) {
            out += cs;
        } else if (cs == "1") {
            out += mono;
        } else {
            bool wrap = cs.find('+') != std::string::npos || cs.find('[') != std::string::npos;
            out += (wrap ? "(" + cs + ")" : cs) + "*" + mono;
        }
    }
    return out;
}

}  // namespace baker
