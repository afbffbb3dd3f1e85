#include "baker/unipoly.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace baker {
namespace {

using u64 = std::uint64_t;

struct SplitMix {
    u64 s;
    u64 next() {
        s += 0x9e3779b97f4a7c15ULL;
        u64 z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

u64 env_seed() {
    static u64 s = [] {
        const char* e = std::getenv("BAKER_SEED");
        if (!e || !*e) return static_cast<u64>(0x5851f42d4c957f2dULL);
        return static_cast<u64>(std::strtoull(e, nullptr, 10));
    }();
    return s;
}

u64 mix(u64 h, u64 v) { return (h ^ v) * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL; }

u64 poly_seed(const FieldTower& T, const UniPoly& f) {
    u64 h = mix(env_seed(), T.p());
    h = mix(h, T.base_degree());
    h = mix(h, f.level);
    for (const FqElem& c : f.c)
        for (u64 v : c.coords) h = mix(h, v + 1);
    return h;
}

void trim(const FieldTower& T, UniPoly& f) {
    while (!f.c.empty() && T.is_zero(f.c.back())) f.c.pop_back();
}

// base^e mod m, e a plain machine word
UniPoly powmod_u64(const FieldTower& T, UniPoly base, u64 e, const UniPoly& m) {
    UniPoly r{m.level, {T.one(m.level)}};
    base = up_rem(T, base, m);
    while (e) {
        if (e & 1) r = up_rem(T, up_mul(T, r, base), m);
        base = up_rem(T, up_mul(T, base, base), m);
        e >>= 1;
    }
    return r;
}

// base^Q mod m where Q = p^(n*level) is the size of the coefficient field
UniPoly qpowmod(const FieldTower& T, UniPoly base, const UniPoly& m) {
    unsigned steps = T.base_degree() * m.level;
    for (unsigned i = 0; i < steps; ++i) base = powmod_u64(T, base, T.p(), m);
    return base;
}

UniPoly random_below(const FieldTower& T, unsigned level, int deg_bound, SplitMix& rng) {
    std::vector<FqElem> cs;
    unsigned m = T.base_degree() * level;
    for (int i = 0; i < deg_bound; ++i) {
        std::vector<u64> coords(m);
        for (auto& v : coords) v = rng.next() % T.p();
        cs.push_back(T.make(level, std::move(coords)));
    }
    return up_make(T, level, std::move(cs));
}

// coefficient-wise p-th root: g with g(X)^p = f(X); f must be a p-th power
UniPoly pth_root(const FieldTower& T, const UniPoly& f) {
    unsigned p = static_cast<unsigned>(T.p());
    unsigned iters = T.base_degree() * f.level;  // c^(1/p) = c^(p^(iters-1))
    std::vector<FqElem> out;
    for (size_t i = 0; i < f.c.size(); i += p) {
        FqElem c = f.c[i];
        for (unsigned j = 0; j + 1 < iters; ++j) c = T.frobenius_p(c);
        out.push_back(std::move(c));
    }
    return up_make(T, f.level, std::move(out));
}

void edf(const FieldTower& T, const UniPoly& g, unsigned d, SplitMix& rng,
         std::vector<UniPoly>& out) {
    int dg = up_degree(g);
    if (dg == static_cast<int>(d)) {
        out.push_back(up_monic(T, g));
        return;
    }
    unsigned level = g.level;
    u64 Q = T.level_size(level);
    for (;;) {
        UniPoly w = random_below(T, level, dg, rng);
        if (up_is_zero(w)) continue;
        UniPoly s;
        if (T.p() == 2) {
            // trace to F_2 of the degree-d extension of the coefficient field
            unsigned k = T.base_degree() * level * d;
            UniPoly v = up_rem(T, w, g);
            s = v;
            for (unsigned i = 1; i < k; ++i) {
                v = up_rem(T, up_mul(T, v, v), g);
                s = up_add(T, s, v);
            }
        } else {
            // w^((Q^d-1)/2) = (prod_{i<d} w^(Q^i))^((Q-1)/2)
            UniPoly v = up_rem(T, w, g), acc = v;
            for (unsigned i = 1; i < d; ++i) {
                v = qpowmod(T, v, g);
                acc = up_rem(T, up_mul(T, acc, v), g);
            }
            s = powmod_u64(T, acc, (Q - 1) / 2, g);
            s = up_sub(T, s, UniPoly{level, {T.one(level)}});
        }
        UniPoly h = up_gcd(T, s, g);
        int dh = up_degree(h);
        if (dh <= 0 || dh >= dg) continue;
        edf(T, h, d, rng, out);
        edf(T, up_quo(T, g, h), d, rng, out);
        return;
    }
}

std::vector<std::pair<UniPoly, unsigned>> ddf(const FieldTower& T, const UniPoly& f0) {
    std::vector<std::pair<UniPoly, unsigned>> out;
    UniPoly cur = up_monic(T, f0);
    UniPoly x = up_x(T, cur.level);
    UniPoly h = up_rem(T, x, cur);
    unsigned d = 0;
    while (2 * static_cast<int>(d + 1) <= up_degree(cur)) {
        ++d;
        h = qpowmod(T, h, cur);
        UniPoly g = up_gcd(T, up_sub(T, h, up_rem(T, x, cur)), cur);
        if (up_degree(g) > 0) {
            out.emplace_back(g, d);
            cur = up_quo(T, cur, g);
            if (up_degree(cur) == 0) return out;
            h = up_rem(T, h, cur);
        }
    }
    if (up_degree(cur) > 0) out.emplace_back(cur, static_cast<unsigned>(up_degree(cur)));
    return out;
}

int coeff_list_compare(const FieldTower& T, const UniPoly& a, const UniPoly& b) {
    if (up_degree(a) != up_degree(b)) return up_degree(a) < up_degree(b) ? -1 : 1;
    for (size_t i = 0; i < a.c.size(); ++i) {
        int c = T.compare(a.c[i], b.c[i]);
        if (c != 0) return c;
    }
    return 0;
}

}  // namespace

UniPoly up_make(const FieldTower& T, unsigned level, std::vector<FqElem> coeffs) {
    UniPoly f;
    f.level = level;
    f.c.reserve(coeffs.size());
    for (auto& c : coeffs) f.c.push_back(c.level == level ? std::move(c) : T.embed(c, level));
    trim(T, f);
    return f;
}

UniPoly up_from_ints(const FieldTower& T, const std::vector<std::int64_t>& coeffs) {
    std::vector<FqElem> cs;
    cs.reserve(coeffs.size());
    for (auto v : coeffs) cs.push_back(T.from_int(v));
    return up_make(T, 1, std::move(cs));
}

UniPoly up_zero(unsigned level) { return UniPoly{level, {}}; }

UniPoly up_x(const FieldTower& T, unsigned level) {
    return UniPoly{level, {T.zero(level), T.one(level)}};
}

int up_degree(const UniPoly& f) { return static_cast<int>(f.c.size()) - 1; }

bool up_is_zero(const UniPoly& f) { return f.c.empty(); }

bool up_is_one(const FieldTower& T, const UniPoly& f) {
    return f.c.size() == 1 && T.is_one(f.c[0]);
}

FqElem up_coeff(const FieldTower& T, const UniPoly& f, unsigned i) {
    if (i < f.c.size()) return f.c[i];
    return T.zero(f.level);
}

FqElem up_lead(const FieldTower& T, const UniPoly& f) {
    if (f.c.empty()) return T.zero(f.level);
    return f.c.back();
}

UniPoly up_lift(const FieldTower& T, const UniPoly& f, unsigned level) {
    if (f.level == level) return f;
    UniPoly g;
    g.level = level;
    g.c.reserve(f.c.size());
    for (const auto& c : f.c) g.c.push_back(T.embed(c, level));
    return g;
}

static unsigned common_level(const UniPoly& a, const UniPoly& b) {
    return std::lcm(a.level, b.level);
}

UniPoly up_add(const FieldTower& T, const UniPoly& a0, const UniPoly& b0) {
    unsigned lv = common_level(a0, b0);
    UniPoly a = up_lift(T, a0, lv), b = up_lift(T, b0, lv);
    UniPoly r;
    r.level = lv;
    r.c.resize(std::max(a.c.size(), b.c.size()), T.zero(lv));
    for (size_t i = 0; i < r.c.size(); ++i) {
        FqElem x = i < a.c.size() ? a.c[i] : T.zero(lv);
        FqElem y = i < b.c.size() ? b.c[i] : T.zero(lv);
        r.c[i] = T.add(x, y);
    }
    trim(T, r);
    return r;
}

UniPoly up_sub(const FieldTower& T, const UniPoly& a, const UniPoly& b) {
    return up_add(T, a, up_neg(T, b));
}

UniPoly up_neg(const FieldTower& T, const UniPoly& a) {
    UniPoly r = a;
    for (auto& c : r.c) c = T.neg(c);
    return r;
}

UniPoly up_mul(const FieldTower& T, const UniPoly& a0, const UniPoly& b0) {
    if (up_is_zero(a0) || up_is_zero(b0)) return up_zero(common_level(a0, b0));
    unsigned lv = common_level(a0, b0);
    UniPoly a = up_lift(T, a0, lv), b = up_lift(T, b0, lv);
    UniPoly r;
    r.level = lv;
    r.c.assign(a.c.size() + b.c.size() - 1, T.zero(lv));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (T.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = T.add(r.c[i + j], T.mul(a.c[i], b.c[j]));
    }
    trim(T, r);
    return r;
}

UniPoly up_scale(const FieldTower& T, const UniPoly& a, const FqElem& c) {
    UniPoly r;
    r.level = std::lcm(a.level, c.level);
    for (const auto& x : a.c) r.c.push_back(T.mul(x, c));  // mul lifts to the lcm level
    trim(T, r);
    return r;
}

void up_divrem(const FieldTower& T, const UniPoly& a0, const UniPoly& b0, UniPoly& q, UniPoly& r) {
    if (up_is_zero(b0)) throw PreconditionError("polynomial division by zero");
    unsigned lv = common_level(a0, b0);
    UniPoly a = up_lift(T, a0, lv), b = up_lift(T, b0, lv);
    r = a;
    trim(T, r);
    q = up_zero(lv);
    int db = up_degree(b);
    FqElem li = T.inv(b.c.back());
    while (up_degree(r) >= db) {
        int shift = up_degree(r) - db;
        FqElem c = T.mul(r.c.back(), li);
        if (static_cast<int>(q.c.size()) < shift + 1) q.c.resize(shift + 1, T.zero(lv));
        q.c[shift] = T.add(q.c[shift], c);
        for (int i = 0; i <= db; ++i)
            r.c[shift + i] = T.sub(r.c[shift + i], T.mul(c, b.c[i]));
        trim(T, r);
    }
    trim(T, q);
}

UniPoly up_quo(const FieldTower& T, const UniPoly& a, const UniPoly& b) {
    UniPoly q, r;
    up_divrem(T, a, b, q, r);
    return q;
}

UniPoly up_rem(const FieldTower& T, const UniPoly& a, const UniPoly& b) {
    UniPoly q, r;
    up_divrem(T, a, b, q, r);
    return r;
}

UniPoly up_gcd(const FieldTower& T, const UniPoly& a0, const UniPoly& b0) {
    UniPoly a = a0, b = b0;
    while (!up_is_zero(b)) {
        UniPoly r = up_rem(T, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (up_is_zero(a)) return a;
    return up_monic(T, a);
}

UniPoly up_monic(const FieldTower& T, const UniPoly& f) {
    if (up_is_zero(f)) return f;
    if (T.is_one(f.c.back())) return f;
    FqElem li = T.inv(f.c.back());
    UniPoly r = f;
    for (auto& c : r.c) c = T.mul(c, li);
    return r;
}

UniPoly up_pow(const FieldTower& T, const UniPoly& f, unsigned e) {
    UniPoly r{f.level, {T.one(f.level)}};
    UniPoly base = f;
    while (e) {
        if (e & 1) r = up_mul(T, r, base);
        base = up_mul(T, base, base);
        e >>= 1;
    }
    return r;
}

UniPoly up_derivative(const FieldTower& T, const UniPoly& f) {
    UniPoly r;
    r.level = f.level;
    for (size_t i = 1; i < f.c.size(); ++i)
        r.c.push_back(T.mul(f.c[i], T.from_int(static_cast<std::int64_t>(i), f.level)));
    trim(T, r);
    return r;
}

FqElem up_eval(const FieldTower& T, const UniPoly& f, const FqElem& x) {
    unsigned lv = std::lcm(f.level, x.level);
    FqElem acc = T.zero(lv);
    FqElem xx = x.level == lv ? x : T.embed(x, lv);
    for (size_t i = f.c.size(); i-- > 0;) acc = T.add(T.mul(acc, xx), T.embed(f.c[i], lv));
    return acc;
}

UniPoly up_shift(const FieldTower& T, const UniPoly& f, const FqElem& a) {
    unsigned lv = std::lcm(f.level, a.level);
    UniPoly lin{lv, {T.embed(a, lv), T.one(lv)}};  // X + a
    UniPoly acc = up_zero(lv);
    for (size_t i = f.c.size(); i-- > 0;) {
        acc = up_mul(T, acc, lin);
        acc = up_add(T, acc, UniPoly{lv, {T.embed(f.c[i], lv)}});
    }
    return acc;
}

bool up_equal(const FieldTower& T, const UniPoly& a, const UniPoly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (!T.equal(a.c[i], b.c[i])) return false;
    return true;
}

std::string up_render(const FieldTower& T, const UniPoly& f, const std::string& var) {
    if (up_is_zero(f)) return "0";
    std::string out;
    for (size_t i = 0; i < f.c.size(); ++i) {
        if (T.is_zero(f.c[i])) continue;
        std::string cs = T.render(f.c[i]);
        bool needs_parens = cs.find('+') != std::string::npos || cs.find('[') != std::string::npos ||
                            (cs.size() > 1 && cs.find('t') != std::string::npos);
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += needs_parens ? "(" + cs + ")" : cs;
        } else {
            if (cs != "1") out += needs_parens ? "(" + cs + ")" : cs;
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

std::vector<std::pair<UniPoly, unsigned>> squarefree_decomposition(const FieldTower& T,
                                                                   const UniPoly& f0) {
    if (up_is_zero(f0)) throw PreconditionError("squarefree decomposition of zero");
    std::vector<std::pair<UniPoly, unsigned>> out;
    // explicit worklist of (poly, multiplicity scale) to unfold p-th powers
    std::vector<std::pair<UniPoly, unsigned>> work{{up_monic(T, f0), 1}};
    while (!work.empty()) {
        auto [f, scale] = std::move(work.back());
        work.pop_back();
        if (up_degree(f) <= 0) continue;
        UniPoly df = up_derivative(T, f);
        if (up_is_zero(df)) {
            work.emplace_back(pth_root(T, f), scale * static_cast<unsigned>(T.p()));
            continue;
        }
        UniPoly c = up_gcd(T, f, df);
        UniPoly w = up_quo(T, f, c);
        unsigned i = 1;
        while (up_degree(w) > 0) {
            UniPoly y = up_gcd(T, w, c);
            UniPoly z = up_quo(T, w, y);
            if (up_degree(z) > 0) out.emplace_back(z, i * scale);
            w = std::move(y);
            c = up_quo(T, c, w);
            ++i;
        }
        if (up_degree(c) > 0)
            work.emplace_back(pth_root(T, c), scale * static_cast<unsigned>(T.p()));
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        int c = coeff_list_compare(T, a.first, b.first);
        return c != 0 ? c < 0 : a.second < b.second;
    });
    return out;
}

std::vector<std::pair<UniPoly, unsigned>> factor(const FieldTower& T, const UniPoly& f) {
    if (up_is_zero(f)) throw PreconditionError("factorization of zero");
    std::vector<std::pair<UniPoly, unsigned>> out;
    SplitMix rng{poly_seed(T, f)};
    for (const auto& [g, m] : squarefree_decomposition(T, f)) {
        for (const auto& [h, d] : ddf(T, g)) {
            std::vector<UniPoly> irr;
            edf(T, h, d, rng, irr);
            for (auto& q : irr) out.emplace_back(std::move(q), m);
        }
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        int c = coeff_list_compare(T, a.first, b.first);
        return c != 0 ? c < 0 : a.second < b.second;
    });
    return out;
}

bool is_irreducible(const FieldTower& T, const UniPoly& f) {
    int d = up_degree(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    UniPoly df = up_derivative(T, f);
    if (up_is_zero(df)) return false;
    UniPoly g = up_monic(T, f);
    if (up_degree(up_gcd(T, g, df)) > 0) return false;
    UniPoly x = up_x(T, g.level);
    UniPoly xr = up_rem(T, x, g);
    UniPoly u = xr;
    for (int i = 0; i < d; ++i) u = qpowmod(T, u, g);
    if (!(u == xr)) return false;
    for (unsigned r = 2; r <= static_cast<unsigned>(d); ++r) {
        if (static_cast<unsigned>(d) % r != 0) continue;
        bool prime = true;
        for (unsigned s = 2; s * s <= r; ++s)
            if (r % s == 0) prime = false;
        if (!prime) continue;
        UniPoly v = xr;
        for (unsigned i = 0; i < static_cast<unsigned>(d) / r; ++i) v = qpowmod(T, v, g);
        if (up_degree(up_gcd(T, up_sub(T, v, xr), g)) > 0) return false;
    }
    return true;
}

FqElem up_one_root(const FieldTower& T, const UniPoly& f) {
    UniPoly g = up_monic(T, f);
    if (up_degree(g) < 1) throw PreconditionError("root of a constant polynomial");
    unsigned level = g.level;
    SplitMix rng{mix(poly_seed(T, f), 0x726f6f74ULL)};
    unsigned total = T.base_degree() * level;  // degree of the level over F_p
    while (up_degree(g) > 1) {
        std::vector<u64> coords(total);
        for (auto& v : coords) v = rng.next() % T.p();
        FqElem a = T.make(level, std::move(coords));
        UniPoly s;
        if (T.p() == 2) {
            if (T.is_zero(a)) continue;
            UniPoly u{level, {T.zero(level), a}};  // a*X
            UniPoly v = up_rem(T, u, g);
            s = v;
            for (unsigned i = 1; i < total; ++i) {
                v = up_rem(T, up_mul(T, v, v), g);
                s = up_add(T, s, v);
            }
        } else {
            UniPoly u{level, {a, T.one(level)}};  // X + a
            UniPoly v = up_rem(T, u, g), acc = v;
            for (unsigned i = 1; i < total; ++i) {
                v = powmod_u64(T, v, T.p(), g);
                acc = up_rem(T, up_mul(T, acc, v), g);
            }
            s = powmod_u64(T, acc, (T.p() - 1) / 2, g);
            s = up_sub(T, s, UniPoly{level, {T.one(level)}});
        }
        UniPoly h = up_gcd(T, s, g);
        int dh = up_degree(h), dg = up_degree(g);
        if (dh <= 0 || dh >= dg) continue;
        g = 2 * dh <= dg ? h : up_monic(T, up_quo(T, g, h));
    }
    return T.neg(g.c[0]);
}

RootReport roots_in_closure(const FieldTower& T, const UniPoly& f, bool nonzero_only) {
    if (up_is_zero(f)) throw PreconditionError("every element is a root of zero");
    RootReport rep;
    unsigned L = f.level;
    for (const auto& [irr, m] : factor(T, f)) {
        unsigned d = static_cast<unsigned>(up_degree(irr));
        RootOrbit orb;
        orb.orbit_size = d;
        orb.multiplicity = m;
        if (d == 1) {
            FqElem r = T.neg(irr.c[0]);
            orb.is_zero = T.is_zero(r);
            if (orb.is_zero && nonzero_only) continue;
            orb.representative = T.normalize(r);
        } else {
            T.ensure_level(L * d);
            UniPoly femb = up_lift(T, irr, L * d);
            FqElem r = up_one_root(T, femb);
            // smallest conjugate under the coefficient-field Frobenius
            FqElem best = T.normalize(r), z = r;
            for (unsigned j = 1; j < d; ++j) {
                for (unsigned k = 0; k < L; ++k) z = T.frobenius(z);
                FqElem cand = T.normalize(z);
                if (T.compare(cand, best) < 0) best = cand;
            }
            orb.representative = best;
        }
        rep.orbits.push_back(std::move(orb));
    }
    std::sort(rep.orbits.begin(), rep.orbits.end(), [&](const RootOrbit& a, const RootOrbit& b) {
        if (a.is_zero != b.is_zero) return a.is_zero;
        int c = T.compare(a.representative, b.representative);
        if (c != 0) return c < 0;
        return a.multiplicity < b.multiplicity;
    });
    return rep;
}

std::vector<FqElem> orbit_members(const FieldTower& T, const RootOrbit& orb, unsigned poly_level) {
    std::vector<FqElem> out;
    FqElem z = orb.representative;
    for (unsigned j = 0; j < orb.orbit_size; ++j) {
        out.push_back(T.normalize(z));
        for (unsigned k = 0; k < poly_level; ++k) z = T.frobenius(z);
    }
    return out;
}

UniPoly minimal_polynomial(const FieldTower& T, const FqElem& x) {
    return up_make(T, 1, T.minimal_polynomial_coeffs(x));
}

}  // namespace baker
