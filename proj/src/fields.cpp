#include "baker/fields.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace baker {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u64>;  // dense over F_p, lowest first, trimmed

u64 addm(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) + b) % p); }
u64 subm(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) + p - b) % p); }
u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly p_add(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = addm(x, y, p);
    }
    trim(r);
    return r;
}

Poly p_sub(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = subm(x, y, p);
    }
    trim(r);
    return r;
}

Poly p_mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

Poly p_scale(const Poly& a, u64 c, u64 p) {
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mulm(a[i], c, p);
    trim(r);
    return r;
}

void p_divrem(const Poly& a, const Poly& b, u64 p, Poly& q, Poly& r) {
    r = a;
    trim(r);
    q.clear();
    int db = degree(b);
    u64 lead_inv = invm(b.back(), p);
    while (degree(r) >= db) {
        int shift = degree(r) - db;
        u64 c = mulm(r.back(), lead_inv, p);
        if (static_cast<int>(q.size()) < shift + 1) q.resize(shift + 1, 0);
        q[shift] = addm(q[shift], c, p);
        for (int i = 0; i <= db; ++i)
            r[shift + i] = subm(r[shift + i], mulm(c, b[i], p), p);
        trim(r);
    }
    trim(q);
}

Poly p_rem(const Poly& a, const Poly& b, u64 p) {
    Poly q, r;
    p_divrem(a, b, p, q, r);
    return r;
}

Poly p_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = p_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) a = p_scale(a, invm(a.back(), p), p);
    return a;
}

Poly p_powmod(Poly base, u64 e, const Poly& f, u64 p) {
    Poly r{1};
    base = p_rem(base, f, p);
    while (e) {
        if (e & 1) r = p_rem(p_mul(r, base, p), f, p);
        base = p_rem(p_mul(base, base, p), f, p);
        e >>= 1;
    }
    return r;
}

// inverse of a mod f, f with gcd(a, f) = 1
Poly p_invmod(const Poly& a, const Poly& f, u64 p) {
    Poly r0 = f, r1 = p_rem(a, f, p), t0{}, t1{1};
    while (!r1.empty()) {
        Poly q, r;
        p_divrem(r0, r1, p, q, r);
        Poly t2 = p_sub(t0, p_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (degree(r0) != 0) throw PreconditionError("element is not invertible");
    return p_rem(p_scale(t0, invm(r0[0], p), p), f, p);
}

std::vector<unsigned> prime_factors(unsigned m) {
    std::vector<unsigned> out;
    for (unsigned q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            out.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) out.push_back(m);
    return out;
}

// Rabin test over F_p
bool p_irreducible(const Poly& f, u64 p) {
    int m = degree(f);
    if (m < 1) return false;
    Poly x{0, 1};
    if (m == 1) return true;
    Poly u = p_rem(x, f, p);
    for (int i = 0; i < m; ++i) u = p_powmod(u, p, f, p);
    if (u != p_rem(x, f, p)) return false;
    for (unsigned r : prime_factors(static_cast<unsigned>(m))) {
        Poly v = p_rem(x, f, p);
        for (unsigned i = 0; i < static_cast<unsigned>(m) / r; ++i) v = p_powmod(v, p, f, p);
        Poly g = p_gcd(p_sub(v, x, p), f, p);
        if (degree(g) != 0) return false;
    }
    return true;
}

// lex-smallest monic irreducible of degree m: candidates ordered by
// (c0, c1, ..., c_{m-1}) with the constant coefficient most significant
Poly smallest_irreducible(u64 p, unsigned m) {
    if (m == 1) return Poly{0, 1};
    std::vector<u64> c(m, 0);
    c[0] = 1;  // c0 = 0 is divisible by t
    for (;;) {
        Poly f = c;
        f.push_back(1);
        if (p_irreducible(f, p)) return f;
        // odometer: last digit fastest
        int i = static_cast<int>(m) - 1;
        for (;;) {
            if (++c[i] < p) break;
            c[i] = 0;
            if (--i < 0) throw PreconditionError("no irreducible found");  // unreachable
        }
    }
}

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

// ---- polynomials whose coefficients live in F_p[t]/(mod) ----
// used only to split a subfield modulus into linear factors inside a level

struct Ctx {
    u64 p;
    const Poly& mod;
    Poly mul(const Poly& a, const Poly& b) const { return p_rem(p_mul(a, b, p), mod, p); }
    Poly inv(const Poly& a) const { return p_invmod(a, mod, p); }
};

using EPoly = std::vector<Poly>;  // lowest first, coefficients trimmed

void ep_trim(EPoly& f) {
    while (!f.empty() && f.back().empty()) f.pop_back();
}

int ep_deg(const EPoly& f) { return static_cast<int>(f.size()) - 1; }

EPoly ep_add(const EPoly& a, const EPoly& b, const Ctx& c) {
    EPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        Poly x = i < a.size() ? a[i] : Poly{}, y = i < b.size() ? b[i] : Poly{};
        r[i] = p_add(x, y, c.p);
    }
    ep_trim(r);
    return r;
}

EPoly ep_sub(const EPoly& a, const EPoly& b, const Ctx& c) {
    EPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        Poly x = i < a.size() ? a[i] : Poly{}, y = i < b.size() ? b[i] : Poly{};
        r[i] = p_sub(x, y, c.p);
    }
    ep_trim(r);
    return r;
}

EPoly ep_mul(const EPoly& a, const EPoly& b, const Ctx& c) {
    if (a.empty() || b.empty()) return {};
    EPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].empty()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].empty()) continue;
            r[i + j] = p_add(r[i + j], c.mul(a[i], b[j]), c.p);
        }
    }
    ep_trim(r);
    return r;
}

void ep_divrem(const EPoly& a, const EPoly& b, const Ctx& c, EPoly& q, EPoly& r) {
    r = a;
    ep_trim(r);
    q.clear();
    int db = ep_deg(b);
    Poly li = c.inv(b.back());
    while (ep_deg(r) >= db) {
        int shift = ep_deg(r) - db;
        Poly cf = c.mul(r.back(), li);
        if (static_cast<int>(q.size()) < shift + 1) q.resize(shift + 1);
        q[shift] = p_add(q[shift], cf, c.p);
        for (int i = 0; i <= db; ++i)
            r[shift + i] = p_sub(r[shift + i], c.mul(cf, b[i]), c.p);
        ep_trim(r);
    }
    ep_trim(q);
}

EPoly ep_rem(const EPoly& a, const EPoly& b, const Ctx& c) {
    EPoly q, r;
    ep_divrem(a, b, c, q, r);
    return r;
}

EPoly ep_monic(EPoly f, const Ctx& c) {
    ep_trim(f);
    if (f.empty()) return f;
    Poly li = c.inv(f.back());
    for (auto& cf : f) cf = c.mul(cf, li);
    return f;
}

EPoly ep_gcd(EPoly a, EPoly b, const Ctx& c) {
    ep_trim(a);
    ep_trim(b);
    while (!b.empty()) {
        EPoly r = ep_rem(a, b, c);
        a = std::move(b);
        b = std::move(r);
    }
    return ep_monic(a, c);
}

EPoly ep_powmod(EPoly base, u64 e, const EPoly& g, const Ctx& c) {
    EPoly r{Poly{1}};
    base = ep_rem(base, g, c);
    while (e) {
        if (e & 1) r = ep_rem(ep_mul(r, base, c), g, c);
        base = ep_rem(ep_mul(base, base, c), g, c);
        e >>= 1;
    }
    return r;
}

// one root of sub (a squarefree product of linears over this level)
Poly split_linear(const EPoly& sub0, const Ctx& c, unsigned total_deg_over_p, u64 seed) {
    EPoly g = ep_monic(sub0, c);
    SplitMix rng{seed};
    unsigned m = static_cast<unsigned>(c.mod.size()) - 1;
    while (ep_deg(g) > 1) {
        Poly a(m);
        for (auto& v : a) v = rng.next() % c.p;
        trim(a);
        EPoly h;
        if (c.p == 2) {
            EPoly u{Poly{}, a};  // a*X
            if (a.empty()) continue;
            EPoly v = ep_rem(u, g, c), s = v;
            for (unsigned i = 1; i < total_deg_over_p; ++i) {
                v = ep_rem(ep_mul(v, v, c), g, c);
                s = ep_add(s, v, c);
            }
            h = ep_gcd(s, g, c);
        } else {
            EPoly u{a, Poly{1}};  // X + a
            // u^((S-1)/2) = (prod u^(p^i))^((p-1)/2), S = p^total_deg_over_p
            EPoly v = ep_rem(u, g, c), acc = v;
            for (unsigned i = 1; i < total_deg_over_p; ++i) {
                v = ep_powmod(v, c.p, g, c);
                acc = ep_rem(ep_mul(acc, v, c), g, c);
            }
            EPoly s = ep_powmod(acc, (c.p - 1) / 2, g, c);
            s = ep_sub(s, EPoly{Poly{1}}, c);
            h = ep_gcd(s, g, c);
        }
        int dh = ep_deg(h), dg = ep_deg(g);
        if (dh <= 0 || dh >= dg) continue;
        if (2 * dh <= dg) {
            g = h;
        } else {
            EPoly q, r;
            ep_divrem(g, h, c, q, r);
            g = ep_monic(q, c);
        }
    }
    // g = X + c0
    Poly root = p_sub(Poly{}, g[0], c.p);
    return root;
}

u64 fnv_mix(u64 h, u64 v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

std::vector<unsigned> divisors_of(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

bool is_prime_u64(u64 v) {
    if (v < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (v % q == 0) return v == q;
    }
    u64 d = v - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powm(a % v, d, v);
        if (x == 0 || x == 1 || x == v - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulm(x, x, v);
            if (x == v - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

FieldTower::FieldTower(u64 p, unsigned n, std::vector<u64> base_modulus)
    : p_(p), n_(n), base_modulus_(std::move(base_modulus)) {
    if (!is_prime_u64(p_)) throw PreconditionError("characteristic is not prime");
    if (n_ == 0) throw PreconditionError("base degree must be positive");
    if (!base_modulus_.empty()) {
        if (base_modulus_.size() != n_ + 1)
            throw PreconditionError("base modulus must have degree n");
        for (auto& c : base_modulus_) c %= p_;
        if (base_modulus_.back() != 1)
            throw PreconditionError("base modulus must be monic");
        if (!p_irreducible(base_modulus_, p_))
            throw PreconditionError("base modulus is not irreducible");
    }
    ensure_level(1);
}

FieldTower::FieldTower(const FieldSpec& spec) : FieldTower(spec.p, spec.n, spec.modulus) {}

void FieldTower::set_level_limit(u64 max_elements) {
    std::lock_guard lk(mu_);
    limit_ = max_elements;
}

u64 FieldTower::size_checked(unsigned d) const {
    u64 s = 1;
    for (unsigned i = 0; i < n_ * d; ++i) {
        u128 next = static_cast<u128>(s) * p_;
        if (next > limit_) throw GuardError("field level size exceeds the configured limit");
        s = static_cast<u64>(next);
    }
    return s;
}

u64 FieldTower::level_size(unsigned d) const {
    std::lock_guard lk(mu_);
    return size_checked(d);
}

void FieldTower::ensure_level(unsigned d) const {
    std::lock_guard lk(mu_);
    create_level(d);
}

const FieldTower::Level& FieldTower::level(unsigned d) const {
    std::lock_guard lk(mu_);
    create_level(d);
    return *levels_.at(d);
}

void FieldTower::create_level(unsigned f) const {
    if (f == 0) throw PreconditionError("level must be positive");
    if (levels_.count(f)) return;
    for (unsigned d : divisors_of(f))
        if (d != f) create_level(d);
    size_checked(f);
    unsigned m = n_ * f;
    auto L = std::make_unique<Level>();
    if (f == 1 && !base_modulus_.empty())
        L->modulus = base_modulus_;
    else
        L->modulus = smallest_irreducible(p_, m);

    if (f > 1) {
        Ctx ctx{p_, L->modulus};
        std::vector<unsigned> divs;
        for (unsigned d : divisors_of(f))
            if (d != f) divs.push_back(d);
        std::sort(divs.rbegin(), divs.rend());
        std::vector<unsigned> processed, maximal;
        for (unsigned d : divs) {
            unsigned via = 0;
            for (unsigned e : processed)
                if (e % d == 0 && (via == 0 || e < via)) via = e;
            std::vector<Poly> table(n_ * d);
            if (via != 0) {
                // compose through the smallest already-embedded multiple
                const auto& lower = levels_.at(via)->embed_from.at(d);
                const auto& up = L->embed_from.at(via);
                for (unsigned k = 0; k < n_ * d; ++k) {
                    Poly img;
                    for (size_t j = 0; j < lower[k].size(); ++j)
                        if (lower[k][j] != 0)
                            img = p_add(img, p_scale(up[j], lower[k][j], p_), p_);
                    table[k] = img;
                }
            } else {
                // maximal divisor: pick the smallest root of its modulus that
                // agrees with earlier choices on every shared subfield
                const Poly& md = levels_.at(d)->modulus;
                EPoly sub(md.size());
                for (size_t i = 0; i < md.size(); ++i)
                    if (md[i]) sub[i] = Poly{md[i]};
                ep_trim(sub);
                u64 seed = fnv_mix(fnv_mix(fnv_mix(fnv_mix(0x42ULL, p_), n_), f), d);
                Poly r0 = split_linear(sub, ctx, m, seed);
                std::vector<Poly> roots{r0};
                for (unsigned j = 1; j < n_ * d; ++j) {
                    Poly prev = roots.back(), acc{1};
                    // p-th power inside this level
                    u64 e = p_;
                    while (e) {
                        if (e & 1) acc = ctx.mul(acc, prev);
                        prev = ctx.mul(prev, prev);
                        e >>= 1;
                    }
                    roots.push_back(acc);
                }
                auto pad = [&](Poly v) {
                    v.resize(m, 0);
                    return v;
                };
                std::sort(roots.begin(), roots.end(), [&](const Poly& a, const Poly& b) {
                    return pad(a) < pad(b);
                });
                const Poly* chosen = nullptr;
                for (const Poly& r : roots) {
                    // powers of the candidate, for evaluating the embedding
                    std::vector<Poly> pw(n_ * d);
                    pw[0] = Poly{1};
                    for (unsigned k = 1; k < n_ * d; ++k) pw[k] = ctx.mul(pw[k - 1], r);
                    bool ok = true;
                    for (unsigned e2 : maximal) {
                        unsigned g0 = std::gcd(d, e2);
                        if (n_ * g0 == 1) continue;
                        const Poly& z = levels_.at(d)->embed_from.at(g0)[1];
                        Poly lhs;
                        for (size_t k = 0; k < z.size(); ++k)
                            if (z[k]) lhs = p_add(lhs, p_scale(pw[k], z[k], p_), p_);
                        const Poly& w = levels_.at(e2)->embed_from.at(g0)[1];
                        const auto& up = L->embed_from.at(e2);
                        Poly rhs;
                        for (size_t k = 0; k < w.size(); ++k)
                            if (w[k]) rhs = p_add(rhs, p_scale(up[k], w[k], p_), p_);
                        if (lhs != rhs) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) {
                        chosen = &r;
                        break;
                    }
                }
                if (!chosen) throw std::runtime_error("no compatible embedding root");
                table[0] = Poly{1};
                for (unsigned k = 1; k < n_ * d; ++k) table[k] = ctx.mul(table[k - 1], *chosen);
                maximal.push_back(d);
            }
            L->embed_from[d] = std::move(table);
            processed.push_back(d);
        }
    }
    levels_[f] = std::move(L);
}

std::vector<u64> FieldTower::level_modulus(unsigned d) const { return level(d).modulus; }

FqElem FieldTower::zero(unsigned lv) const {
    level(lv);
    return FqElem{lv, std::vector<u64>(n_ * lv, 0)};
}

FqElem FieldTower::one(unsigned lv) const {
    auto r = zero(lv);
    r.coords[0] = 1;
    return r;
}

FqElem FieldTower::from_int(std::int64_t v, unsigned lv) const {
    auto r = zero(lv);
    if (v >= 0) {
        r.coords[0] = static_cast<u64>(v) % p_;
    } else {
        u64 a = (static_cast<u64>(-(v + 1)) + 1) % p_;
        r.coords[0] = a ? p_ - a : 0;
    }
    return r;
}

FqElem FieldTower::gen(unsigned lv) const {
    auto r = zero(lv);
    if (r.coords.size() > 1) r.coords[1] = 1;
    return r;
}

FqElem FieldTower::make(unsigned lv, std::vector<u64> coords) const {
    level(lv);
    if (coords.size() > n_ * lv) throw PreconditionError("coordinate vector too long");
    coords.resize(n_ * lv, 0);
    for (auto& c : coords) c %= p_;
    return FqElem{lv, std::move(coords)};
}

bool FieldTower::is_zero(const FqElem& x) const {
    return std::all_of(x.coords.begin(), x.coords.end(), [](u64 c) { return c == 0; });
}

bool FieldTower::is_one(const FqElem& x) const {
    if (x.coords.empty() || x.coords[0] != 1) return false;
    return std::all_of(x.coords.begin() + 1, x.coords.end(), [](u64 c) { return c == 0; });
}

FqElem FieldTower::lift2(const FqElem& a, unsigned target) const {
    if (a.level == target) return a;
    return embed(a, target);
}

FqElem FieldTower::add(const FqElem& a, const FqElem& b) const {
    unsigned t = std::lcm(a.level, b.level);
    FqElem x = lift2(a, t), y = lift2(b, t);
    for (size_t i = 0; i < x.coords.size(); ++i) x.coords[i] = addm(x.coords[i], y.coords[i], p_);
    return x;
}

FqElem FieldTower::sub(const FqElem& a, const FqElem& b) const {
    unsigned t = std::lcm(a.level, b.level);
    FqElem x = lift2(a, t), y = lift2(b, t);
    for (size_t i = 0; i < x.coords.size(); ++i) x.coords[i] = subm(x.coords[i], y.coords[i], p_);
    return x;
}

FqElem FieldTower::neg(const FqElem& a) const {
    FqElem x = a;
    for (auto& c : x.coords) c = subm(0, c, p_);
    return x;
}

FqElem FieldTower::mul(const FqElem& a, const FqElem& b) const {
    unsigned t = std::lcm(a.level, b.level);
    FqElem x = lift2(a, t), y = lift2(b, t);
    const Level& L = level(t);
    Poly prod = p_rem(p_mul(x.coords, y.coords, p_), L.modulus, p_);
    prod.resize(n_ * t, 0);
    return FqElem{t, std::move(prod)};
}

FqElem FieldTower::inv(const FqElem& a) const {
    if (is_zero(a)) throw PreconditionError("division by zero");
    const Level& L = level(a.level);
    Poly r = p_invmod(a.coords, L.modulus, p_);
    r.resize(n_ * a.level, 0);
    return FqElem{a.level, std::move(r)};
}

FqElem FieldTower::div(const FqElem& a, const FqElem& b) const { return mul(a, inv(b)); }

FqElem FieldTower::pow(const FqElem& a, u64 e) const {
    FqElem r = one(a.level), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FqElem FieldTower::embed(const FqElem& x, unsigned target_level) const {
    if (x.level == target_level) return x;
    FqElem src = x;
    if (target_level % src.level != 0) {
        src = normalize(x);
        if (src.level == target_level) return src;
        if (target_level % src.level != 0)
            throw PreconditionError("element does not lie in the target level");
    }
    const Level& L = level(target_level);
    const auto& table = L.embed_from.at(src.level);
    Poly out;
    for (size_t k = 0; k < src.coords.size(); ++k)
        if (src.coords[k]) out = p_add(out, p_scale(table[k], src.coords[k], p_), p_);
    out.resize(n_ * target_level, 0);
    return FqElem{target_level, std::move(out)};
}

FqElem FieldTower::frobenius_p(const FqElem& x) const { return pow(x, p_); }

FqElem FieldTower::frobenius(const FqElem& x) const {
    FqElem r = x;
    for (unsigned i = 0; i < n_; ++i) r = frobenius_p(r);
    return r;
}

unsigned FieldTower::minimal_level(const FqElem& x) const {
    for (unsigned d : divisors_of(x.level)) {
        FqElem z = x;
        for (unsigned i = 0; i < d; ++i) z = frobenius(z);
        if (z == x) return d;
    }
    return x.level;  // unreachable
}

FqElem FieldTower::normalize(const FqElem& x) const {
    unsigned e = minimal_level(x);
    if (e == x.level) return x;
    const Level& L = level(x.level);
    const auto& table = L.embed_from.at(e);
    // solve sum_k c_k * table[k] = x over F_p
    unsigned rows = n_ * x.level, cols = n_ * e;
    std::vector<std::vector<u64>> M(rows, std::vector<u64>(cols + 1, 0));
    for (unsigned k = 0; k < cols; ++k)
        for (unsigned i = 0; i < table[k].size(); ++i) M[i][k] = table[k][i];
    for (unsigned i = 0; i < rows; ++i) M[i][cols] = x.coords[i];
    std::vector<int> pivot_col(rows, -1);
    unsigned rank = 0;
    for (unsigned c = 0; c < cols && rank < rows; ++c) {
        unsigned pr = rank;
        while (pr < rows && M[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(M[pr], M[rank]);
        u64 iv = invm(M[rank][c], p_);
        for (unsigned j = c; j <= cols; ++j) M[rank][j] = mulm(M[rank][j], iv, p_);
        for (unsigned r2 = 0; r2 < rows; ++r2) {
            if (r2 == rank || M[r2][c] == 0) continue;
            u64 f = M[r2][c];
            for (unsigned j = c; j <= cols; ++j)
                M[r2][j] = subm(M[r2][j], mulm(f, M[rank][j], p_), p_);
        }
        pivot_col[rank] = static_cast<int>(c);
        ++rank;
    }
    std::vector<u64> sol(cols, 0);
    for (unsigned r2 = 0; r2 < rank; ++r2) sol[pivot_col[r2]] = M[r2][cols];
    return FqElem{e, std::move(sol)};
}

bool FieldTower::equal(const FqElem& a, const FqElem& b) const {
    if (a.level == b.level) return a.coords == b.coords;
    FqElem x = normalize(a), y = normalize(b);
    return x.level == y.level && x.coords == y.coords;
}

std::vector<FqElem> FieldTower::frobenius_orbit(const FqElem& x) const {
    std::vector<FqElem> orbit{x};
    FqElem z = frobenius(x);
    while (!(z == x)) {
        orbit.push_back(z);
        z = frobenius(z);
    }
    return orbit;
}

std::vector<FqElem> FieldTower::minimal_polynomial_coeffs(const FqElem& x) const {
    FqElem y = normalize(x);
    auto orbit = frobenius_orbit(y);
    std::vector<FqElem> coeffs{one(y.level)};
    for (const FqElem& o : orbit) {
        // multiply by (T - o)
        std::vector<FqElem> next(coeffs.size() + 1, zero(y.level));
        for (size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] = add(next[i + 1], coeffs[i]);
            next[i] = sub(next[i], mul(coeffs[i], o));
        }
        coeffs = std::move(next);
    }
    std::vector<FqElem> out;
    out.reserve(coeffs.size());
    for (const FqElem& c : coeffs) {
        FqElem nc = normalize(c);
        if (nc.level != 1) throw std::runtime_error("minimal polynomial coefficient escaped the base");
        out.push_back(std::move(nc));
    }
    return out;
}

int FieldTower::compare(const FqElem& a, const FqElem& b) const {
    FqElem x = normalize(a), y = normalize(b);
    if (x.level != y.level) return x.level < y.level ? -1 : 1;
    if (x.coords < y.coords) return -1;
    if (y.coords < x.coords) return 1;
    return 0;
}

std::string FieldTower::render(const FqElem& x) const {
    FqElem y = normalize(x);
    if (y.level == 1) {
        if (n_ == 1) return std::to_string(y.coords[0]);
        std::string out;
        for (int k = static_cast<int>(n_) - 1; k >= 0; --k) {
            u64 c = y.coords[k];
            if (c == 0) continue;
            if (!out.empty()) out += "+";
            if (k == 0) {
                out += std::to_string(c);
            } else {
                if (c != 1) out += std::to_string(c);
                out += "t";
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out.empty() ? "0" : out;
    }
    std::string out = "[";
    for (size_t i = 0; i < y.coords.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(y.coords[i]);
    }
    out += "]@" + std::to_string(y.level);
    return out;
}

namespace {

u64 parse_u64(const std::string& s, size_t lo, size_t hi, const char* what) {
    u64 v = 0;
    if (lo >= hi) throw ParseError(std::string("field spec: missing ") + what);
    auto res = std::from_chars(s.data() + lo, s.data() + hi, v);
    if (res.ec != std::errc{} || res.ptr != s.data() + hi)
        throw ParseError(std::string("field spec: bad ") + what + " at position " + std::to_string(lo));
    return v;
}

u64 ipow_sat(u64 b, unsigned e) {
    u128 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= b;
        if (r > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<u64>(r);
}

u64 iroot(u64 q, unsigned n) {
    u64 lo = 2, hi = q, best = 1;
    while (lo <= hi) {
        u64 mid = lo + (hi - lo) / 2;
        u64 v = ipow_sat(mid, n);
        if (v == q) return mid;
        if (v < q) {
            best = mid;
            lo = mid + 1;
        } else {
            hi = mid - 1;
        }
    }
    (void)best;
    return 0;
}

}  // namespace

FieldSpec parse_field_spec(const std::string& raw) {
    std::string s = raw;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
    if (s.empty()) throw ParseError("field spec: empty");
    size_t colon = s.find(':');
    std::string head = colon == std::string::npos ? s : s.substr(0, colon);
    size_t caret = head.find('^');
    FieldSpec spec;
    if (caret == std::string::npos) {
        u64 q = parse_u64(s, 0, head.size(), "size");
        if (q < 2) throw ParseError("field spec: size must be at least 2");
        if (colon != std::string::npos)
            throw ParseError("field spec: modulus requires the p^n form");
        if (is_prime_u64(q)) {
            spec.p = q;
            spec.n = 1;
        } else {
            bool found = false;
            for (unsigned n = 63; n >= 2 && !found; --n) {
                u64 r = iroot(q, n);
                if (r >= 2 && ipow_sat(r, n) == q && is_prime_u64(r)) {
                    spec.p = r;
                    spec.n = n;
                    found = true;
                }
            }
            if (!found) throw ParseError("field spec: " + head + " is not a prime power");
        }
    } else {
        spec.p = parse_u64(s, 0, caret, "characteristic");
        u64 n = parse_u64(s, caret + 1, head.size(), "degree");
        if (!is_prime_u64(spec.p))
            throw ParseError("field spec: characteristic " + std::to_string(spec.p) + " is not prime");
        if (n == 0 || n > 4096) throw ParseError("field spec: degree out of range");
        spec.n = static_cast<unsigned>(n);
    }
    if (colon != std::string::npos) {
        std::vector<u64> mod;
        size_t pos = colon + 1;
        while (pos <= s.size()) {
            size_t comma = s.find(',', pos);
            size_t end = comma == std::string::npos ? s.size() : comma;
            mod.push_back(parse_u64(s, pos, end, "modulus coefficient") % spec.p);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (mod.size() != spec.n + 1)
            throw ParseError("field spec: modulus must list n+1 coefficients");
        if (mod.back() != 1) throw ParseError("field spec: modulus must be monic");
        if (!p_irreducible(mod, spec.p))
            throw ParseError("field spec: modulus is not irreducible");
        spec.modulus = std::move(mod);
    }
    return spec;
}

}  // namespace baker
