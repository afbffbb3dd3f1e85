#pragma once
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "baker/errors.hpp"

namespace baker {

struct FieldSpec {
    std::uint64_t p = 0;
    unsigned n = 1;
    std::vector<std::uint64_t> modulus;  // empty = canonical; else monic of degree n, lowest first
};

// Accepted forms: "q" (prime power), "p^n", "p^n:c0,c1,...,1".
FieldSpec parse_field_spec(const std::string& text);

// Element of F_{q^level} in the power basis of that level's modulus.
// coords has length n*level, constant coefficient first.
struct FqElem {
    unsigned level = 1;
    std::vector<std::uint64_t> coords;
    friend bool operator==(const FqElem&, const FqElem&) = default;
};

// Lattice of extensions F_{q^d} of a fixed base F_q = F_{p^n}.
// Levels are created lazily; creation is serialized, levels are immutable
// after creation, and the moduli/embeddings chosen depend only on (p, n,
// base modulus) and the divisor closure of the levels requested, never on
// request order.
class FieldTower {
  public:
    FieldTower(std::uint64_t p, unsigned n, std::vector<std::uint64_t> base_modulus = {});
    explicit FieldTower(const FieldSpec& spec);

    std::uint64_t p() const { return p_; }
    unsigned base_degree() const { return n_; }

    // cap on p^(n*d) for any single level; default: must fit uint64
    void set_level_limit(std::uint64_t max_elements);
    std::uint64_t level_size(unsigned d) const;  // p^(n*d), throws GuardError past the cap

    void ensure_level(unsigned d) const;
    std::vector<std::uint64_t> level_modulus(unsigned d) const;  // monic, lowest first

    FqElem zero(unsigned level = 1) const;
    FqElem one(unsigned level = 1) const;
    FqElem from_int(std::int64_t v, unsigned level = 1) const;
    FqElem gen(unsigned level = 1) const;
    FqElem make(unsigned level, std::vector<std::uint64_t> coords) const;

    bool is_zero(const FqElem& x) const;
    bool is_one(const FqElem& x) const;
    FqElem add(const FqElem& a, const FqElem& b) const;
    FqElem sub(const FqElem& a, const FqElem& b) const;
    FqElem neg(const FqElem& a) const;
    FqElem mul(const FqElem& a, const FqElem& b) const;
    FqElem inv(const FqElem& a) const;
    FqElem div(const FqElem& a, const FqElem& b) const;
    FqElem pow(const FqElem& a, std::uint64_t e) const;

    FqElem embed(const FqElem& x, unsigned target_level) const;
    unsigned minimal_level(const FqElem& x) const;  // smallest d' | level(x) containing x
    FqElem normalize(const FqElem& x) const;        // rewrite at minimal level
    bool equal(const FqElem& a, const FqElem& b) const;

    FqElem frobenius(const FqElem& x) const;    // x^q
    FqElem frobenius_p(const FqElem& x) const;  // x^p
    std::vector<FqElem> frobenius_orbit(const FqElem& x) const;
    // monic generator of the vanishing ideal of x over F_q; level-1 coeffs, lowest first
    std::vector<FqElem> minimal_polynomial_coeffs(const FqElem& x) const;

    // total order used for every canonical choice: (minimal level, coords),
    // coords compared with index 0 most significant
    int compare(const FqElem& a, const FqElem& b) const;
    std::string render(const FqElem& x) const;

  private:
    struct Level {
        std::vector<std::uint64_t> modulus;
        // divisor d' -> image of each power-basis element of level d', in this level's coords
        std::map<unsigned, std::vector<std::vector<std::uint64_t>>> embed_from;
    };

    const Level& level(unsigned d) const;
    void create_level(unsigned d) const;  // caller holds mu_
    std::uint64_t size_checked(unsigned d) const;
    FqElem lift2(const FqElem& a, unsigned target) const;

    std::uint64_t p_;
    unsigned n_;
    std::vector<std::uint64_t> base_modulus_;  // empty = canonical
    std::uint64_t limit_ = UINT64_MAX;
    mutable std::mutex mu_;
    mutable std::map<unsigned, std::unique_ptr<Level>> levels_;
};

std::vector<unsigned> divisors_of(unsigned n);
bool is_prime_u64(std::uint64_t v);

}  // namespace baker
