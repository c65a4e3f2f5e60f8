#pragma once

// Arithmetic in the residue field F_q = F_p[x]/(m), q = p^f. Elements are
// coordinate vectors with respect to the power basis 1, x, ..., x^{f-1}.
// Desk scale: p <= 7, q <= 4096; everything is table-friendly.

#include <array>
#include <map>
#include <vector>

#include "hlf/common.hpp"

namespace hlf {

inline constexpr int kMaxF = 6;
inline constexpr u64 kMaxQ = 4096;

struct FqElem {
    std::array<u64, kMaxF> c{};
    friend bool operator==(const FqElem&, const FqElem&) = default;
    friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

class FqField {
public:
    using Elem = FqElem;

    u64 p;
    int f;
    u64 q;                     // p^f
    std::vector<u64> modulus;  // monic, degree f, coefficients mod p, modulus[f] == 1

    /// Builds the field and its tables. Checks that p is prime and that the
    /// modulus is monic and irreducible (trial division by every monic
    /// polynomial of degree <= f/2).
    FqField(u64 p_, int f_, std::vector<u64> modulus_);

    /// Uses the built-in default modulus for (p, f).
    FqField(u64 p_, int f_) : FqField(p_, f_, default_modulus(p_, f_)) {}

    static std::vector<u64> default_modulus(u64 p, int f);

    FqElem zero() const { return FqElem{}; }
    FqElem one() const { return from_int(1); }
    FqElem from_int(i64 v) const {
        FqElem e{};
        e.c[0] = imod(v, p);
        return e;
    }
    bool is_zero(const FqElem& a) const { return a == FqElem{}; }

    FqElem add(const FqElem& a, const FqElem& b) const;
    FqElem sub(const FqElem& a, const FqElem& b) const;
    FqElem neg(const FqElem& a) const;
    FqElem mul(const FqElem& a, const FqElem& b) const;
    FqElem scale(u64 s, const FqElem& a) const;  // s in Z/p
    FqElem inv(const FqElem& a) const;           // error on zero
    FqElem pow(const FqElem& a, i64 e) const;    // negative e inverts

    /// Trace to the prime field: a + a^p + ... + a^{p^{f-1}}, as an element of Z/p.
    u64 trace(const FqElem& a) const;

    FqElem frobenius(const FqElem& a) const { return pow(a, static_cast<i64>(p)); }
    /// Frobenius under the name the generic char-p Witt machinery looks for.
    FqElem frobenius_p(const FqElem& a) const { return frobenius(a); }
    /// Unique p-th root (Frobenius is bijective).
    FqElem pth_root(const FqElem& a) const;

    /// Fixed multiplicative generator of F_q^*. For f >= 2 this is the class
    /// of x (the construction requires it to be primitive); for f = 1 it is
    /// the smallest primitive root mod p.
    FqElem gen() const { return gen_; }
    /// Discrete log base gen(); error on zero.
    u64 dlog(const FqElem& a) const;
    FqElem gen_pow(u64 k) const { return pow_table_[k % (q - 1)]; }

    /// Class of x, the root of the modulus (basis generator). Equals gen()
    /// for f >= 2.
    FqElem x_class() const;

    /// Element <-> index in [0, q), mixed-radix by coordinates. Used for
    /// exhaustive enumeration.
    u64 index_of(const FqElem& a) const;
    FqElem element(u64 idx) const;

    /// Coordinates of `a` over the F_p-basis 1, x, ..., x^{f-1}.
    std::array<u64, kMaxF> coords(const FqElem& a) const { return a.c; }
    FqElem basis_elem(int k) const;  // x^k

    std::string to_string(const FqElem& a) const;  // polynomial in `g`

private:
    FqElem gen_;
    std::vector<FqElem> pow_table_;        // gen^k, k < q-1
    std::map<FqElem, u64> dlog_table_;
    std::array<FqElem, kMaxF> xpow_red_;   // x^{f+k} mod modulus, k < f
    void build_tables();
    void check_irreducible() const;
};

/// Embedding F_q -> F_{q^l} determined by the lexicographically least root of
/// the small field's modulus in the big field.
class FqEmbedding {
public:
    const FqField* sub;
    const FqField* big;
    FqEmbedding(const FqField& s, const FqField& b);

    FqElem embed(const FqElem& a) const;
    /// Preimage under embed; error if `a` is not in the image.
    FqElem retract(const FqElem& a) const;
    bool in_image(const FqElem& a) const;

private:
    std::array<FqElem, kMaxF> root_pow_;      // image of x_sub^k in big
    std::map<FqElem, FqElem> retract_table_;
};

}  // namespace hlf
