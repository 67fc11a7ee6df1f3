#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "padic/errors.hpp"
#include "padic/valuation.hpp"

namespace padic {

enum class ExtensionKind { trivial, unramified, eisenstein };

std::string to_string(ExtensionKind kind);

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Ring context: a Z/p^N lift of the ring of integers of Q_p (trivial kind)
/// or of a finite extension Z_p[t]/(m(t)) (unramified or eisenstein kind).
/// Coefficients of elements are known modulo p^N.  Immutable after
/// construction; safe to share across threads.
class Ring {
public:
    /// Base ring Z_p at precision N (modulus m(t) = t).
    static RingPtr zp(unsigned long p, unsigned precision);

    /// Extension ring Z_p[t]/(m(t)).  `modulus` lists c_0..c_d with c_d = 1.
    /// Checks the invariants of the declared kind: unramified needs m mod p
    /// irreducible over F_p; eisenstein needs v_p(c_i) >= 1 for i < d and
    /// v_p(c_0) = 1.
    static RingPtr make(unsigned long p, unsigned precision, std::vector<mpz_class> modulus,
                        ExtensionKind kind);

    unsigned long p() const { return p_; }
    unsigned precision() const { return precision_; }
    const mpz_class& pn() const { return pn_; }  // p^N
    ExtensionKind kind() const { return kind_; }
    unsigned degree() const { return degree_; }
    unsigned ramification() const { return e_; }
    unsigned residue_degree() const { return f_res_; }
    mpz_class residue_cardinality() const;  // p^f_res
    const std::vector<mpz_class>& modulus() const { return modulus_; }

    /// Same p, kind and modulus; precision may differ.
    bool same_structure(const Ring& other) const;

    friend bool operator==(const Ring& a, const Ring& b) {
        return a.precision_ == b.precision_ && a.same_structure(b);
    }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

    /// Same structure at a different precision.
    RingPtr at_precision(unsigned precision) const;

    /// Hensel-lifted root of m congruent to t^p mod p; unramified only.
    const std::vector<mpz_class>& frobenius_image() const;

    std::string describe() const;

private:
    Ring() = default;

    unsigned long p_ = 0;
    unsigned precision_ = 0;
    mpz_class pn_;
    std::vector<mpz_class> modulus_;  // c_0..c_d, monic
    ExtensionKind kind_ = ExtensionKind::trivial;
    unsigned degree_ = 1;
    unsigned e_ = 1;
    unsigned f_res_ = 1;
    std::vector<mpz_class> frob_image_;  // coordinates of frobenius(t), unramified only
};

/// Element of a ring context: d coefficients, each canonical in [0, p^N).
/// Value semantics; all operations are pure.
class RingElement {
public:
    RingElement(RingPtr ring, const mpz_class& constant);
    RingElement(RingPtr ring, std::vector<mpz_class> coeffs);

    static RingElement zero(RingPtr ring);
    static RingElement one(RingPtr ring);
    /// The class of t (generator of the extension); equals 0 in the trivial ring.
    static RingElement generator(RingPtr ring);

    const RingPtr& ring() const { return ring_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;

    Valuation valuation() const;
    bool is_unit() const { return valuation().is_zero(); }

    /// Multiplicative inverse mod (p^N, m(t)).  Throws NotAUnit.
    RingElement inverse() const;

    /// Base-fixing automorphism lifting x -> x^p on the residue field.
    /// Throws UnsupportedExtension unless the ring is trivial or unramified.
    RingElement frobenius() const;

    RingElement pow(const mpz_class& n) const;  // n >= 0

    /// Exact division by p^k (every coefficient must be divisible as an
    /// integer).  The top k digits of the result are unwarranted; callers
    /// track the precision loss.
    RingElement divide_by_p_power(unsigned k) const;

    /// self / d where v(d) <= v(self).  For a unit d this is exact; otherwise
    /// the uniformizer part is peeled first and the result is correct modulo
    /// p^(N - ceil(v(d))).
    RingElement divide(const RingElement& d) const;

    RingElement operator-() const;
    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    RingElement& operator+=(const RingElement& b);
    RingElement& operator-=(const RingElement& b);

    friend bool operator==(const RingElement& a, const RingElement& b);
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

    /// Carry this element (canonical representative taken as exact) into
    /// another precision of the same structure.
    RingElement to_ring(const RingPtr& other) const;

    std::string str() const;

private:
    RingElement(RingPtr ring) : ring_(std::move(ring)) {}
    void canonicalize();

    RingPtr ring_;
    std::vector<mpz_class> c_;
};

void require_same_ring(const RingElement& a, const RingElement& b);

/// p-adic valuation of an integer (exponent of p), v(0) = +infinity.
Valuation integer_valuation(const mpz_class& n, unsigned long p);

}  // namespace padic
