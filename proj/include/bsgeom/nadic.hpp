#pragma once

#include <bsgeom/numeric.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bsgeom::nadic {

using Digit = int;

/// An n-adic rational: a formal series sum_i zeta_i n^i with digits in
/// {0,...,n-1}, zero for i << 0, and eventually periodic toward +infinity.
/// The representation (lo, preperiod, period) is canonical:
///   - digit(lo) != 0 unless the value is zero (then lo=0, pre empty, per={0}),
///   - the preperiod is minimal and the period block is primitive,
///   - a terminating expansion is stored with period {0}.
/// Eventually periodic streams are exactly the rationals a/b with the
/// n-coprime part of b invertible mod n; this covers all of Z[1/n].
class NAdic {
public:
    NAdic(long n, long lo, std::vector<Digit> pre, std::vector<Digit> per);

    static NAdic zero(long n);
    static NAdic from_integer(long n, const BigInt& v);
    // p / n^j
    static NAdic from_rational(long n, const BigInt& p, long j);
    // general rational; requires gcd(denominator / n-part, n) == 1
    static NAdic from_rational(long n, const Rational& q);

    long base() const { return n_; }
    long lo() const { return lo_; }
    const std::vector<Digit>& preperiod() const { return pre_; }
    const std::vector<Digit>& period() const { return per_; }

    Digit digit(long i) const;
    bool is_zero() const;
    bool is_terminating() const;   // period == {0}

    Rational to_rational() const;

    // digits on [lo_incl, hi_excl), a finite-precision window
    std::vector<Digit> window(long lo_incl, long hi_excl) const;

    bool operator==(const NAdic& o) const;
    bool operator!=(const NAdic& o) const { return !(*this == o); }

    // "base:lo:preperiod|period", digits most-significant-last (increasing
    // index), digit characters 0-9a-z (bases up to 36)
    std::string to_string() const;
    static NAdic parse(const std::string& s);

private:
    long n_;
    long lo_;
    std::vector<Digit> pre_;
    std::vector<Digit> per_;

    void canonicalize();
};

NAdic add(const NAdic& x, const NAdic& y);
NAdic neg(const NAdic& x);
NAdic sub(const NAdic& x, const NAdic& y);
NAdic mul(const NAdic& x, const NAdic& y);
// x * n^k (digit shift)
NAdic shift(const NAdic& x, long k);

/// A distance value n^e, or zero. The paper's metric d(x,y) = n^{-k} with k
/// the maximal index such that the digit streams agree at all i <= k; this is
/// n times the valuation metric of x - y.
struct Radius {
    long n = 2;
    bool zero = true;
    long e = 0;  // value = n^e when !zero

    static Radius make_zero(long n) { return Radius{n, true, 0}; }
    static Radius power(long n, long e) { return Radius{n, false, e}; }

    double value() const;
    double log_value() const;  // -inf for zero
    Rational exact() const;    // 0 or n^e

    bool operator==(const Radius& o) const {
        return n == o.n && zero == o.zero && (zero || e == o.e);
    }
    bool operator<=(const Radius& o) const;
    bool operator<(const Radius& o) const { return *this <= o && !(*this == o); }
};

Radius max(const Radius& a, const Radius& b);

// maximal k with digits equal for all i <= k; nullopt when x == y
std::optional<long> agreement_index(const NAdic& x, const NAdic& y);
Radius dist(const NAdic& x, const NAdic& y);

enum class CloneRelation { Disjoint, Equal, ProperSub, ProperSuper };

/// A clone: the set of n-adic rationals whose digits agree with a fixed
/// prefix (eta_i)_{i<=k}. Combinatorial height h_c = k; as a metric ball its
/// radius is n^{-k}. Simultaneously a vertex of the tree T_n.
class Clone {
public:
    // digits cover [lo, k]; all-zero prefix has empty digits
    Clone(long n, long k, long lo, std::vector<Digit> digits);

    // the clone through x with all digits fixed up to index k
    static Clone containing(const NAdic& x, long k);
    // all-zero prefix at height k
    static Clone all_zero(long n, long k);
    // the base vertex v_0: all-zero prefix at k = 0
    static Clone standard(long n);

    long base() const { return n_; }
    long height() const { return k_; }  // combinatorial height h_c
    long lo() const { return lo_; }
    const std::vector<Digit>& digits() const { return digits_; }

    Digit digit(long i) const;  // prefix digit, 0 outside [lo, k]
    Radius radius() const { return Radius::power(n_, -k_); }

    bool contains(const NAdic& x) const;
    // the element "prefix followed by zeros"
    NAdic canonical_element() const;

    Clone parent() const;
    Clone child(Digit d) const;
    std::vector<Clone> children() const;

    bool operator==(const Clone& o) const;
    bool operator!=(const Clone& o) const { return !(*this == o); }

    std::string to_string() const;  // same digit syntax as NAdic: "n:k:lo:digits"
    static Clone parse(const std::string& s);

private:
    long n_;
    long k_;
    long lo_;
    std::vector<Digit> digits_;
};

CloneRelation relation(const Clone& c, const Clone& d);
// smallest clone containing both (lowest common ancestor in T_n)
Clone meet(const Clone& c, const Clone& d);

} // namespace bsgeom::nadic
