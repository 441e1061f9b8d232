#pragma once

#include <bsgeom/nadic.hpp>
#include <bsgeom/numeric.hpp>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bsgeom::bsgroup {

/// An element p / n^j of Z[1/n], normalized so that j = 0 or n does not
/// divide p.
class ZOverN {
public:
    explicit ZOverN(long n, BigInt p = 0, long j = 0);
    static ZOverN from_rational(long n, const Rational& q);

    long base() const { return n_; }
    const BigInt& num() const { return p_; }
    long den_exp() const { return j_; }
    bool is_zero() const { return p_ == 0; }

    Rational to_rational() const;
    nadic::NAdic to_nadic() const;
    double to_double() const;

    ZOverN times_n_pow(long e) const;  // value * n^e

    friend ZOverN operator+(const ZOverN& a, const ZOverN& b);
    friend ZOverN operator-(const ZOverN& a, const ZOverN& b);
    friend ZOverN operator*(const ZOverN& a, const ZOverN& b);
    ZOverN operator-() const;
    bool operator==(const ZOverN& o) const;
    bool operator!=(const ZOverN& o) const { return !(*this == o); }
    bool operator<(const ZOverN& o) const;  // lexicographic on (j, p); for ordered containers

    std::string to_string() const;

private:
    long n_;
    BigInt p_;
    long j_;
    void normalize();
};

/// An element of BS(1,n) in affine normal form: x -> n^i x + s with
/// s in Z[1/n]. The group law is composition of affine maps (matrix
/// multiplication in Aff(Z[1/n])); equality of normal forms solves the word
/// problem.
class AffElem {
public:
    explicit AffElem(long n) : n_(n), i_(0), s_(n) {}
    AffElem(long n, long i, ZOverN s) : n_(n), i_(i), s_(std::move(s)) {}

    static AffElem identity(long n) { return AffElem(n); }
    static AffElem gen_a(long n) { return AffElem(n, 0, ZOverN(n, 1)); }
    static AffElem gen_b(long n) { return AffElem(n, 1, ZOverN(n)); }
    static AffElem translation(long n, ZOverN t) { return AffElem(n, 0, std::move(t)); }
    static AffElem b_pow(long n, long i) { return AffElem(n, i, ZOverN(n)); }

    long base() const { return n_; }
    long exponent() const { return i_; }
    const ZOverN& translation_part() const { return s_; }
    bool is_identity() const { return i_ == 0 && s_.is_zero(); }

    AffElem inverse() const;
    friend AffElem mul(const AffElem& g, const AffElem& h);

    bool operator==(const AffElem& o) const { return n_ == o.n_ && i_ == o.i_ && s_ == o.s_; }
    bool operator!=(const AffElem& o) const { return !(*this == o); }
    bool operator<(const AffElem& o) const;

    // the four actions of the group
    Rational act_R(const Rational& x) const;      // n^i x + s
    double act_R(double x) const;
    nadic::NAdic act_Qn(const nadic::NAdic& z) const;
    std::pair<Rational, Rational> act_H2(const std::pair<Rational, Rational>& z) const;
    std::pair<double, double> act_H2(const std::pair<double, double>& z) const;
    nadic::Clone act_tree(const nadic::Clone& c) const;

    // similarity stretch factors on the two boundaries
    Rational stretch_R() const { return rational_pow(n_, i_); }
    Rational stretch_Qn() const { return rational_pow(n_, -i_); }

    std::string to_string() const;

private:
    long n_;
    long i_;
    ZOverN s_;
};

struct AffElemHash {
    std::size_t operator()(const AffElem& g) const;
};

/// Words over {a, a^-1, b, b^-1}, written "aAbB" (capital = inverse).
AffElem eval_word(const std::string& word, long n);

// a normal-form word for g (Horner expansion of the translation numerator);
// eval_word(word_for(g)) == g
std::string word_for(const AffElem& g);
std::size_t word_length(const AffElem& g);

struct EnumBudget {
    std::size_t max_elements = 10'000'000;
};

struct BallResult {
    std::vector<AffElem> elements;    // BFS discovery order
    std::vector<int> depth;           // word length of each element
    std::vector<std::size_t> counts;  // beta(0..L), cumulative
};

/// The radius-L ball of the Cayley graph with generators {a, a^-1, b, b^-1}.
/// The frontier expansion is OpenMP-parallel; output is deterministic.
BallResult ball(long n, int L, const EnumBudget& budget = {});

std::vector<std::size_t> growth(long n, int L, const EnumBudget& budget = {});

// control: ball sizes of Z^2 with standard generators
std::vector<std::size_t> zsq_growth(int L);

} // namespace bsgeom::bsgroup
