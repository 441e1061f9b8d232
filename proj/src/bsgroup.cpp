#include <bsgeom/bsgroup.hpp>

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#ifdef BSGEOM_HAVE_OPENMP
#include <omp.h>
#endif

namespace bsgeom::bsgroup {

ZOverN::ZOverN(long n, BigInt p, long j) : n_(n), p_(std::move(p)), j_(j) {
    if (n_ < 2) throw std::invalid_argument("base must be >= 2");
    if (j_ < 0) {
        p_ *= big_pow(n_, static_cast<unsigned>(-j_));
        j_ = 0;
    }
    normalize();
}

void ZOverN::normalize() {
    if (p_ == 0) {
        j_ = 0;
        return;
    }
    while (j_ > 0 && p_ % n_ == 0) {
        p_ /= n_;
        --j_;
    }
}

ZOverN ZOverN::from_rational(long n, const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    BigInt den = boost::multiprecision::denominator(q);
    long j = 0;
    BigInt scale = 1;
    while (den != 1) {
        const BigInt g = boost::multiprecision::gcd(den, BigInt(n));
        if (g == 1) throw std::invalid_argument("rational not in Z[1/n]");
        scale *= n / g;
        den /= g;
        ++j;
    }
    return ZOverN(n, num * scale, j);
}

Rational ZOverN::to_rational() const {
    return Rational(p_, big_pow(n_, static_cast<unsigned>(j_)));
}

nadic::NAdic ZOverN::to_nadic() const { return nadic::NAdic::from_rational(n_, p_, j_); }

double ZOverN::to_double() const { return static_cast<double>(to_rational()); }

ZOverN ZOverN::times_n_pow(long e) const {
    // p / n^{j-e}; the constructor clears a negative exponent into p
    return ZOverN(n_, p_, j_ - e);
}

ZOverN operator+(const ZOverN& a, const ZOverN& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("base mismatch");
    const long j = std::max(a.j_, b.j_);
    BigInt p = a.p_ * big_pow(a.n_, static_cast<unsigned>(j - a.j_)) +
               b.p_ * big_pow(a.n_, static_cast<unsigned>(j - b.j_));
    return ZOverN(a.n_, std::move(p), j);
}

ZOverN operator-(const ZOverN& a, const ZOverN& b) { return a + (-b); }

ZOverN operator*(const ZOverN& a, const ZOverN& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("base mismatch");
    return ZOverN(a.n_, a.p_ * b.p_, a.j_ + b.j_);
}

ZOverN ZOverN::operator-() const { return ZOverN(n_, -p_, j_); }

bool ZOverN::operator==(const ZOverN& o) const {
    return n_ == o.n_ && j_ == o.j_ && p_ == o.p_;
}

bool ZOverN::operator<(const ZOverN& o) const {
    if (j_ != o.j_) return j_ < o.j_;
    return p_ < o.p_;
}

std::string ZOverN::to_string() const {
    std::ostringstream os;
    os << p_;
    if (j_ > 0) os << '/' << n_ << '^' << j_;
    return os.str();
}

AffElem AffElem::inverse() const {
    // (n^i x + s)^{-1} : x -> n^{-i} x - n^{-i} s
    return AffElem(n_, -i_, (-s_).times_n_pow(-i_));
}

AffElem mul(const AffElem& g, const AffElem& h) {
    if (g.n_ != h.n_) throw std::invalid_argument("base mismatch");
    // (g h)(x) = g(h(x)) = n^{g.i}(n^{h.i} x + h.s) + g.s
    return AffElem(g.n_, g.i_ + h.i_, h.s_.times_n_pow(g.i_) + g.s_);
}

bool AffElem::operator<(const AffElem& o) const {
    if (i_ != o.i_) return i_ < o.i_;
    return s_ < o.s_;
}

Rational AffElem::act_R(const Rational& x) const {
    return rational_pow(n_, i_) * x + s_.to_rational();
}

double AffElem::act_R(double x) const {
    return static_cast<double>(rational_pow(n_, i_)) * x + s_.to_double();
}

nadic::NAdic AffElem::act_Qn(const nadic::NAdic& z) const {
    if (z.base() != n_) throw std::invalid_argument("base mismatch");
    return nadic::add(nadic::shift(z, i_), s_.to_nadic());
}

std::pair<Rational, Rational> AffElem::act_H2(const std::pair<Rational, Rational>& z) const {
    const Rational m = rational_pow(n_, i_);
    return {m * z.first + s_.to_rational(), m * z.second};
}

std::pair<double, double> AffElem::act_H2(const std::pair<double, double>& z) const {
    const double m = static_cast<double>(rational_pow(n_, i_));
    return {m * z.first + s_.to_double(), m * z.second};
}

nadic::Clone AffElem::act_tree(const nadic::Clone& c) const {
    if (c.base() != n_) throw std::invalid_argument("base mismatch");
    // similarities take clones to clones; the radius scales by n^{-i}
    return nadic::Clone::containing(act_Qn(c.canonical_element()), c.height() + i_);
}

std::string AffElem::to_string() const {
    std::ostringstream os;
    os << "x -> " << n_ << '^' << i_ << " x + " << s_.to_string();
    return os.str();
}

std::size_t AffElemHash::operator()(const AffElem& g) const {
    std::size_t seed = 0;
    boost::hash_combine(seed, g.exponent());
    boost::hash_combine(seed, g.translation_part().den_exp());
    boost::hash_combine(seed, g.translation_part().num());
    return seed;
}

AffElem eval_word(const std::string& word, long n) {
    AffElem g = AffElem::identity(n);
    for (char c : word) {
        AffElem gen = AffElem::identity(n);
        switch (c) {
            case 'a': gen = AffElem::gen_a(n); break;
            case 'A': gen = AffElem::gen_a(n).inverse(); break;
            case 'b': gen = AffElem::gen_b(n); break;
            case 'B': gen = AffElem::gen_b(n).inverse(); break;
            case ' ': continue;
            default: throw std::invalid_argument(std::string("bad word letter: ") + c);
        }
        g = mul(g, gen);
    }
    return g;
}

namespace {

void append_power(std::string& w, char pos, char neg, long long count) {
    const char c = count >= 0 ? pos : neg;
    for (long long t = std::abs(count); t > 0; --t) w.push_back(c);
}

// Horner word for a^p with p = sum d_t n^t:
//   a^p = b^T a^{d_T} b^{-1} a^{d_{T-1}} b^{-1} ... b^{-1} a^{d_0}
std::string a_power_word(const BigInt& p, long n) {
    if (p == 0) return "";
    const bool negative = p < 0;
    BigInt q = negative ? BigInt(-p) : p;
    std::vector<long> digits;
    while (q != 0) {
        digits.push_back(static_cast<long>(q % n));
        q /= n;
    }
    const char pos = negative ? 'A' : 'a';
    const char neg = negative ? 'a' : 'A';
    std::string w(digits.size() - 1, 'b');
    append_power(w, pos, neg, digits.back());
    for (size_t t = digits.size() - 1; t-- > 0;) {
        w.push_back('B');
        append_power(w, pos, neg, digits[t]);
    }
    return w;
}

} // namespace

std::string word_for(const AffElem& g) {
    // g = b^{-j} a^p b^{j+i}
    const long n = g.base();
    const long j = g.translation_part().den_exp();
    const long i = g.exponent();
    std::string w;
    append_power(w, 'B', 'b', j);
    w += a_power_word(g.translation_part().num(), n);
    append_power(w, 'b', 'B', j + i);
    return w;
}

std::size_t word_length(const AffElem& g) { return word_for(g).size(); }

BallResult ball(long n, int L, const EnumBudget& budget) {
    const AffElem gens[4] = {AffElem::gen_a(n), AffElem::gen_a(n).inverse(),
                             AffElem::gen_b(n), AffElem::gen_b(n).inverse()};

    BallResult res;
    std::unordered_set<AffElem, AffElemHash> seen;
    res.elements.push_back(AffElem::identity(n));
    res.depth.push_back(0);
    seen.insert(res.elements.front());
    res.counts.push_back(1);

    std::vector<AffElem> frontier = {AffElem::identity(n)};
    for (int d = 1; d <= L; ++d) {
        std::vector<AffElem> cand(frontier.size() * 4, AffElem::identity(n));
#ifdef BSGEOM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
        for (long idx = 0; idx < static_cast<long>(frontier.size()); ++idx)
            for (int gi = 0; gi < 4; ++gi)
                cand[static_cast<size_t>(idx) * 4 + gi] = mul(frontier[idx], gens[gi]);

        std::vector<AffElem> next;
        for (const auto& c : cand) {
            if (seen.insert(c).second) {
                res.elements.push_back(c);
                res.depth.push_back(d);
                next.push_back(c);
                if (res.elements.size() > budget.max_elements)
                    throw std::runtime_error("ball enumeration budget exceeded");
            }
        }
        res.counts.push_back(res.elements.size());
        frontier = std::move(next);
    }
    return res;
}

std::vector<std::size_t> growth(long n, int L, const EnumBudget& budget) {
    return ball(n, L, budget).counts;
}

std::vector<std::size_t> zsq_growth(int L) {
    // BFS on the standard Cayley graph of Z^2
    std::vector<std::size_t> counts;
    std::unordered_set<long long> seen;
    auto key = [](long x, long y) {
        return (static_cast<long long>(x) << 32) ^ (static_cast<long long>(y) & 0xffffffffll);
    };
    std::vector<std::pair<long, long>> frontier = {{0, 0}};
    seen.insert(key(0, 0));
    counts.push_back(1);
    for (int d = 1; d <= L; ++d) {
        std::vector<std::pair<long, long>> next;
        for (auto [x, y] : frontier) {
            const std::pair<long, long> nb[4] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
            for (auto [u, v] : nb)
                if (seen.insert(key(u, v)).second) next.push_back({u, v});
        }
        counts.push_back(counts.back() + next.size());
        frontier = std::move(next);
    }
    return counts;
}

} // namespace bsgeom::bsgroup
