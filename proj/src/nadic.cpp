#include <bsgeom/nadic.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bsgeom::nadic {

namespace {

char digit_char(Digit d) {
    if (d < 10) return static_cast<char>('0' + d);
    if (d < 36) return static_cast<char>('a' + (d - 10));
    throw std::invalid_argument("digit serialization supports bases up to 36");
}

Digit char_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return 10 + (c - 'a');
    throw std::invalid_argument(std::string("bad digit character: ") + c);
}

bool all_zero(const std::vector<Digit>& v) {
    return std::all_of(v.begin(), v.end(), [](Digit d) { return d == 0; });
}

void check_base(long n) {
    if (n < 2) throw std::invalid_argument("base must be >= 2");
}

} // namespace

NAdic::NAdic(long n, long lo, std::vector<Digit> pre, std::vector<Digit> per)
    : n_(n), lo_(lo), pre_(std::move(pre)), per_(std::move(per)) {
    check_base(n_);
    for (Digit d : pre_)
        if (d < 0 || d >= n_) throw std::invalid_argument("digit out of range");
    for (Digit d : per_)
        if (d < 0 || d >= n_) throw std::invalid_argument("digit out of range");
    canonicalize();
}

void NAdic::canonicalize() {
    if (per_.empty()) per_ = {0};

    if (all_zero(pre_) && all_zero(per_)) {
        lo_ = 0;
        pre_.clear();
        per_ = {0};
        return;
    }

    // lo_ points at the lowest nonzero digit
    while (true) {
        if (!pre_.empty()) {
            if (pre_.front() != 0) break;
            pre_.erase(pre_.begin());
            ++lo_;
        } else {
            if (per_.front() != 0) break;
            std::rotate(per_.begin(), per_.begin() + 1, per_.end());
            ++lo_;
        }
    }

    // minimal preperiod: drop a trailing pre digit when it matches the
    // right-rotated period
    while (!pre_.empty() && pre_.back() == per_.back()) {
        pre_.pop_back();
        std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
    }

    // primitive period
    const size_t L = per_.size();
    for (size_t d = 1; d < L; ++d) {
        if (L % d != 0) continue;
        bool rep = true;
        for (size_t i = d; i < L && rep; ++i) rep = (per_[i] == per_[i % d]);
        if (rep) {
            per_.resize(d);
            break;
        }
    }
    if (all_zero(per_)) per_ = {0};
}

NAdic NAdic::zero(long n) { return NAdic(n, 0, {}, {0}); }

NAdic NAdic::from_integer(long n, const BigInt& v) {
    return from_rational(n, Rational(v));
}

NAdic NAdic::from_rational(long n, const BigInt& p, long j) {
    check_base(n);
    if (j < 0) return from_rational(n, Rational(p * big_pow(n, static_cast<unsigned>(-j))));
    return from_rational(n, Rational(p, big_pow(n, static_cast<unsigned>(j))));
}

NAdic NAdic::from_rational(long n, const Rational& q) {
    check_base(n);
    BigInt a = boost::multiprecision::numerator(q);
    BigInt b = boost::multiprecision::denominator(q);
    if (a == 0) return zero(n);

    // bring to a / (b' n^j) with gcd(b', n) = 1, using 1/b = (n/g) / (n b/g)
    long j = 0;
    while (true) {
        BigInt g = boost::multiprecision::gcd(b, BigInt(n));
        if (g == 1) break;
        a *= n / g;
        b /= g;
        ++j;
    }

    // digit extraction for a/b: d = a b^{-1} mod n, state <- (state - d b)/n
    long binv = 1;
    {
        long bm = static_cast<long>(b % n);
        bm = ((bm % n) + n) % n;
        // gcd(b, n) = 1, so a multiplicative inverse exists
        long t = 0, newt = 1, r = n, newr = bm;
        while (newr != 0) {
            const long quot = r / newr;
            const long t2 = t - quot * newt;
            t = newt;
            newt = t2;
            const long r2 = r - quot * newr;
            r = newr;
            newr = r2;
        }
        binv = ((t % n) + n) % n;
    }

    std::vector<Digit> digits;
    std::map<BigInt, size_t> seen;
    BigInt state = a;
    size_t cycle_start = 0;
    while (true) {
        auto it = seen.find(state);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen.emplace(state, digits.size());
        long am = static_cast<long>(state % n);
        am = ((am % n) + n) % n;
        Digit d = static_cast<Digit>((am * binv) % n);
        digits.push_back(d);
        state = (state - d * b) / n;
    }

    std::vector<Digit> pre(digits.begin(), digits.begin() + cycle_start);
    std::vector<Digit> per(digits.begin() + cycle_start, digits.end());
    return NAdic(n, -j, std::move(pre), std::move(per));
}

Digit NAdic::digit(long i) const {
    if (i < lo_) return 0;
    const long off = i - lo_;
    if (off < static_cast<long>(pre_.size())) return pre_[off];
    const long poff = (off - static_cast<long>(pre_.size())) % static_cast<long>(per_.size());
    return per_[poff];
}

bool NAdic::is_zero() const { return pre_.empty() && per_.size() == 1 && per_[0] == 0; }

bool NAdic::is_terminating() const { return per_.size() == 1 && per_[0] == 0; }

Rational NAdic::to_rational() const {
    Rational v = 0;
    for (size_t i = 0; i < pre_.size(); ++i)
        v += Rational(pre_[i]) * rational_pow(n_, lo_ + static_cast<long>(i));
    BigInt pval = 0;
    for (size_t i = per_.size(); i-- > 0;) pval = pval * n_ + per_[i];
    const long m = lo_ + static_cast<long>(pre_.size());
    const long L = static_cast<long>(per_.size());
    // sum_{t>=0} P n^{m + Lt} = n^m P / (1 - n^L), the unique rational with
    // this eventually periodic expansion
    v += Rational(pval) * rational_pow(n_, m) / (Rational(1) - rational_pow(n_, L));
    return v;
}

std::vector<Digit> NAdic::window(long lo_incl, long hi_excl) const {
    std::vector<Digit> w;
    for (long i = lo_incl; i < hi_excl; ++i) w.push_back(digit(i));
    return w;
}

bool NAdic::operator==(const NAdic& o) const {
    return n_ == o.n_ && lo_ == o.lo_ && pre_ == o.pre_ && per_ == o.per_;
}

std::string NAdic::to_string() const {
    std::ostringstream os;
    os << n_ << ':' << lo_ << ':';
    for (Digit d : pre_) os << digit_char(d);
    os << '|';
    for (Digit d : per_) os << digit_char(d);
    return os.str();
}

NAdic NAdic::parse(const std::string& s) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    const auto bar = s.find('|', c2 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || bar == std::string::npos)
        throw std::invalid_argument("NAdic::parse: expected \"base:lo:pre|per\"");
    const long n = std::stol(s.substr(0, c1));
    const long lo = std::stol(s.substr(c1 + 1, c2 - c1 - 1));
    std::vector<Digit> pre, per;
    for (size_t i = c2 + 1; i < bar; ++i) pre.push_back(char_digit(s[i]));
    for (size_t i = bar + 1; i < s.size(); ++i) per.push_back(char_digit(s[i]));
    return NAdic(n, lo, std::move(pre), std::move(per));
}

NAdic add(const NAdic& x, const NAdic& y) {
    if (x.base() != y.base()) throw std::invalid_argument("base mismatch");
    return NAdic::from_rational(x.base(), x.to_rational() + y.to_rational());
}

NAdic neg(const NAdic& x) {
    return NAdic::from_rational(x.base(), -x.to_rational());
}

NAdic sub(const NAdic& x, const NAdic& y) { return add(x, neg(y)); }

NAdic mul(const NAdic& x, const NAdic& y) {
    if (x.base() != y.base()) throw std::invalid_argument("base mismatch");
    return NAdic::from_rational(x.base(), x.to_rational() * y.to_rational());
}

NAdic shift(const NAdic& x, long k) {
    if (x.is_zero()) return x;
    return NAdic(x.base(), x.lo() + k, x.preperiod(), x.period());
}

double Radius::value() const {
    if (zero) return 0.0;
    return std::pow(static_cast<double>(n), static_cast<double>(e));
}

double Radius::log_value() const {
    if (zero) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(e) * std::log(static_cast<double>(n));
}

Rational Radius::exact() const {
    if (zero) return Rational(0);
    return rational_pow(n, e);
}

bool Radius::operator<=(const Radius& o) const {
    if (zero) return true;
    if (o.zero) return false;
    return e <= o.e;
}

Radius max(const Radius& a, const Radius& b) { return (a <= b) ? b : a; }

std::optional<long> agreement_index(const NAdic& x, const NAdic& y) {
    if (x.base() != y.base()) throw std::invalid_argument("base mismatch");
    if (x == y) return std::nullopt;
    const long start = std::min(x.lo(), y.lo());
    const long pre_end = std::max(x.lo() + static_cast<long>(x.preperiod().size()),
                                  y.lo() + static_cast<long>(y.preperiod().size()));
    const long lcm = std::lcm(static_cast<long>(x.period().size()),
                              static_cast<long>(y.period().size()));
    const long bound = pre_end + lcm + 1;
    for (long i = start; i <= bound; ++i)
        if (x.digit(i) != y.digit(i)) return i - 1;
    // agreeing across a full common period past both preperiods would force
    // equality, contradicting x != y
    throw std::logic_error("agreement_index: scan bound exceeded on distinct values");
}

Radius dist(const NAdic& x, const NAdic& y) {
    auto k = agreement_index(x, y);
    if (!k) return Radius::make_zero(x.base());
    return Radius::power(x.base(), -*k);
}

Clone::Clone(long n, long k, long lo, std::vector<Digit> digits)
    : n_(n), k_(k), lo_(lo), digits_(std::move(digits)) {
    check_base(n_);
    if (!digits_.empty()) {
        if (lo_ + static_cast<long>(digits_.size()) - 1 != k_)
            throw std::invalid_argument("clone digits must cover [lo, k]");
        for (Digit d : digits_)
            if (d < 0 || d >= n_) throw std::invalid_argument("digit out of range");
        // canonical: strip leading zeros
        size_t z = 0;
        while (z < digits_.size() && digits_[z] == 0) ++z;
        if (z == digits_.size()) {
            digits_.clear();
        } else if (z > 0) {
            digits_.erase(digits_.begin(), digits_.begin() + z);
            lo_ += static_cast<long>(z);
        }
    }
    if (digits_.empty()) lo_ = k_ + 1;
}

Clone Clone::containing(const NAdic& x, long k) {
    if (x.lo() > k) return all_zero(x.base(), k);
    return Clone(x.base(), k, x.lo(), x.window(x.lo(), k + 1));
}

Clone Clone::all_zero(long n, long k) { return Clone(n, k, k + 1, {}); }

Clone Clone::standard(long n) { return all_zero(n, 0); }

Digit Clone::digit(long i) const {
    if (digits_.empty() || i < lo_ || i > k_) return 0;
    return digits_[i - lo_];
}

bool Clone::contains(const NAdic& x) const {
    if (x.base() != n_) throw std::invalid_argument("base mismatch");
    for (long i = std::min(lo_, x.lo()); i <= k_; ++i)
        if (x.digit(i) != digit(i)) return false;
    return true;
}

NAdic Clone::canonical_element() const {
    if (digits_.empty()) return NAdic::zero(n_);
    return NAdic(n_, lo_, digits_, {0});
}

Clone Clone::parent() const {
    if (digits_.empty()) return all_zero(n_, k_ - 1);
    std::vector<Digit> d(digits_.begin(), digits_.end() - 1);
    return Clone(n_, k_ - 1, lo_, std::move(d));
}

Clone Clone::child(Digit d) const {
    if (d < 0 || d >= n_) throw std::invalid_argument("digit out of range");
    std::vector<Digit> ds = digits_;
    if (ds.empty()) {
        if (d == 0) return all_zero(n_, k_ + 1);
        return Clone(n_, k_ + 1, k_ + 1, {d});
    }
    ds.push_back(d);
    return Clone(n_, k_ + 1, lo_, std::move(ds));
}

std::vector<Clone> Clone::children() const {
    std::vector<Clone> cs;
    cs.reserve(static_cast<size_t>(n_));
    for (Digit d = 0; d < n_; ++d) cs.push_back(child(d));
    return cs;
}

bool Clone::operator==(const Clone& o) const {
    return n_ == o.n_ && k_ == o.k_ && lo_ == o.lo_ && digits_ == o.digits_;
}

std::string Clone::to_string() const {
    std::ostringstream os;
    os << n_ << ':' << k_ << ':' << lo_ << ':';
    for (Digit d : digits_) os << digit_char(d);
    return os.str();
}

Clone Clone::parse(const std::string& s) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    const auto c3 = s.find(':', c2 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || c3 == std::string::npos)
        throw std::invalid_argument("Clone::parse: expected \"n:k:lo:digits\"");
    const long n = std::stol(s.substr(0, c1));
    const long k = std::stol(s.substr(c1 + 1, c2 - c1 - 1));
    long lo = std::stol(s.substr(c2 + 1, c3 - c2 - 1));
    std::vector<Digit> ds;
    for (size_t i = c3 + 1; i < s.size(); ++i) ds.push_back(char_digit(s[i]));
    if (ds.empty()) lo = k + 1;
    return Clone(n, k, lo, std::move(ds));
}

namespace {

// first index <= bound where the prefixes differ, or bound+1
long first_prefix_difference(const Clone& c, const Clone& d, long bound) {
    for (long i = std::min(c.lo(), d.lo()); i <= bound; ++i)
        if (c.digit(i) != d.digit(i)) return i;
    return bound + 1;
}

} // namespace

CloneRelation relation(const Clone& c, const Clone& d) {
    if (c.base() != d.base()) throw std::invalid_argument("base mismatch");
    const long kmin = std::min(c.height(), d.height());
    const bool agree = first_prefix_difference(c, d, kmin) > kmin;
    if (!agree) return CloneRelation::Disjoint;
    if (c.height() == d.height()) return CloneRelation::Equal;
    return c.height() < d.height() ? CloneRelation::ProperSuper : CloneRelation::ProperSub;
}

Clone meet(const Clone& c, const Clone& d) {
    if (c.base() != d.base()) throw std::invalid_argument("base mismatch");
    const long kmin = std::min(c.height(), d.height());
    const long diff = first_prefix_difference(c, d, kmin);
    const long mk = std::min(kmin, diff - 1);
    return Clone::containing(c.canonical_element(), mk);
}

} // namespace bsgeom::nadic
