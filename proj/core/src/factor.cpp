#include "torbit/factor.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace torbit {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------
uint64_t sieve_ceiling() {
    const char* e = std::getenv("TORBIT_SIEVE_CEILING");
    if (!e || !*e) return kDefaultSieveCeiling;
    char* end = nullptr;
    unsigned long long v = std::strtoull(e, &end, 10);
    if (end == e || *end != '\0' || v < 2) return kDefaultSieveCeiling;
    return v;
}

const std::vector<uint32_t>& trial_primes() {
    static const std::vector<uint32_t> primes = [] {
        const uint32_t N = kTrialDivisionBound;
        std::vector<bool> comp(N + 1, false);
        std::vector<uint32_t> ps;
        for (uint32_t i = 2; i <= N; ++i) {
            if (!comp[i]) {
                ps.push_back(i);
                for (uint64_t j = uint64_t{i} * i; j <= N; j += i) comp[j] = true;
            }
        }
        return ps;
    }();
    return primes;
}

// ---------------------------------------------------------------------------
// SPF table
// ---------------------------------------------------------------------------
SpfTable build_spf(uint64_t limit) {
    if (limit < 2) throw std::domain_error("build_spf: limit must be >= 2");
    uint64_t ceiling = sieve_ceiling();
    if (limit > ceiling) {
        double mib = (limit + 1) * 4.0 / (1024.0 * 1024.0);
        throw std::runtime_error(
            "build_spf: limit " + std::to_string(limit) + " exceeds the sieve ceiling " +
            std::to_string(ceiling) + " (table needs ~" + std::to_string((uint64_t)(mib + 1)) +
            " MiB; raise TORBIT_SIEVE_CEILING to at least " + std::to_string(limit) + ")");
    }
    if (limit > 0xFFFFFFFFull)
        throw std::runtime_error("build_spf: limit beyond 32-bit table entries");

    SpfTable t;
    t.limit = limit;
    t.spf.assign(limit + 1, 0);

    uint64_t root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;

    std::vector<uint32_t> base;  // primes <= sqrt(limit)
    {
        std::vector<bool> comp(root + 1, false);
        for (uint64_t i = 2; i <= root; ++i) {
            if (!comp[i]) {
                base.push_back(static_cast<uint32_t>(i));
                for (uint64_t j = i * i; j <= root; j += i) comp[j] = true;
            }
        }
    }

    const uint64_t seg = uint64_t{1} << 22;
    for (uint64_t lo = 2; lo <= limit; lo += seg) {
        uint64_t hi = std::min(lo + seg - 1, limit);
        for (uint32_t p : base) {
            uint64_t m0 = std::max<uint64_t>(p, (lo + p - 1) / p * p);
            for (uint64_t m = m0; m <= hi; m += p)
                if (!t.spf[m]) t.spf[m] = p;
        }
        for (uint64_t n = lo; n <= hi; ++n)
            if (!t.spf[n]) t.spf[n] = static_cast<uint32_t>(n);
    }
    return t;
}

int omega_small(uint64_t n, const SpfTable& t) {
    if (n < 1 || n > t.limit) throw std::domain_error("omega_small: n out of table range");
    int count = 0;
    while (n > 1) {
        uint32_t p = t.spf[n];
        ++count;
        n /= p;
    }
    return count;
}

// ---------------------------------------------------------------------------
// 64-bit arithmetic: Montgomery multiplication, Miller-Rabin, Brent rho
// ---------------------------------------------------------------------------
namespace {

using u64 = uint64_t;
using u128 = unsigned __int128;

// Montgomery context for odd modulus n > 1.
struct Mont {
    u64 n, ninv, r2, one;

    explicit Mont(u64 n_) : n(n_) {
        u64 inv = n;  // Newton: inv *= 2 - n*inv doubles correct bits
        for (int i = 0; i < 6; ++i) inv *= 2 - n * inv;
        ninv = ~inv + 1;  // -n^{-1} mod 2^64
        one = (~u64{0} % n) + 1;  // 2^64 mod n
        r2 = static_cast<u64>((u128{one} * one) % n);
    }
    u64 redc(u128 t) const {
        u64 m = static_cast<u64>(t) * ninv;
        u64 res = static_cast<u64>((t + u128{m} * n) >> 64);
        return res >= n ? res - n : res;
    }
    u64 mul(u64 a, u64 b) const { return redc(u128{a} * b); }
    u64 to(u64 a) const { return mul(a % n, r2); }
    u64 pow(u64 a_mont, u64 e) const {
        u64 r = one;
        while (e) {
            if (e & 1) r = mul(r, a_mont);
            a_mont = mul(a_mont, a_mont);
            e >>= 1;
        }
        return r;
    }
};

inline u64 addmod_u64(u64 a, u64 b, u64 n) {
    u64 s = a + b;
    if (s < a || s >= n) s -= n;
    return s;
}

constexpr u64 kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : kSmallPrimes) {
        if (n % p == 0) return n == p;
    }
    if (n < 101 * 101) return true;
    // Deterministic for n < 2^64 with this seven-base set.
    static constexpr u64 bases[] = {2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    Mont M(n);
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    u64 neg_one = n - M.one;
    for (u64 b : bases) {
        u64 a = b % n;
        if (a == 0) continue;
        u64 x = M.pow(M.to(a), d);
        if (x == M.one || x == neg_one) continue;
        bool witness = true;
        for (int r = 1; r < s && witness; ++r) {
            x = M.mul(x, x);
            if (x == neg_one) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

// Nontrivial factor of odd composite n (tries successive c on cycle collapse).
u64 brent_rho_u64(u64 n) {
    for (u64 c = 1;; c += 2) {
        Mont M(n);
        const u64 cm = M.to(c);
        u64 y = M.to(2), q = M.one, x = 0, ys = 0, g = 1, r = 1;
        const u64 batch = 64;
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = addmod_u64(M.mul(y, y), cm, n);
            for (u64 k = 0; k < r && g == 1; k += batch) {
                ys = y;
                u64 lim = std::min(batch, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = addmod_u64(M.mul(y, y), cm, n);
                    q = M.mul(q, x > y ? x - y : y - x);
                }
                g = std::gcd(q, n);  // gcd with the Montgomery residue is fine: gcd(2^64, n) = 1
            }
            r <<= 1;
        }
        if (g == n) {
            do {
                ys = addmod_u64(M.mul(ys, ys), cm, n);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_u64_rec(u64 m, std::vector<u64>& out) {
    while (m > 1) {
        if (is_prime_u64(m)) {
            out.push_back(m);
            return;
        }
        u64 d = brent_rho_u64(m);
        factor_u64_rec(d, out);
        m /= d;
    }
}

void factor_u64(u64 x, std::vector<u64>& out) {
    for (u64 p : kSmallPrimes) {
        if (p * p > x) break;
        while (x % p == 0) {
            out.push_back(p);
            x /= p;
        }
    }
    if (x == 1) return;
    factor_u64_rec(x, out);
}

}  // namespace

int omega_u64(uint64_t x) { return omega_capped_u64(x, 64); }

int omega_capped_u64(uint64_t x, int cap) {
    if (x == 0) throw std::domain_error("omega_capped_u64: x must be >= 1");
    if (cap < 0) throw std::domain_error("omega_capped_u64: cap must be >= 0");
    int count = 0;
    u64 m = x;
    for (u64 p : kSmallPrimes) {
        if (p * p > m) break;
        while (m % p == 0) {
            m /= p;
            if (++count > cap) return cap + 1;
        }
    }
    if (m == 1) return count;
    u64 stack[64];
    int top = 0;
    stack[top++] = m;
    while (top > 0) {
        m = stack[--top];
        if (is_prime_u64(m)) {
            if (++count > cap) return cap + 1;
            continue;
        }
        // composite: at least two more factors are coming
        if (count + 2 > cap) return cap + 1;
        u64 d = brent_rho_u64(m);
        stack[top++] = d;
        stack[top++] = m / d;
    }
    return count;
}

// ---------------------------------------------------------------------------
// mpz probable-prime machinery
// ---------------------------------------------------------------------------
namespace {

void mod_canonical(mpz_class& a, const mpz_class& n) {
    mpz_mod(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
}

// Strong pseudoprime test to base a; n odd >= 3.
bool mr_strong_mpz(const mpz_class& n, unsigned long a) {
    mpz_class nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    mpz_class d = nm1 >> s;
    mpz_class base = a;
    mod_canonical(base, n);
    if (base == 0) return true;  // base is a multiple of n: vacuous
    mpz_class x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x;
        mod_canonical(x, n);
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

// Strong Lucas probable-prime test; parameters from the (skip+1)-th admissible
// D in Selfridge's sequence 5, -7, 9, -11, ... with Jacobi(D|n) = -1.
bool strong_lucas_mpz(const mpz_class& n, int skip) {
    long D = 0;
    {
        long mag = 5;
        int sign = 1, found = 0;
        for (int tries = 0;; ++tries) {
            if (tries == 16 && mpz_perfect_square_p(n.get_mpz_t())) return false;
            if (tries > 1000)
                throw std::runtime_error("strong_lucas: no admissible discriminant found");
            long cand = sign * mag;
            mpz_class Dc = cand;
            int j = mpz_jacobi(Dc.get_mpz_t(), n.get_mpz_t());
            if (j == 0) {
                // shared factor with n; composite unless n itself is tiny
                if (mpz_cmpabs_ui(n.get_mpz_t(), static_cast<unsigned long>(mag)) > 0)
                    return false;
            } else if (j == -1) {
                if (found == skip) {
                    D = cand;
                    break;
                }
                ++found;
            }
            mag += 2;
            sign = -sign;
        }
    }
    // P = 1, Q = (1 - D)/4
    mpz_class Q = mpz_class(1 - D) / 4;
    mpz_class np1 = n + 1;
    unsigned long s = mpz_scan1(np1.get_mpz_t(), 0);
    mpz_class d = np1 >> s;

    mpz_class U = 0, V = 2, Qk = 1;
    mod_canonical(V, n);
    long bits = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
    for (long i = bits - 1; i >= 0; --i) {
        // double: U_{2m} = U V, V_{2m} = V^2 - 2 Q^m, Q^{2m} = (Q^m)^2
        U = U * V;
        mod_canonical(U, n);
        V = V * V - 2 * Qk;
        mod_canonical(V, n);
        Qk = Qk * Qk;
        mod_canonical(Qk, n);
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            // increment (P = 1): U' = (U + V)/2, V' = (D U + V)/2
            mpz_class U2 = U + V;
            mpz_class V2 = D * U + V;
            if (mpz_odd_p(U2.get_mpz_t())) U2 += n;
            if (mpz_odd_p(V2.get_mpz_t())) V2 += n;
            U2 >>= 1;
            V2 >>= 1;
            mod_canonical(U2, n);
            mod_canonical(V2, n);
            U = U2;
            V = V2;
            Qk = Qk * Q;
            mod_canonical(Qk, n);
        }
    }
    if (U == 0) return true;
    for (unsigned long r = 0; r < s; ++r) {
        if (V == 0) return true;
        V = V * V - 2 * Qk;
        mod_canonical(V, n);
        Qk = Qk * Qk;
        mod_canonical(Qk, n);
    }
    return false;
}

bool fits_u64(const mpz_class& n) {
    return mpz_sgn(n.get_mpz_t()) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

u64 to_u64(const mpz_class& n) {
    // low 64 bits; callers guarantee fits_u64
    u64 lo = mpz_getlimbn(n.get_mpz_t(), 0);
    return lo;
}

bool small_prime_filter(const mpz_class& n, bool& decided) {
    decided = true;
    if (n < 2) return false;
    for (u64 p : kSmallPrimes) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return mpz_cmp_ui(n.get_mpz_t(), p) == 0;
    }
    if (n < 101 * 101) return true;
    decided = false;
    return false;
}

}  // namespace

bool probable_prime(const mpz_class& n) {
    bool decided = false;
    bool small = small_prime_filter(n, decided);
    if (decided) return small;
    static constexpr unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long b : bases)
        if (!mr_strong_mpz(n, b)) return false;
    if (fits_u64(n)) return true;  // deterministic set below 2^64
    return strong_lucas_mpz(n, 0);
}

bool probable_prime_alt(const mpz_class& n) {
    bool decided = false;
    bool small = small_prime_filter(n, decided);
    if (decided) return small;
    static constexpr unsigned long bases[] = {41, 43, 47, 53, 59, 61, 67, 71};
    for (unsigned long b : bases)
        if (!mr_strong_mpz(n, b)) return false;
    return strong_lucas_mpz(n, 1);
}

// ---------------------------------------------------------------------------
// Budgeted big-integer factorization
// ---------------------------------------------------------------------------
namespace {

// One Brent-rho run on odd composite n with polynomial x^2 + c. Returns a
// nontrivial factor, or 0 when the budget ran out / the cycle collapsed.
// Advances `used` by the number of iterations consumed.
mpz_class brent_rho_mpz(const mpz_class& n, unsigned long c, uint64_t max_iters,
                        uint64_t& used) {
    mpz_t y, x, ys, q, g, t1, diff;
    mpz_inits(y, x, ys, q, g, t1, diff, nullptr);
    mpz_set_ui(y, 2);
    mpz_set_ui(q, 1);
    mpz_set_ui(g, 1);
    const mpz_srcptr N = n.get_mpz_t();

    auto step = [&](mpz_ptr v) {
        mpz_mul(t1, v, v);
        mpz_add_ui(t1, t1, c);
        mpz_tdiv_r(v, t1, N);
        ++used;
    };

    uint64_t r = 1;
    const uint64_t batch = 128;
    bool have_ys = false;
    while (mpz_cmp_ui(g, 1) == 0 && used < max_iters) {
        mpz_set(x, y);
        for (uint64_t i = 0; i < r && used < max_iters; ++i) step(y);
        for (uint64_t k = 0; k < r && mpz_cmp_ui(g, 1) == 0 && used < max_iters; ) {
            mpz_set(ys, y);
            have_ys = true;
            uint64_t lim = std::min(batch, r - k);
            uint64_t done = 0;
            for (uint64_t i = 0; i < lim && used < max_iters; ++i, ++done) {
                step(y);
                mpz_sub(diff, x, y);
                mpz_abs(diff, diff);
                mpz_mul(t1, q, diff);
                mpz_tdiv_r(q, t1, N);
            }
            mpz_gcd(g, q, N);
            k += (done == 0 ? lim : done);
        }
        r <<= 1;
    }
    if (mpz_cmp(g, n.get_mpz_t()) == 0 && have_ys) {
        do {
            step(ys);
            mpz_sub(diff, x, ys);
            mpz_abs(diff, diff);
            mpz_gcd(g, diff, N);
        } while (mpz_cmp_ui(g, 1) == 0);
    }
    mpz_class result = 0;
    if (mpz_cmp_ui(g, 1) > 0 && mpz_cmp(g, N) < 0) result = mpz_class(g);
    mpz_clears(y, x, ys, q, g, t1, diff, nullptr);
    return result;
}

void append_u64_factors(u64 x, std::vector<mpz_class>& out) {
    std::vector<u64> fs;
    factor_u64(x, fs);
    for (u64 f : fs) out.emplace_back(static_cast<unsigned long>(f));
}

void factor_worker(const mpz_class& m_in, uint64_t budget, FactorResult& res) {
    mpz_class m = m_in;
    if (m == 1) return;
    if (fits_u64(m)) {
        append_u64_factors(to_u64(m), res.prime_factors);
        return;
    }
    if (probable_prime(m)) {
        res.prime_factors.push_back(m);
        return;
    }
    if (mpz_perfect_power_p(m.get_mpz_t())) {
        unsigned long maxe = mpz_sizeinbase(m.get_mpz_t(), 2);
        for (unsigned long e = 2; e <= maxe; ++e) {
            mpz_class root;
            if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), e) != 0) {
                FactorResult sub;
                sub.n = root;
                factor_worker(root, budget, sub);
                for (unsigned long i = 0; i < e; ++i) {
                    res.prime_factors.insert(res.prime_factors.end(),
                                             sub.prime_factors.begin(), sub.prime_factors.end());
                    res.unresolved.insert(res.unresolved.end(), sub.unresolved.begin(),
                                          sub.unresolved.end());
                }
                return;
            }
        }
    }
    // budgeted rho: one pass at `budget` iterations, one retry at double
    for (int round = 0; round < 2; ++round) {
        uint64_t allowance = budget << round;
        uint64_t used = 0;
        unsigned long c = 1;
        while (used < allowance) {
            mpz_class d = brent_rho_mpz(m, c, allowance, used);
            if (d != 0) {
                factor_worker(d, budget, res);
                factor_worker(m / d, budget, res);
                return;
            }
            c += 2;
        }
    }
    res.unresolved.push_back(m);
}

}  // namespace

FactorResult factor_big(const mpz_class& n, uint64_t budget) {
    if (n < 1) throw std::domain_error("factor_big: n must be >= 1");
    FactorResult res;
    res.n = n;
    if (n == 1) return res;

    mpz_class m = n;
    if (fits_u64(m)) {
        append_u64_factors(to_u64(m), res.prime_factors);
        std::sort(res.prime_factors.begin(), res.prime_factors.end());
        return res;
    }

    // trial division by primes <= 1e6
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
    for (uint32_t p : trial_primes()) {
        if (mpz_cmp_ui(root.get_mpz_t(), p) < 0) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                res.prime_factors.emplace_back(p);
            } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
            mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
            if (fits_u64(m)) break;
        }
    }
    if (m > 1) {
        if (fits_u64(m))
            append_u64_factors(to_u64(m), res.prime_factors);
        else
            factor_worker(m, budget, res);
    }
    std::sort(res.prime_factors.begin(), res.prime_factors.end());
    std::sort(res.unresolved.begin(), res.unresolved.end());
    res.fully_factored = res.unresolved.empty();
    return res;
}

// ---------------------------------------------------------------------------
// Factor tables
// ---------------------------------------------------------------------------
std::optional<mpz_class> sequence_value(const std::string& label, uint64_t index) {
    mpz_class v;
    if (label == "F") {
        mpz_fib_ui(v.get_mpz_t(), index);
        return v;
    }
    if (label == "L") {
        mpz_lucnum_ui(v.get_mpz_t(), index);
        return v;
    }
    if (label == "M") {
        v = 1;
        v <<= index;
        v -= 1;
        return v;
    }
    return std::nullopt;
}

namespace {
uint64_t value_hash(const mpz_class& v) {
    return mpz_fdiv_ui(v.get_mpz_t(), 0xFFFFFFFFFFFFFFC5ull);
}
}  // namespace

const FactorTableEntry* FactorTable::find_by_value(const mpz_class& v) const {
    auto range = by_hash_.equal_range(value_hash(v));
    for (auto it = range.first; it != range.second; ++it) {
        auto e = entries.find(it->second);
        if (e != entries.end() && e->second.value == v) return &e->second;
    }
    return nullptr;
}

FactorTable ingest_factor_table(std::istream& in) {
    FactorTable t;
    std::string line;
    size_t lineno = 0;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("factor table line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ss(line);
        std::string label;
        if (!(ss >> label)) continue;  // blank / comment-only line
        if (t.label.empty())
            t.label = label;
        else if (label != t.label)
            fail("mixed labels '" + t.label + "' and '" + label + "' in one table");

        uint64_t index = 0;
        {
            std::string tok;
            if (!(ss >> tok)) fail("expected '<label> <index> <factor>...'");
            try {
                size_t used = 0;
                index = std::stoull(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                fail("bad index '" + tok + "'");
            }
        }
        if (t.entries.count(index)) fail("duplicate index " + std::to_string(index));

        FactorTableEntry entry;
        entry.index = index;
        std::string tok;
        while (ss >> tok) {
            if (tok.size() > 1 && tok[0] == 'C' &&
                std::all_of(tok.begin() + 1, tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
                if (entry.cofactor_digits) fail("more than one unresolved-cofactor token");
                entry.cofactor_digits = std::stoi(tok.substr(1));
                if (*entry.cofactor_digits < 1) fail("bad cofactor token '" + tok + "'");
                continue;
            }
            mpz_class f;
            if (f.set_str(tok, 10) != 0 || f < 2) fail("bad factor '" + tok + "'");
            entry.factors.push_back(f);
        }
        if (entry.factors.empty() && !entry.cofactor_digits) fail("entry lists no factors");

        if (auto sv = sequence_value(t.label, index)) {
            entry.value = *sv;
            mpz_class prod = 1;
            for (const auto& f : entry.factors) {
                prod *= f;
                if (!probable_prime(f))
                    fail("listed factor " + f.get_str() + " at index " + std::to_string(index) +
                         " is not a probable prime");
            }
            if (!entry.cofactor_digits) {
                if (prod != entry.value)
                    fail("product mismatch at index " + std::to_string(index));
            } else {
                if (!mpz_divisible_p(entry.value.get_mpz_t(), prod.get_mpz_t()))
                    fail("product mismatch at index " + std::to_string(index) +
                         " (listed factors do not divide the sequence value)");
                mpz_class q = entry.value / prod;
                if (q <= 1)
                    fail("cofactor token at index " + std::to_string(index) +
                         " but the listed factors are already complete");
                int len = static_cast<int>(q.get_str().size());
                if (len != *entry.cofactor_digits)
                    fail("cofactor digit count at index " + std::to_string(index) + " is " +
                         std::to_string(len) + ", token says " +
                         std::to_string(*entry.cofactor_digits));
                entry.unresolved_cofactor = q;
            }
            t.by_hash_.emplace(value_hash(entry.value), index);
        }
        t.entries.emplace(index, std::move(entry));
    }
    return t;
}

OmegaEstimate omega_protocol(const mpz_class& n, uint64_t budget,
                             const std::vector<FactorTable>* tables) {
    if (n < 1) throw std::domain_error("omega_protocol: n must be >= 1");
    OmegaEstimate est;
    if (n == 1) return est;

    mpz_class m = n;
    if (tables) {
        for (const auto& tab : *tables) {
            const FactorTableEntry* e = tab.find_by_value(m);
            if (!e) continue;
            for (const auto& f : e->factors) {
                if (!mpz_divisible_p(m.get_mpz_t(), f.get_mpz_t()))
                    throw std::runtime_error("omega_protocol: table entry at index " +
                                             std::to_string(e->index) + " inconsistent with n");
                m /= f;
                est.value += 1;
            }
            // A cofactor the table declares unresolved is still handed to the
            // budgeted search below: table knowledge merges with factor_big
            // output, and only what survives both counts as unresolved.
            break;
        }
    }
    if (m > 1) {
        FactorResult fr = factor_big(m, budget);
        est.value += fr.omega_known() + 2 * static_cast<int>(fr.unresolved.size());
        est.unresolved += static_cast<int>(fr.unresolved.size());
        if (!fr.fully_factored) est.exact = false;
    }
    return est;
}

}  // namespace torbit
