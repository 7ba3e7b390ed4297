#include "torbit/surd_forms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace torbit {

namespace {

bool is_square(const mpz_class& v) {
    return v >= 0 && mpz_perfect_square_p(v.get_mpz_t());
}

// Exact floor((P + sqrt(D)) / Q) for non-square D > 0, any Q != 0.
mpz_class surd_floor(const mpz_class& P, const mpz_class& Q, const mpz_class& s) {
    mpz_class a;
    if (Q > 0) {
        mpz_class num = P + s;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    } else {
        mpz_class num = P + s + 1;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    }
    return a;
}

}  // namespace

SurdSpec make_surd(const mpz_class& P, const mpz_class& Q, const mpz_class& D) {
    if (D <= 0) throw std::domain_error("make_surd: D must be positive");
    if (is_square(D))
        throw std::domain_error("make_surd: D = " + D.get_str() +
                                " is a perfect square (rational, not a quadratic surd)");
    if (Q == 0) throw std::domain_error("make_surd: Q must be nonzero");
    SurdSpec out{P, Q, D};
    mpz_class rem = out.D - out.P * out.P;
    if (!mpz_divisible_p(rem.get_mpz_t(), out.Q.get_mpz_t())) {
        mpz_class aq = abs(Q);
        out.P *= aq;
        out.D *= Q * Q;
        out.Q *= aq;
    }
    return out;
}

CFExpansion cf_expand(const SurdSpec& surd_in) {
    SurdSpec surd = make_surd(surd_in.P, surd_in.Q, surd_in.D);
    CFExpansion cf;
    cf.surd = surd;

    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), surd.D.get_mpz_t());

    std::map<std::pair<mpz_class, mpz_class>, size_t> seen;
    std::vector<mpz_class> quotients;
    mpz_class P = surd.P, Q = surd.Q;
    const size_t kMaxSteps = 1000000;
    while (quotients.size() < kMaxSteps) {
        auto state = std::make_pair(P, Q);
        if (auto it = seen.find(state); it != seen.end()) {
            size_t i = it->second;
            cf.preperiod.assign(quotients.begin(), quotients.begin() + i);
            cf.period.assign(quotients.begin() + i, quotients.end());
            return cf;
        }
        seen.emplace(state, quotients.size());
        mpz_class a = surd_floor(P, Q, s);
        quotients.push_back(a);
        mpz_class P2 = a * Q - P;
        mpz_class Q2 = surd.D - P2 * P2;
        mpz_divexact(Q2.get_mpz_t(), Q2.get_mpz_t(), Q.get_mpz_t());
        P = P2;
        Q = Q2;
    }
    throw std::runtime_error("cf_expand: no period found within the safety horizon");
}

std::vector<Convergent> convergents(const CFExpansion& cf, uint64_t n_max) {
    if (cf.period.empty()) throw std::invalid_argument("convergents: empty period");
    auto quotient = [&](uint64_t i) -> const mpz_class& {
        if (i < cf.preperiod.size()) return cf.preperiod[i];
        return cf.period[(i - cf.preperiod.size()) % cf.period.size()];
    };
    std::vector<Convergent> out;
    out.reserve(n_max + 1);
    mpz_class p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;  // indices -1, -2
    for (uint64_t n = 0; n <= n_max; ++n) {
        const mpz_class& a = quotient(n);
        mpz_class p = a * p_prev + p_prev2;
        mpz_class q = a * q_prev + q_prev2;
        out.push_back({n, p, q});
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
    }
    return out;
}

namespace {

Mat2Q cf_step_matrix(const mpz_class& a) {
    return {mpq_class(a), mpq_class(1), mpq_class(1), mpq_class(0)};
}

std::pair<mpz_class, mpz_class> apply_integer(const Mat2Q& g, const mpz_class& x,
                                              const mpz_class& y) {
    mpq_class nx = g.a * mpq_class(x) + g.b * mpq_class(y);
    mpq_class ny = g.c * mpq_class(x) + g.d * mpq_class(y);
    if (nx.get_den() != 1 || ny.get_den() != 1)
        throw std::logic_error("surd_forms: expected an integral matrix action");
    return {nx.get_num(), ny.get_num()};
}

void assert_integral(const Mat2Q& g, const char* what) {
    if (g.a.get_den() != 1 || g.b.get_den() != 1 || g.c.get_den() != 1 ||
        g.d.get_den() != 1)
        throw std::logic_error(std::string("surd_forms: ") + what +
                               " is unexpectedly non-integral");
}

}  // namespace

SurdOrbitDecomposition surd_orbit_decomposition(const CFExpansion& cf) {
    if (cf.period.empty()) throw std::invalid_argument("surd_orbit_decomposition: empty period");
    Mat2Q pre = Mat2Q::identity();
    for (const auto& a : cf.preperiod) pre = pre * cf_step_matrix(a);
    Mat2Q cycle = Mat2Q::identity();
    for (const auto& a : cf.period) cycle = cycle * cf_step_matrix(a);

    SurdOrbitDecomposition out;
    out.gamma = pre * cycle * pre.inverse();
    assert_integral(out.gamma, "the shift matrix");

    const uint64_t ell = cf.period.size();
    const uint64_t start = cf.preperiod.size();
    const uint64_t horizon = std::max<uint64_t>(400, start + 2 * ell + 2);
    std::vector<Convergent> conv = convergents(cf, horizon);

    // Representatives seed at the last pre-periodic convergent (p_k, q_k) and
    // walk one period: v_j = (p_{k+j}, q_{k+j}).  A purely periodic expansion
    // has k = -1, seeded by the conventional (p_{-1}, q_{-1}) = (1, 0).
    for (uint64_t j = 0; j < ell; ++j) {
        if (start == 0 && j == 0)
            out.reps.emplace_back(1, 0);
        else
            out.reps.emplace_back(conv[start - 1 + j].p, conv[start - 1 + j].q);
    }

    if (start == 0) {
        auto [sp, sq] = apply_integer(out.gamma, mpz_class(1), mpz_class(0));
        if (sp != conv[ell - 1].p || sq != conv[ell - 1].q)
            throw std::runtime_error(
                "surd_orbit_decomposition: shift property failed at n = -1");
    }
    uint64_t first = start == 0 ? 0 : start - 1;
    for (uint64_t n = first; n + ell <= horizon; ++n) {
        auto [sp, sq] = apply_integer(out.gamma, conv[n].p, conv[n].q);
        if (sp != conv[n + ell].p || sq != conv[n + ell].q)
            throw std::runtime_error(
                "surd_orbit_decomposition: shift property failed at n = " +
                std::to_string(n));
    }
    return out;
}

std::pair<mpz_class, mpz_class> pell4_fundamental(const mpz_class& D) {
    if (D < 2) throw std::domain_error("pell4_fundamental: D must be >= 2");
    if (is_square(D))
        throw std::domain_error("pell4_fundamental: D must not be a perfect square");

    std::optional<std::pair<mpz_class, mpz_class>> best;
    auto offer = [&](const mpz_class& t_in, const mpz_class& u_in) {
        mpz_class t = abs(t_in), u = abs(u_in);
        if (u == 0) return;
        mpz_class val = t * t - D * u * u;
        if (val == -4) {
            // square the norm -4 solution into a norm +4 one
            mpz_class t2 = (t * t + D * u * u) / 2;
            mpz_class u2 = t * u;
            val = t2 * t2 - D * u2 * u2;
            t = t2;
            u = u2;
        }
        if (val != 4) return;
        if (!best || u < best->second) best = {t, u};
    };

    // Family A: convergents of (sigma + sqrt(D)) / 2 give candidates
    // (2h - sigma*k, k).
    {
        mpz_class sigma = mpz_odd_p(D.get_mpz_t()) ? 1 : 0;
        CFExpansion cf = cf_expand(SurdSpec{sigma, 2, D});
        uint64_t horizon = cf.preperiod.size() + 4 * cf.period.size() + 8;
        for (const auto& c : convergents(cf, horizon))
            offer(2 * c.p - sigma * c.q, c.q);
    }
    // Family B: convergents of sqrt(D) with x^2 - D y^2 = +-1 lift to
    // (2x, 2y) of norm +-4.
    {
        CFExpansion cf = cf_expand(SurdSpec{0, 1, D});
        uint64_t horizon = cf.preperiod.size() + 4 * cf.period.size() + 8;
        for (const auto& c : convergents(cf, horizon)) {
            mpz_class val = c.p * c.p - D * c.q * c.q;
            if (val == 1 || val == -1) offer(2 * c.p, 2 * c.q);
        }
    }
    if (!best)
        throw std::runtime_error("pell4_fundamental: no solution found within the "
                                 "search horizon for D = " + D.get_str());
    return *best;
}

Mat2Q automorph(const QuadForm& form) {
    mpz_class D = form.discriminant();
    if (D <= 0)
        throw std::domain_error("automorph: the form must be indefinite (B^2 - 4AC > 0)");
    if (is_square(D))
        throw std::domain_error("automorph: the form is degenerate (square discriminant)");

    auto [t, u] = pell4_fundamental(D);
    mpz_class tm = t - form.B * u, tp = t + form.B * u;
    if (mpz_odd_p(tm.get_mpz_t()) || mpz_odd_p(tp.get_mpz_t()))
        throw std::logic_error("automorph: parity violation in (t -+ Bu)/2");
    Mat2Q g{mpq_class(tm / 2), mpq_class(-form.C * u), mpq_class(form.A * u),
            mpq_class(tp / 2)};

    // symbolic preservation check on the coefficients
    mpq_class A(form.A), B(form.B), C(form.C);
    mpq_class A2 = A * g.a * g.a + B * g.a * g.c + C * g.c * g.c;
    mpq_class B2 = 2 * A * g.a * g.b + B * (g.a * g.d + g.b * g.c) + 2 * C * g.c * g.d;
    mpq_class C2 = A * g.b * g.b + B * g.b * g.d + C * g.d * g.d;
    if (A2 != A || B2 != B || C2 != C)
        throw std::logic_error("automorph: the matrix fails to preserve the form");
    if (g.det() != 1) throw std::logic_error("automorph: determinant is not 1");
    return g;
}

namespace {

using Vec = std::pair<mpz_class, mpz_class>;

// comparison key: smallest sup-norm first, then |x|, |y|, preferring
// nonnegative x then nonnegative y
auto rep_key(const Vec& v) {
    mpz_class ax = abs(v.first), ay = abs(v.second);
    mpz_class sup = std::max(ax, ay);
    return std::make_tuple(sup, ax, ay, v.first < 0, v.second < 0);
}

mpz_class form_value(const QuadForm& f, const Vec& v) {
    return f.A * v.first * v.first + f.B * v.first * v.second +
           f.C * v.second * v.second;
}

}  // namespace

std::vector<Vec> quadric_orbit_reps(const QuadForm& form, const mpz_class& t,
                                    const mpz_class& height, bool allow_non_squarefree) {
    mpz_class D = form.discriminant();
    if (D <= 0 || is_square(D))
        throw std::domain_error("quadric_orbit_reps: the form must be indefinite and "
                                "non-degenerate");
    if (t == 0) throw std::domain_error("quadric_orbit_reps: t must be nonzero");
    if (height < 0) throw std::domain_error("quadric_orbit_reps: height must be >= 0");
    if (!allow_non_squarefree) {
        FactorResult fr = factor_big(abs(t));
        for (size_t i = 0; i + 1 < fr.prime_factors.size(); ++i)
            if (fr.prime_factors[i] == fr.prime_factors[i + 1])
                throw std::domain_error("quadric_orbit_reps: t = " + t.get_str() +
                                        " is not square-free (pass allow_non_squarefree "
                                        "to override)");
        if (!fr.fully_factored)
            throw std::runtime_error("quadric_orbit_reps: could not verify that t is "
                                     "square-free");
    }

    // enumerate solutions in the box
    std::set<Vec> sols;
    mpz_class twoC = 2 * form.C;
    for (mpz_class x = -height; x <= height; ++x) {
        mpz_class disc_y = D * x * x + 4 * form.C * t;
        if (disc_y < 0) continue;
        if (!mpz_perfect_square_p(disc_y.get_mpz_t())) continue;
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), disc_y.get_mpz_t());
        for (int sign = 0; sign < (s == 0 ? 1 : 2); ++sign) {
            mpz_class num = -form.B * x + (sign == 0 ? s : -s);
            if (!mpz_divisible_p(num.get_mpz_t(), twoC.get_mpz_t())) continue;
            mpz_class y = num / twoC;
            if (abs(y) > height) continue;
            Vec v{x, y};
            if (form_value(form, v) != t)
                throw std::logic_error("quadric_orbit_reps: enumeration inconsistency");
            sols.insert(std::move(v));
        }
    }
    if (sols.empty()) return {};

    Mat2Q g = automorph(form);
    Mat2Q gi = g.inverse();
    assert_integral(gi, "the inverse automorph");

    // merge solutions connected by gamma, gamma^{-1}, or -I inside the box
    std::vector<Vec> reps;
    std::set<Vec> visited;
    for (const Vec& seed : sols) {
        if (visited.count(seed)) continue;
        std::vector<Vec> queue{seed};
        visited.insert(seed);
        Vec best = seed;
        while (!queue.empty()) {
            Vec v = queue.back();
            queue.pop_back();
            if (rep_key(v) < rep_key(best)) best = v;
            Vec nbrs[3] = {apply_integer(g, v.first, v.second),
                           apply_integer(gi, v.first, v.second),
                           {-v.first, -v.second}};
            for (auto& nb : nbrs) {
                if (!sols.count(nb) || visited.count(nb)) continue;
                visited.insert(nb);
                queue.push_back(nb);
            }
        }
        reps.push_back(best);
    }
    // every representative must stay on the quadric along the orbit
    for (const Vec& r : reps) {
        Vec v = r;
        for (int i = 0; i < 5; ++i) {
            v = apply_integer(g, v.first, v.second);
            if (form_value(form, v) != t)
                throw std::logic_error(
                    "quadric_orbit_reps: automorph action left the quadric");
        }
    }
    std::sort(reps.begin(), reps.end(),
              [](const Vec& a, const Vec& b) { return rep_key(a) < rep_key(b); });
    return reps;
}

std::vector<SurdSeriesRow> surd_ratio_series(const SurdSpec& surd, uint64_t n_max,
                                             uint64_t omega_budget) {
    CFExpansion cf = cf_expand(surd);
    std::vector<SurdSeriesRow> rows;
    if (n_max < 2) return rows;
    std::vector<Convergent> conv = convergents(cf, n_max);
    std::optional<double> running_min;
    for (uint64_t n = 2; n <= n_max; ++n) {
        const Convergent& c = conv[n];
        mpz_class pq = c.p * c.q;
        if (pq == 0) continue;  // log n guard holds (n >= 2); zero product skipped
        SurdSeriesRow row;
        row.n = n;
        row.p = c.p;
        row.q = c.q;
        OmegaEstimate op = omega_protocol(abs(c.p), omega_budget);
        OmegaEstimate oq = omega_protocol(abs(c.q), omega_budget);
        row.omega.value = op.value + oq.value;
        row.omega.exact = op.exact && oq.exact;
        row.omega.unresolved = op.unresolved + oq.unresolved;
        double ratio = row.omega.value / std::log(static_cast<double>(n));
        row.ratio = ratio;
        if (row.omega.value >= 1 && (!running_min || ratio < *running_min))
            running_min = ratio;
        row.running_min = running_min;
        mpz_class av = abs(pq);
        signed long e2 = 0;
        double mant = mpz_get_d_2exp(&e2, av.get_mpz_t());
        double log_av = std::log(mant) + static_cast<double>(e2) * std::log(2.0);
        if (log_av > 1.0) row.loglog_pq = std::log(log_av);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace torbit
