#include "torbit/orbits.hpp"

#include <cmath>
#include <stdexcept>

namespace torbit {

Mat2Q Mat2Q::identity() { return {1, 0, 0, 1}; }

Mat2Q Mat2Q::operator*(const Mat2Q& rhs) const {
    return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
            c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
}

Mat2Q Mat2Q::inverse() const {
    mpq_class dt = det();
    if (dt == 0) throw std::domain_error("Mat2Q::inverse: singular matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
}

bool is_hyperbolic(const Mat2Q& gamma) {
    mpq_class tr = gamma.trace();
    return tr * tr - 4 * gamma.det() > 0;
}

namespace {

// One exact application v -> gamma v; throws when the image is non-integral.
void apply_integral(const Mat2Q& g, mpz_class& x, mpz_class& y, uint64_t n_next,
                    const std::string& label) {
    mpq_class nx = g.a * mpq_class(x) + g.b * mpq_class(y);
    mpq_class ny = g.c * mpq_class(x) + g.d * mpq_class(y);
    if (nx.get_den() != 1 || ny.get_den() != 1) {
        std::string who = label.empty() ? "orbit" : "orbit '" + label + "'";
        throw std::runtime_error(who + ": non-integral iterate at n = " +
                                 std::to_string(n_next) +
                                 " (the spec does not generate an integral orbit)");
    }
    x = nx.get_num();
    y = ny.get_num();
}

}  // namespace

OrbitSpec make_orbit_spec(const Mat2Q& gamma, const mpz_class& v0x, const mpz_class& v0y,
                          std::string label, bool allow_non_hyperbolic) {
    if (v0x == 0 && v0y == 0)
        throw std::invalid_argument("make_orbit_spec: v0 must be nonzero");
    if (gamma.det() == 0)
        throw std::invalid_argument("make_orbit_spec: gamma must be invertible");
    if (!allow_non_hyperbolic && !is_hyperbolic(gamma))
        throw std::invalid_argument(
            "make_orbit_spec: gamma is not hyperbolic (tr^2 - 4 det <= 0); "
            "pass the override to proceed");
    OrbitSpec spec{gamma, v0x, v0y, std::move(label)};
    mpz_class x = v0x, y = v0y;
    for (int n = 1; n <= kIntegralityHorizon; ++n)
        apply_integral(gamma, x, y, static_cast<uint64_t>(n), spec.label);
    return spec;
}

namespace {

Mat2Q rational_matrix(long a_num, long a_den, long b_num, long b_den, long c_num,
                      long c_den, long d_num, long d_den) {
    auto q = [](long num, long den) {
        mpq_class v(num, den);
        v.canonicalize();
        return v;
    };
    return {q(a_num, a_den), q(b_num, b_den), q(c_num, c_den), q(d_num, d_den)};
}

}  // namespace

const std::vector<std::string>& named_orbit_labels() {
    static const std::vector<std::string> labels = {
        "fibonacci_lucas", "consecutive_fibonacci", "consecutive_lucas",
        "even_fibonacci", "consecutive_mersenne"};
    return labels;
}

OrbitSpec named_orbit(const std::string& label) {
    if (label == "fibonacci_lucas")  // (F_{n+1}, L_{n+1})
        return make_orbit_spec(rational_matrix(1, 2, 1, 2, 5, 2, 1, 2), 1, 1, label);
    if (label == "consecutive_fibonacci")  // (F_{n+1}, F_n)
        return make_orbit_spec(rational_matrix(1, 1, 1, 1, 1, 1, 0, 1), 1, 0, label);
    if (label == "consecutive_lucas")  // (L_{n+1}, L_n)
        return make_orbit_spec(rational_matrix(1, 1, 1, 1, 1, 1, 0, 1), 1, 2, label);
    if (label == "even_fibonacci")  // (F_{2n+2}, -F_{2n})
        return make_orbit_spec(rational_matrix(3, 1, 1, 1, -1, 1, 0, 1), 1, 0, label);
    if (label == "consecutive_mersenne")  // (M_{n+1}, M_n)
        return make_orbit_spec(rational_matrix(3, 1, -2, 1, 1, 1, 0, 1), 1, 0, label);
    throw std::invalid_argument("named_orbit: unknown label '" + label + "'");
}

OrbitSeries iterate_orbit(const OrbitSpec& spec, uint64_t n_max, uint64_t omega_budget,
                          const std::vector<FactorTable>* tables) {
    OrbitSeries series;
    series.spec = spec;
    series.points.reserve(n_max + 1);
    mpz_class x = spec.v0x, y = spec.v0y;
    std::optional<double> running_min;
    for (uint64_t n = 0; n <= n_max; ++n) {
        if (n > 0) apply_integral(spec.gamma, x, y, n, spec.label);
        OrbitPoint pt;
        pt.n = n;
        pt.x = x;
        pt.y = y;
        pt.f_value = x * y;
        if (pt.f_value == 0) {
            pt.skipped = true;
            ++series.zero_skipped;
            series.points.push_back(std::move(pt));
            continue;
        }
        // Per-coordinate protocol: Omega(|xy|) = Omega(|x|) + Omega(|y|),
        // letting per-sequence factor tables match the coordinates.
        OmegaEstimate ox = omega_protocol(abs(x), omega_budget, tables);
        OmegaEstimate oy = omega_protocol(abs(y), omega_budget, tables);
        pt.omega.value = ox.value + oy.value;
        pt.omega.exact = ox.exact && oy.exact;
        pt.omega.unresolved = ox.unresolved + oy.unresolved;
        if (!pt.omega.exact) {
            ++series.unresolved_points;
            series.unresolved_composites += pt.omega.unresolved;
        }
        mpz_class av = abs(pt.f_value);
        signed long exp2 = 0;
        double mant = mpz_get_d_2exp(&exp2, av.get_mpz_t());
        double log_av = std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
        if (log_av > 1.0) {  // |xy| > e, so log log |xy| > 0
            double ll = std::log(log_av);
            double ratio = pt.omega.value / ll;
            pt.ratio = ratio;
            if (!running_min || ratio < *running_min) running_min = ratio;
        }
        pt.running_min = running_min;
        series.points.push_back(std::move(pt));
    }
    return series;
}

IdentityReport verify_identities(uint64_t n_max) {
    if (n_max < 1) throw std::domain_error("verify_identities: n_max must be >= 1");
    IdentityReport report;
    report.n_max = n_max;
    mpz_class F, L, F2n, M, M2;
    for (uint64_t n = 0; n <= n_max; ++n) {
        mpz_fib_ui(F.get_mpz_t(), n);
        mpz_lucnum_ui(L.get_mpz_t(), n);
        mpz_fib_ui(F2n.get_mpz_t(), 2 * n);
        if (F2n != F * L)
            throw std::runtime_error("identity failure: F_2n != F_n L_n at n = " +
                                     std::to_string(n));
        mpz_class pell = L * L - 5 * F * F;
        mpz_class expected = (n % 2 == 1) ? -4 : 4;
        if (pell != expected)
            throw std::runtime_error(
                "identity failure: L_n^2 - 5 F_n^2 != " + expected.get_str() +
                " at n = " + std::to_string(n));
        M = 1;
        M <<= n;
        M -= 1;
        M2 = 1;
        M2 <<= 2 * n;
        M2 -= 1;
        if (M2 != M * (M + 2))
            throw std::runtime_error("identity failure: M_2n != M_n (M_n + 2) at n = " +
                                     std::to_string(n));
        report.checks += 3;
    }
    return report;
}

}  // namespace torbit
