// torbit: command-line front end for the toral-orbit statistics library.
//
// Subcommands: beta, sieve-count, nu, model-run, nmax-run, orbit, sporadic,
// surd, forms, figure. Primary output goes to --out (default stdout); JSON
// summaries and SVG renderings have their own flags where applicable. All
// file writes are atomic (temp + rename).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "torbit/beta.hpp"
#include "torbit/factor.hpp"
#include "torbit/figures.hpp"
#include "torbit/io_util.hpp"
#include "torbit/model.hpp"
#include "torbit/omega_stats.hpp"
#include "torbit/orbits.hpp"
#include "torbit/sporadic.hpp"
#include "torbit/surd_forms.hpp"

namespace {

using nlohmann::json;
using torbit::io::format_opt;
using torbit::io::format_real;

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        torbit::io::atomic_write(path, content);
}

std::vector<torbit::FactorTable> load_tables(const std::vector<std::string>& paths) {
    std::vector<torbit::FactorTable> tables;
    for (const std::string& p : paths) {
        std::ifstream in(p);
        if (!in) throw std::runtime_error("cannot open factor table: " + p);
        tables.push_back(torbit::ingest_factor_table(in));
    }
    return tables;
}

// "a,b,c,d" with exact rational entries.
torbit::Mat2Q parse_gamma(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4)
        throw std::invalid_argument("gamma must be four comma-separated rationals "
                                    "\"a,b,c,d\", got: " + text);
    return {torbit::parse_rational(parts[0]), torbit::parse_rational(parts[1]),
            torbit::parse_rational(parts[2]), torbit::parse_rational(parts[3])};
}

std::pair<mpz_class, mpz_class> parse_vec(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos)
        throw std::invalid_argument("v0 must be two comma-separated integers \"x,y\", "
                                    "got: " + text);
    mpq_class x = torbit::parse_rational(text.substr(0, comma));
    mpq_class y = torbit::parse_rational(text.substr(comma + 1));
    if (x.get_den() != 1 || y.get_den() != 1)
        throw std::invalid_argument("v0 entries must be integers, got: " + text);
    return {x.get_num(), y.get_num()};
}

mpz_class parse_int(const std::string& text, const char* what) {
    mpq_class q = torbit::parse_rational(text);
    if (q.get_den() != 1)
        throw std::invalid_argument(std::string(what) + " must be an integer, got: " + text);
    return q.get_num();
}

std::string mat_json_entry(const mpq_class& v) { return v.get_str(); }

json mat_to_json(const torbit::Mat2Q& m) {
    return json::array({json::array({mat_json_entry(m.a), mat_json_entry(m.b)}),
                        json::array({mat_json_entry(m.c), mat_json_entry(m.d)})});
}

// ---------------------------------------------------------------------------

int run_beta(int table_k, const std::string& out) {
    std::ostringstream csv;
    csv << "k,beta,lambert,residual\n";
    for (int k = 1; k <= table_k; ++k) {
        torbit::BetaSolution sol = torbit::solve_beta(k);
        csv << k << ',' << format_real(sol.beta) << ',';
        if (k >= 2) csv << format_real(torbit::beta_lambert(k));
        csv << ',' << format_real(sol.residual) << '\n';
    }
    emit(out, csv.str());
    return 0;
}

int run_sieve_count(uint64_t T, const std::string& out, const std::string& json_out) {
    torbit::NrTable table = torbit::count_by_omega(T);
    double llT = std::log(std::log(static_cast<double>(T)));
    std::ostringstream csv;
    csv << "r,count,naive,selberg\n";
    uint64_t total = 0;
    for (size_t r = 0; r < table.counts.size(); ++r) {
        total += table.counts[r];
        csv << r << ',' << table.counts[r] << ',';
        if (r >= 1 && T >= 3) csv << format_real(torbit::nr_naive(T, static_cast<int>(r)));
        csv << ',';
        bool selberg_ok = r >= 1 && T >= 3 &&
                          static_cast<double>(r) <= 1.5 * llT;
        if (selberg_ok) csv << format_real(torbit::nr_selberg(T, static_cast<int>(r)));
        csv << '\n';
    }
    emit(out, csv.str());
    if (!json_out.empty()) {
        json j;
        j["T"] = T;
        j["r_max"] = table.counts.size() - 1;
        j["total"] = total;
        emit(json_out, j.dump(2) + "\n");
    }
    return 0;
}

int run_nu(const std::vector<double>& zs, uint64_t P, const std::string& out) {
    std::ostringstream csv;
    csv << "z,value,truncation_prime,tail_bound\n";
    for (double z : zs) {
        torbit::NuValue v = torbit::nu(z, P);
        csv << format_real(z) << ',' << format_real(v.value) << ','
            << v.truncation_prime << ',' << format_real(v.tail_bound) << '\n';
    }
    emit(out, csv.str());
    return 0;
}

int run_model(const torbit::ModelConfig& cfg, const std::string& out,
              const std::string& json_out) {
    torbit::ModelRun run = torbit::run_liminf(cfg);
    std::ostringstream csv;
    csv << "trial,n,omega,ratio,running_min\n";
    for (const torbit::LiminfRecord& r : run.records)
        csv << r.trial << ',' << r.n << ',' << r.omega << ',' << format_opt(r.ratio)
            << ',' << format_opt(r.running_min) << '\n';
    emit(out, csv.str());

    json j;
    j["k"] = cfg.k;
    j["C"] = cfg.C;
    if (!cfg.C_list.empty()) j["C_list"] = cfg.C_list;
    j["n_max"] = cfg.n_max;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["beta_k"] = run.beta_k;
    j["zero_omega_draws"] = run.zero_omega_draws;
    torbit::DrawBounds bounds = torbit::compute_bounds(cfg);
    json sat = json::array();
    for (const auto& s : bounds.saturated_from)
        sat.push_back(s ? json(*s) : json(nullptr));
    j["saturated_from"] = sat;
    if (!cfg.R_list.empty()) {
        json per_r = json::array();
        for (int R : cfg.R_list) {
            torbit::NmaxSamples s = torbit::run_nmax(cfg, R);
            json jr;
            jr["R"] = R;
            jr["censored"] = s.censored;
            jr["tail_slope"] = s.tail_slope ? json(*s.tail_slope) : json(nullptr);
            per_r.push_back(jr);
        }
        j["nmax"] = per_r;
    }
    if (!json_out.empty()) emit(json_out, j.dump(2) + "\n");
    return 0;
}

int run_nmax_cmd(const torbit::ModelConfig& cfg, const std::string& out,
                 const std::string& json_out) {
    std::vector<int> rs = cfg.R_list.empty() ? std::vector<int>{cfg.k} : cfg.R_list;
    std::ostringstream csv;
    csv << "R,trial,sample,censored\n";
    json summary = json::array();
    for (int R : rs) {
        torbit::NmaxSamples s = torbit::run_nmax(cfg, R);
        for (size_t trial = 0; trial < s.samples.size(); ++trial)
            csv << R << ',' << trial << ',' << s.samples[trial] << ','
                << (s.samples[trial] == cfg.n_max + 1 ? 1 : 0) << '\n';
        json jr;
        jr["R"] = R;
        jr["trials"] = s.samples.size();
        jr["censored"] = s.censored;
        jr["tail_slope"] = s.tail_slope ? json(*s.tail_slope) : json(nullptr);
        summary.push_back(jr);
    }
    emit(out, csv.str());
    if (!json_out.empty()) emit(json_out, summary.dump(2) + "\n");
    return 0;
}

int run_orbit(const torbit::OrbitSpec& spec, uint64_t n_max, uint64_t budget,
              const std::vector<torbit::FactorTable>& tables, const std::string& out,
              const std::string& json_out) {
    const std::vector<torbit::FactorTable>* tp = tables.empty() ? nullptr : &tables;
    torbit::OrbitSeries series = torbit::iterate_orbit(spec, n_max, budget, tp);
    std::ostringstream csv;
    csv << "n,x_digits,y_digits,omega,exact,unresolved,ratio,running_min\n";
    for (const torbit::OrbitPoint& p : series.points) {
        if (p.skipped || !p.ratio) continue;
        csv << p.n << ',' << format_real(torbit::io::digits10(p.x)) << ','
            << format_real(torbit::io::digits10(p.y)) << ',' << p.omega.value << ','
            << (p.omega.exact ? 1 : 0) << ',' << p.omega.unresolved << ','
            << format_opt(p.ratio) << ',' << format_opt(p.running_min) << '\n';
    }
    emit(out, csv.str());
    if (!json_out.empty()) {
        json j;
        j["label"] = series.spec.label;
        j["n_max"] = n_max;
        j["zero_skipped"] = series.zero_skipped;
        j["unresolved_points"] = series.unresolved_points;
        j["unresolved_composites"] = series.unresolved_composites;
        emit(json_out, j.dump(2) + "\n");
    }
    return 0;
}

int run_sporadic(const std::string& pair_name, uint64_t n_bound, const std::string& out) {
    torbit::SigmaSearchResult res =
        torbit::search_sigma(torbit::sigma_pair_from_string(pair_name), n_bound);
    json j;
    j["pair"] = torbit::to_string(res.pair);
    j["R"] = res.R;
    j["n_bound"] = res.n_bound;
    j["hits"] = res.hits;
    j["one_prime_indices"] = res.one_prime_indices;
    j["prediction"] = res.prediction;
    j["certification_level"] = res.certification_level;
    emit(out, j.dump(2) + "\n");
    return 0;
}

int run_surd(const mpz_class& P, const mpz_class& Q, const mpz_class& D,
             uint64_t n_max, uint64_t budget, bool decompose, const std::string& out,
             const std::string& json_out) {
    torbit::SurdSpec surd = torbit::make_surd(P, Q, D);
    std::vector<torbit::SurdSeriesRow> rows = torbit::surd_ratio_series(surd, n_max, budget);
    std::ostringstream csv;
    csv << "n,p_digits,q_digits,omega,exact,ratio,running_min,loglog_pq\n";
    for (const torbit::SurdSeriesRow& r : rows)
        csv << r.n << ',' << format_real(torbit::io::digits10(r.p)) << ','
            << format_real(torbit::io::digits10(r.q)) << ',' << r.omega.value << ','
            << (r.omega.exact ? 1 : 0) << ',' << format_opt(r.ratio) << ','
            << format_opt(r.running_min) << ',' << format_opt(r.loglog_pq) << '\n';
    emit(out, csv.str());

    if (decompose || !json_out.empty()) {
        torbit::CFExpansion cf = torbit::cf_expand(surd);
        torbit::SurdOrbitDecomposition dec = torbit::surd_orbit_decomposition(cf);
        json j;
        j["surd"] = {{"P", surd.P.get_str()}, {"Q", surd.Q.get_str()},
                     {"D", surd.D.get_str()}};
        json pre = json::array(), per = json::array();
        for (const auto& a : cf.preperiod) pre.push_back(a.get_str());
        for (const auto& a : cf.period) per.push_back(a.get_str());
        j["preperiod"] = pre;
        j["period"] = per;
        j["gamma"] = mat_to_json(dec.gamma);
        json reps = json::array();
        for (const auto& [rp, rq] : dec.reps)
            reps.push_back(json::array({rp.get_str(), rq.get_str()}));
        j["reps"] = reps;
        j["beta_2"] = torbit::solve_beta(2).beta;
        emit(json_out.empty() ? std::string() : json_out, j.dump(2) + "\n");
    }
    return 0;
}

int run_forms(long A, long B, long C, long t, const mpz_class& height,
              bool allow_non_squarefree, const std::string& out) {
    torbit::QuadForm form{A, B, C};
    torbit::Mat2Q g = torbit::automorph(form);
    auto [pt, pu] = torbit::pell4_fundamental(form.discriminant());
    json j;
    j["form"] = {{"A", A}, {"B", B}, {"C", C}};
    j["discriminant"] = form.discriminant().get_str();
    j["pell"] = {{"t", pt.get_str()}, {"u", pu.get_str()}};
    j["automorph"] = mat_to_json(g);
    json per_t = json::array();
    for (long tv : {t, -t}) {
        auto reps = torbit::quadric_orbit_reps(form, tv, height, allow_non_squarefree);
        json jr;
        jr["t"] = tv;
        json vecs = json::array();
        for (const auto& [x, y] : reps)
            vecs.push_back(json::array({x.get_str(), y.get_str()}));
        jr["reps"] = vecs;
        jr["count"] = reps.size();
        per_t.push_back(jr);
    }
    j["orbits"] = per_t;
    j["height"] = height.get_str();
    j["note"] = "representatives are canonical within the enumeration box; orbits "
                "are merged only when connected by the automorph action inside the box";
    emit(out, j.dump(2) + "\n");
    return 0;
}

int run_figure(int id, uint64_t n_max, const std::vector<torbit::FactorTable>& tables,
               const std::string& out, const std::string& svg_out,
               const std::string& meta_out) {
    torbit::FigureDataset ds = torbit::reproduce_figure(id, tables, n_max);
    std::ostringstream csv;
    csv << "n,ratio,marker\n";
    for (const torbit::FigurePoint& p : ds.points)
        csv << p.n << ',' << format_real(p.ratio) << ',' << p.marker_class << '\n';
    emit(out, csv.str());
    if (!svg_out.empty()) {
        std::string title = "figure " + std::to_string(id) + ": " + ds.orbit_label;
        emit(svg_out, torbit::io::svg_scatter(ds, title));
    }
    if (!meta_out.empty()) {
        json j;
        j["figure"] = id;
        j["orbit_label"] = ds.orbit_label;
        j["denominator"] = ds.denominator;
        json refs = json::array();
        for (const torbit::ReferenceLine& l : ds.reference_lines)
            refs.push_back({{"k", l.k}, {"value", l.value}, {"label", l.label}});
        j["reference_lines"] = refs;
        j["points"] = ds.points.size();
        j["zero_skipped"] = ds.zero_skipped;
        j["guard_skipped"] = ds.guard_skipped;
        j["unresolved_points"] = ds.unresolved_points;
        j["unresolved_composites"] = ds.unresolved_composites;
        j["notes"] = ds.notes;
        emit(meta_out, j.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toral orbit statistics toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value config file");
    app.get_config_formatter_base()->comment('#');

    std::string out, json_out, svg_out, meta_out;
    std::vector<std::string> table_paths;
    uint64_t budget = torbit::kDefaultRhoBudget;

    // beta
    auto* c_beta = app.add_subcommand("beta", "saturation constants beta_k");
    int beta_k_max = 10;
    c_beta->add_option("--table", beta_k_max, "emit k = 1..K")->check(CLI::Range(1, 100000));
    c_beta->add_option("--out", out, "output CSV path (default stdout)");

    // sieve-count
    auto* c_sieve = app.add_subcommand("sieve-count", "exact N_r(T) with naive and "
                                                      "Selberg-Sathe columns");
    uint64_t sieve_T = 0;
    c_sieve->add_option("--T", sieve_T, "count integers in [1, T]")->required();
    c_sieve->add_option("--out", out, "output CSV path (default stdout)");
    c_sieve->add_option("--json", json_out, "JSON summary path");

    // nu
    auto* c_nu = app.add_subcommand("nu", "singular-series factor nu(z)");
    std::vector<double> nu_z;
    uint64_t nu_P = torbit::kDefaultNuTruncation;
    c_nu->add_option("--z", nu_z, "evaluation points in (0, 3/2]")->required();
    c_nu->add_option("--P", nu_P, "truncation bound for the Euler product");
    c_nu->add_option("--out", out, "output CSV path (default stdout)");

    // shared model options
    torbit::ModelConfig mcfg;
    auto add_model_opts = [&](CLI::App* c) {
        c->add_option("--k", mcfg.k, "number of coordinates")->check(CLI::Range(1, 64));
        c->add_option("--C", mcfg.C, "growth base (exact rational > 1)");
        c->add_option("--C-list", mcfg.C_list, "per-coordinate growth bases");
        c->add_option("--nmax", mcfg.n_max, "draws per trial")->required();
        c->add_option("--seed", mcfg.seed, "RNG seed");
        c->add_option("--trials", mcfg.trials, "number of independent trials");
        c->add_option("--R", mcfg.R_list, "tail thresholds");
    };
    auto* c_model = app.add_subcommand("model-run", "liminf experiment");
    add_model_opts(c_model);
    c_model->add_option("--out", out, "records CSV path (default stdout)");
    c_model->add_option("--json", json_out, "JSON summary path");

    auto* c_nmax = app.add_subcommand("nmax-run", "n(R) tail experiment");
    add_model_opts(c_nmax);
    c_nmax->add_option("--out", out, "samples CSV path (default stdout)");
    c_nmax->add_option("--json", json_out, "JSON summary path");

    // orbit
    auto* c_orbit = app.add_subcommand("orbit", "toral orbit Omega statistics");
    std::string orbit_named, orbit_gamma, orbit_v0;
    uint64_t orbit_nmax = 300;
    bool allow_nonhyp = false;
    c_orbit->add_option("--named", orbit_named, "named orbit label");
    c_orbit->add_option("--gamma", orbit_gamma, "matrix \"a,b,c,d\" (rationals)");
    c_orbit->add_option("--v0", orbit_v0, "start vector \"x,y\"");
    c_orbit->add_option("--nmax", orbit_nmax, "iterations");
    c_orbit->add_flag("--allow-non-hyperbolic", allow_nonhyp,
                      "skip the hyperbolicity requirement");
    c_orbit->add_option("--budget", budget, "rho budget per factorization");
    c_orbit->add_option("--tables", table_paths, "factor table files");
    c_orbit->add_option("--out", out, "output CSV path (default stdout)");
    c_orbit->add_option("--json", json_out, "JSON summary path");

    // sporadic
    auto* c_spor = app.add_subcommand("sporadic", "sporadic sigma sets");
    std::string spor_pair = "FF";
    uint64_t spor_bound = 1000;
    c_spor->add_option("--pair", spor_pair, "FF, LL, or FL")->required();
    c_spor->add_option("--nbound", spor_bound, "search bound");
    c_spor->add_option("--out", out, "output JSON path (default stdout)");

    // surd
    auto* c_surd = app.add_subcommand("surd", "continued-fraction convergent series");
    std::string surd_P = "0", surd_Q = "1", surd_D;
    uint64_t surd_nmax = 100;
    bool surd_decompose = false;
    c_surd->add_option("--P", surd_P, "surd (P + sqrt(D))/Q: P");
    c_surd->add_option("--Q", surd_Q, "surd (P + sqrt(D))/Q: Q");
    c_surd->add_option("--D", surd_D, "surd (P + sqrt(D))/Q: D")->required();
    c_surd->add_option("--nmax", surd_nmax, "convergent count");
    c_surd->add_flag("--decompose", surd_decompose, "emit the orbit decomposition JSON");
    c_surd->add_option("--budget", budget, "rho budget per factorization");
    c_surd->add_option("--out", out, "output CSV path (default stdout)");
    c_surd->add_option("--json", json_out, "decomposition JSON path");

    // forms
    auto* c_forms = app.add_subcommand("forms", "quadratic form automorph and "
                                                "quadric representatives");
    long form_A = 1, form_B = 0, form_C = -1, form_t = 1;
    std::string form_height = "200";
    bool allow_nsf = false;
    c_forms->add_option("--A", form_A, "coefficient A")->required();
    c_forms->add_option("--B", form_B, "coefficient B");
    c_forms->add_option("--C", form_C, "coefficient C")->required();
    c_forms->add_option("--t", form_t, "target value (both signs reported)")->required();
    c_forms->add_option("--height", form_height, "enumeration box bound");
    c_forms->add_flag("--allow-non-squarefree", allow_nsf,
                      "skip the square-free requirement on t");
    c_forms->add_option("--out", out, "output JSON path (default stdout)");

    // figure
    auto* c_fig = app.add_subcommand("figure", "reproduce figures 1..6");
    int fig_id = 1;
    uint64_t fig_nmax = 300;
    c_fig->add_option("id", fig_id, "figure id 1..6")->required()->check(CLI::Range(1, 6));
    c_fig->add_option("--nmax", fig_nmax, "orbit length");
    c_fig->add_option("--tables", table_paths, "factor table files");
    c_fig->add_option("--out", out, "output CSV path (default stdout)");
    c_fig->add_option("--svg", svg_out, "SVG rendering path");
    c_fig->add_option("--meta", meta_out, "JSON metadata path");

    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; })) {
        sc->fallthrough();   // route --config (and other parent flags) upward
        sc->configurable();  // allow [subcommand] sections in config files
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_beta->parsed()) return run_beta(beta_k_max, out);
        if (c_sieve->parsed()) return run_sieve_count(sieve_T, out, json_out);
        if (c_nu->parsed()) return run_nu(nu_z, nu_P, out);
        if (c_model->parsed()) return run_model(mcfg, out, json_out);
        if (c_nmax->parsed()) return run_nmax_cmd(mcfg, out, json_out);
        if (c_orbit->parsed()) {
            torbit::OrbitSpec spec;
            if (!orbit_named.empty()) {
                if (!orbit_gamma.empty() || !orbit_v0.empty())
                    throw std::invalid_argument("--named excludes --gamma/--v0");
                spec = torbit::named_orbit(orbit_named);
            } else {
                if (orbit_gamma.empty() || orbit_v0.empty())
                    throw std::invalid_argument("either --named or both --gamma and "
                                                "--v0 are required");
                auto [x0, y0] = parse_vec(orbit_v0);
                spec = torbit::make_orbit_spec(parse_gamma(orbit_gamma), x0, y0, "",
                                               allow_nonhyp);
            }
            return run_orbit(spec, orbit_nmax, budget, load_tables(table_paths), out,
                             json_out);
        }
        if (c_spor->parsed()) return run_sporadic(spor_pair, spor_bound, out);
        if (c_surd->parsed())
            return run_surd(parse_int(surd_P, "--P"), parse_int(surd_Q, "--Q"),
                            parse_int(surd_D, "--D"), surd_nmax, budget,
                            surd_decompose, out, json_out);
        if (c_forms->parsed())
            return run_forms(form_A, form_B, form_C, form_t,
                             parse_int(form_height, "--height"), allow_nsf, out);
        if (c_fig->parsed())
            return run_figure(fig_id, fig_nmax, load_tables(table_paths), out, svg_out,
                              meta_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
