// projcert: command-line front end with JSON input/output.
//
// Subcommands: project-l1, project-c0, remez, duality, coderiv, oracle.
// Exit codes: 0 success, 1 domain error (precondition violation or
// non-convergence), 2 usage error. Every exit prints a single JSON document.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "projcert/duality.hpp"
#include "projcert/json_io.hpp"

using projcert::AtomicMeasure;
using projcert::BestApprox;
using projcert::CStarFunctional;
using projcert::EvConstSeq;
using projcert::FiniteSeq;
using projcert::Fn;
using projcert::GeoTailSeq;
using projcert::L1Elem;
using projcert::Poly;
using projcert::json;

namespace {

json parse_json_arg(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("invalid JSON for ") + what + ": " + e.what());
    }
}

EvConstSeq evconst_from_arg(const std::string& text) {
    const json j = parse_json_arg(text, "evconst sequence");
    if (j.is_array()) return EvConstSeq(j.get<std::vector<double>>(), 0.0);
    return j.get<EvConstSeq>();
}

CStarFunctional cstar_from_arg(const std::string& text) {
    return parse_json_arg(text, "cstar functional").get<CStarFunctional>();
}

L1Elem l1_from_arg(const std::string& text) {
    return projcert::l1_elem_from_json(parse_json_arg(text, "l1 element"));
}

Fn function_from_args(const std::vector<std::string>& spec) {
    if (spec.empty()) throw std::invalid_argument("--function requires a catalog name");
    std::vector<double> params;
    for (std::size_t i = 1; i < spec.size(); ++i) params.push_back(std::stod(spec[i]));
    return projcert::make_catalog_function(spec[0], params);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// --json <file>: keys supply defaults for long options not given on argv.
std::vector<std::string> apply_json_payload(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--json");
    if (it == args.end() || it + 1 == args.end()) return args;
    const std::string path = *(it + 1);
    args.erase(it, it + 2);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open payload file: " + path);
    json payload;
    in >> payload;
    if (!payload.is_object()) throw std::invalid_argument("payload file must hold a JSON object");
    for (const auto& [key, value] : payload.items()) {
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        args.push_back(flag);
        if (value.is_string())
            args.push_back(value.get<std::string>());
        else
            args.push_back(value.dump());
    }
    return args;
}

// --- subcommand runners -------------------------------------------------------

int run_project_l1(const std::string& x_arg, const std::string& z_arg, double r, int sample,
                   std::uint64_t seed) {
    const L1Elem x = l1_from_arg(x_arg);
    json out;
    out["norm"] = projcert::norm1(x);
    out["r"] = r;
    const L1Elem canon = projcert::canonical_selection(x, r);
    out["canonical"] = projcert::sequence_to_json(canon);
    out["distance"] = projcert::l1_ball_distance(x, r);
    if (projcert::in_positive_cone(x)) {
        const auto set = projcert::projection_set(x, r);
        out["set"] = json(set);
        const auto sing = projcert::is_singleton(x, r);
        out["singleton"] = sing.singleton;
        if (sing.singleton) out["unique"] = projcert::sequence_to_json(*sing.unique_point);
        if (sample > 0) {
            const auto sampled = projcert::sample_members(set, sample, seed);
            json members = json::array();
            for (const auto& m : sampled.members) members.push_back(projcert::sequence_to_json(m));
            out["members"] = members;
            if (sampled.singleton_note) out["note"] = "set is singleton";
        }
        if (!z_arg.empty())
            out["monotone_inclusion"] = projcert::monotone_inclusion_check(
                l1_from_arg(z_arg), x, r, std::max(sample, 20), seed);
    } else {
        out["note"] = "x outside the positive cone: set descriptor unavailable, scaled selection only";
    }
    emit(out);
    return 0;
}

int run_project_c0(const std::string& x_arg, int sample, std::uint64_t seed) {
    const EvConstSeq x = evconst_from_arg(x_arg);
    const auto proj = projcert::project_c0(x);
    json out;
    out["distance"] = proj.distance;
    out["canonical"] = json(proj.canonical);
    if (sample > 0) {
        const auto members = projcert::sample_projection_members(x, sample, seed);
        json arr = json::array();
        for (const auto& m : members) arr.push_back(json(m));
        out["members"] = arr;
    }
    emit(out);
    return 0;
}

int run_remez(const std::vector<std::string>& fn_spec, int degree, double tol, int grid,
              const std::string& start, bool emit_mu, bool emit_maximizing,
              const std::vector<double>& gateaux_dir) {
    const Fn f = function_from_args(fn_spec);
    projcert::RemezOptions opts;
    opts.tol = tol;
    opts.grid_size = grid;
    opts.equispaced_start = start == "equi";
    const BestApprox cert = projcert::remez(f, degree, opts);
    if (!cert.converged) {
        emit(json{{"error",
                   json{{"kind", "domain"},
                        {"message", "remez did not converge"},
                        {"certificate", json(cert)}}}});
        return 1;
    }
    json out(cert);
    if (emit_mu) out["mu"] = json(projcert::mu_pf(f, cert));
    if (emit_maximizing) {
        const auto M = projcert::maximizing_set(
            [&f, &cert](double t) { return f(t) - cert.p(t); }, grid);
        out["maximizing_set"] = M.whole_interval ? json("whole-interval") : json(M.points);
    }
    if (!gateaux_dir.empty()) {
        const auto rep = projcert::gateaux_directional(f, degree, Poly(gateaux_dir), 1e-6, opts);
        out["gateaux"] = json{{"derivative", rep.derivative.coeffs()},
                              {"consistent", rep.consistent},
                              {"max_deviation", rep.max_deviation}};
    }
    emit(out);
    return 0;
}

int run_duality(const std::string& op, const std::string& x_arg, const std::string& y_arg,
                const std::string& z_arg, const std::string& u_arg, const std::string& phi_arg,
                const std::string& measure_arg, const std::vector<std::string>& fn_spec,
                double tol, int grid, double r, int sample, std::uint64_t seed) {
    json out;
    if (op == "kstar") {
        out = json(projcert::kstar(evconst_from_arg(phi_arg)));
    } else if (op == "j-l1") {
        out["member"] = projcert::j_l1_membership(l1_from_arg(x_arg), evconst_from_arg(phi_arg), tol);
    } else if (op == "j-c") {
        out["member"] =
            projcert::j_c_membership(evconst_from_arg(x_arg), cstar_from_arg(phi_arg), tol);
    } else if (op == "j-c01") {
        const AtomicMeasure mu = parse_json_arg(measure_arg, "measure").get<AtomicMeasure>();
        out["member"] = projcert::j_C01_membership(mu, function_from_args(fn_spec), tol, grid);
    } else if (op == "related") {
        const auto rep =
            projcert::generalized_identity_related(l1_from_arg(y_arg), l1_from_arg(z_arg), tol);
        out["related"] = rep.related;
        out["search_only"] = rep.search_only;
        if (rep.witness) out["witness"] = json(*rep.witness);
    } else if (op == "simplex-value") {
        const GeoTailSeq y = projcert::as_geo_tail(l1_from_arg(y_arg));
        const auto val = projcert::j_value_on_strict_simplex(y, tol);
        out["singleton"] = val.singleton;
        if (val.value) out["value"] = json(*val.value);
    } else if (op == "variational") {
        const FiniteSeq x = std::get<FiniteSeq>(l1_from_arg(x_arg));
        const FiniteSeq u = std::get<FiniteSeq>(l1_from_arg(u_arg));
        const int dim = std::max({x.max_index(), u.max_index(), 2});
        auto sampler = [r, dim, seed](int k) {
            if (k < 2 * dim) {
                const int m = k / 2 + 1;
                return FiniteSeq::axis(m, (k % 2 == 0 ? 1.0 : -1.0) * r);
            }
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(k));
            std::uniform_real_distribution<double> unif(-1.0, 1.0);
            FiniteSeq y;
            for (int i = 1; i <= dim; ++i) y = y + FiniteSeq::axis(i, unif(rng));
            const double n = y.norm1();
            if (n > 0.0) y = (r * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / n) * y;
            return y;
        };
        const auto rep = projcert::variational_inequality_check(x, u, sampler, sample, tol);
        out["holds"] = rep.holds;
        out["min_pairing"] = rep.min_pairing;
        out["functional"] = json(rep.functional);
    } else {
        throw std::invalid_argument("unknown duality op '" + op + "'");
    }
    emit(out);
    return 0;
}

int run_oracle(const std::string& x_arg, double r, int dim, double resolution) {
    const FiniteSeq x = std::get<FiniteSeq>(l1_from_arg(x_arg));
    const int d = dim > 0 ? dim : std::max(x.max_index(), 1);
    const auto res = projcert::brute_force_oracle(x, r, d, resolution);
    json out;
    out["min_distance"] = res.min_distance;
    out["grid_step"] = res.grid_step;
    out["argmin_count"] = res.argmin.size();
    json arr = json::array();
    for (std::size_t i = 0; i < res.argmin.size() && i < 32; ++i) arr.push_back(res.argmin[i]);
    out["argmin"] = arr;
    emit(out);
    return 0;
}

int run_coderiv(const std::string& space, const std::string& case_name, double r, double d,
                double q0, const std::string& x_arg, const std::string& psi_arg,
                const std::string& phi_arg, const std::string& gamma_arg,
                const std::string& mu_arg, const std::vector<std::string>& fn_spec, int degree,
                int battery, std::uint64_t seed, double tol) {
    json results = json::array();

    if (space == "l1-ball") {
        const GeoTailSeq x = x_arg.empty() ? GeoTailSeq::geometric(3.0)
                                           : projcert::as_geo_tail(l1_from_arg(x_arg));
        const EvConstSeq psi =
            psi_arg.empty() ? EvConstSeq({1.0, -0.5}, 0.25) : evconst_from_arg(psi_arg);
        const EvConstSeq theta;
        if (case_name == "thm3.4-i") {
            const L1Elem xi = x_arg.empty() ? L1Elem(FiniteSeq::from_dense({r / 4.0, r / 8.0}))
                                            : l1_from_arg(x_arg);
            const auto rep = projcert::membership_consistency_l1_interior(xi, r, psi, psi, battery,
                                                                          seed, tol);
            results.push_back(projcert::report_to_json(space, json(psi), json(psi), rep));
        } else if (case_name == "thm3.4-ii-a") {
            const auto in_rep =
                projcert::membership_consistency_l1(x, r, theta, theta, battery, seed, tol);
            results.push_back(projcert::report_to_json(space, json(theta), json(theta), in_rep));
            const auto ex =
                projcert::exclusion_certificate(projcert::witnesses_l1(x, r, psi, theta), tol);
            results.push_back(projcert::report_to_json(space, json(theta), json(psi), ex));
        } else if (case_name == "thm3.4-ii-b" || case_name == "thm3.4-ii-c") {
            const double level = case_name == "thm3.4-ii-c" ? x.norm1() : d;
            const EvConstSeq target = EvConstSeq::constant(level);
            const auto ex_theta =
                projcert::exclusion_certificate(projcert::witnesses_l1(x, r, theta, target), tol);
            results.push_back(projcert::report_to_json(space, json(target), json(theta), ex_theta));
            const auto ex_psi =
                projcert::exclusion_certificate(projcert::witnesses_l1(x, r, psi, target), tol);
            results.push_back(projcert::report_to_json(space, json(target), json(psi), ex_psi));
        } else {
            throw std::invalid_argument("unknown l1-ball case '" + case_name + "'");
        }
    } else if (space == "c-to-c0") {
        const EvConstSeq x = x_arg.empty() ? EvConstSeq({3.0, 2.0}, 2.0) : evconst_from_arg(x_arg);
        const CStarFunctional theta;
        const CStarFunctional psi = psi_arg.empty()
                                        ? CStarFunctional(0.5, FiniteSeq::axis(2, 4.0))
                                        : cstar_from_arg(psi_arg);
        if (case_name == "thm4.4-i") {
            const CStarFunctional target = CStarFunctional::limit_functional(q0);
            const auto in_rep =
                projcert::membership_consistency_c(x, theta, target, battery, seed, tol);
            results.push_back(projcert::report_to_json(space, json(target), json(theta), in_rep));
            const auto ex =
                projcert::exclusion_certificate(projcert::witnesses_c(x, psi, target), tol);
            results.push_back(projcert::report_to_json(space, json(target), json(psi), ex));
        } else if (case_name == "thm4.4-ii") {
            const CStarFunctional target = phi_arg.empty()
                                               ? CStarFunctional(0.0, FiniteSeq::axis(3, 2.0))
                                               : cstar_from_arg(phi_arg);
            const auto ex_theta =
                projcert::exclusion_certificate(projcert::witnesses_c(x, theta, target), tol);
            results.push_back(projcert::report_to_json(space, json(target), json(theta), ex_theta));
            const auto ex_psi =
                projcert::exclusion_certificate(projcert::witnesses_c(x, psi, target), tol);
            results.push_back(projcert::report_to_json(space, json(target), json(psi), ex_psi));
        } else {
            throw std::invalid_argument("unknown c-to-c0 case '" + case_name + "'");
        }
    } else if (space == "c01-to-pn") {
        const Fn f = fn_spec.empty()
                         ? projcert::make_catalog_function("poly", {0.0, -1.0, 0.0, 1.0})
                         : function_from_args(fn_spec);
        const BestApprox cert = projcert::remez(f, degree);
        if (!cert.converged) throw std::runtime_error("coderiv: remez did not converge");
        const AtomicMeasure theta;
        if (case_name == "thm5.10-i" || case_name == "thm5.10-ii") {
            const AtomicMeasure gamma =
                gamma_arg.empty() ? AtomicMeasure({{0.0, 1.0}})
                                  : parse_json_arg(gamma_arg, "gamma").get<AtomicMeasure>();
            const AtomicMeasure mu = mu_arg.empty()
                                         ? theta
                                         : parse_json_arg(mu_arg, "mu").get<AtomicMeasure>();
            const auto ex = projcert::exclusion_certificate(
                projcert::witnesses_c01(f, cert, gamma, mu), tol);
            results.push_back(projcert::report_to_json(space, json(mu), json(gamma), ex));
            const auto ex2 = projcert::exclusion_certificate(
                projcert::witnesses_c01(f, cert, mu, gamma), tol);
            results.push_back(projcert::report_to_json(space, json(gamma), json(mu), ex2));
        } else if (case_name == "thm5.10-iii") {
            const AtomicMeasure gamma =
                gamma_arg.empty() ? -1.0 * projcert::mu_pf(f, cert)
                                  : parse_json_arg(gamma_arg, "gamma").get<AtomicMeasure>();
            const AtomicMeasure mu = mu_arg.empty()
                                         ? theta
                                         : parse_json_arg(mu_arg, "mu").get<AtomicMeasure>();
            const auto ex = projcert::exclusion_certificate(
                projcert::witnesses_c01(f, cert, gamma, mu), tol);
            results.push_back(projcert::report_to_json(space, json(mu), json(gamma), ex));
        } else {
            throw std::invalid_argument("unknown c01-to-pn case '" + case_name + "'");
        }
    } else {
        throw std::invalid_argument("unknown space '" + space + "'");
    }

    emit(json{{"space", space}, {"case", case_name}, {"results", results}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for set-valued metric projections and coderivative probes"};
    app.require_subcommand(1);

    std::string x_arg, y_arg, z_arg, u_arg, phi_arg, psi_arg, measure_arg, gamma_arg, mu_arg;
    std::string op, space, case_name, start = "cheb";
    std::vector<std::string> fn_spec;
    double r = 1.0, d = 1.0, q0 = 1.0, tol = projcert::kDefaultTol, resolution = 1e-3;
    double remez_tol = 1e-10;
    int degree = 2, grid = 4096, sample = 0, dim = 0, battery = 64;
    std::uint64_t seed = 0;

    auto* p_l1 = app.add_subcommand("project-l1", "metric projection onto the l1 ball rB");
    p_l1->add_option("--x", x_arg, "point (JSON array or sequence object)")->required();
    p_l1->add_option("--r", r, "ball radius");
    p_l1->add_option("--sample", sample, "number of set members to sample");
    p_l1->add_option("--seed", seed, "rng seed");
    p_l1->add_option("--z", z_arg, "lower point: also check P(z) within P(x)");

    auto* p_c0 = app.add_subcommand("project-c0", "metric projection from c onto c0");
    p_c0->add_option("--x", x_arg, "point (evconst JSON)")->required();
    p_c0->add_option("--sample", sample, "number of set members to sample");
    p_c0->add_option("--seed", seed, "rng seed");

    bool emit_mu = false, emit_maximizing = false;
    std::vector<double> gateaux_dir;
    auto* p_rz = app.add_subcommand("remez", "best uniform polynomial approximation on [0,1]");
    p_rz->add_option("--function", fn_spec, "catalog function: poly c0 c1 ... | sin k | abs c | exp")
        ->required()
        ->expected(-1);
    p_rz->add_option("--degree", degree, "degree bound n")->required();
    p_rz->add_option("--tol", remez_tol, "convergence tolerance");
    p_rz->add_option("--grid", grid, "scan grid size");
    p_rz->add_option("--start", start, "initial reference: cheb | equi")
        ->check(CLI::IsMember({"cheb", "equi"}));
    p_rz->add_flag("--emit-mu", emit_mu, "include the duality measure of the certificate");
    p_rz->add_flag("--maximizing", emit_maximizing, "include the maximizing set of the residual");
    p_rz->add_option("--gateaux", gateaux_dir, "directional derivative along these coefficients")
        ->expected(-1);

    auto* p_du = app.add_subcommand("duality", "normalized duality mapping operations");
    p_du->add_option("--op", op,
                     "kstar | j-l1 | j-c | j-c01 | related | simplex-value | variational")
        ->required();
    p_du->add_option("--x", x_arg, "primal element");
    p_du->add_option("--y", y_arg, "primal element");
    p_du->add_option("--z", z_arg, "primal element");
    p_du->add_option("--u", u_arg, "candidate projection point");
    p_du->add_option("--phi", phi_arg, "dual element");
    p_du->add_option("--measure", measure_arg, "atomic measure JSON");
    p_du->add_option("--function", fn_spec, "catalog function")->expected(-1);
    p_du->add_option("--tol", tol, "membership tolerance");
    p_du->add_option("--grid", grid, "scan grid size");
    p_du->add_option("--r", r, "ball radius for the variational sampler");
    p_du->add_option("--sample", sample, "sampler size for the variational check");
    p_du->add_option("--seed", seed, "rng seed");

    auto* p_cd = app.add_subcommand("coderiv", "coderivative witness catalog runner");
    p_cd->add_option("--space", space, "l1-ball | c-to-c0 | c01-to-pn")->required();
    p_cd->add_option("--case", case_name, "theorem case, e.g. thm3.4-ii-a, thm4.4-i, thm5.10-iii")
        ->required();
    p_cd->add_option("--r", r, "ball radius");
    p_cd->add_option("--d", d, "target level beta_d");
    p_cd->add_option("--q0", q0, "limit-functional weight for thm4.4-i");
    p_cd->add_option("--x", x_arg, "base point override");
    p_cd->add_option("--psi", psi_arg, "candidate functional override");
    p_cd->add_option("--phi", phi_arg, "target functional override");
    p_cd->add_option("--gamma", gamma_arg, "candidate measure override");
    p_cd->add_option("--mu", mu_arg, "target measure override");
    p_cd->add_option("--function", fn_spec, "catalog function")->expected(-1);
    p_cd->add_option("--degree", degree, "degree bound n");
    p_cd->add_option("--battery", battery, "consistency battery size");
    p_cd->add_option("--seed", seed, "rng seed");
    p_cd->add_option("--tol", tol, "verdict tolerance");

    auto* p_or = app.add_subcommand("oracle", "brute-force l1 ball projection oracle");
    p_or->add_option("--x", x_arg, "point (JSON array)")->required();
    p_or->add_option("--r", r, "ball radius");
    p_or->add_option("--dim", dim, "ambient dimension (default: support of x)");
    p_or->add_option("--resolution", resolution, "agreement resolution");

    try {
        auto args = apply_json_payload(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        emit(json{{"error", json{{"kind", "usage"}, {"message", e.what()}}}});
        return 2;
    } catch (const std::exception& e) {
        emit(json{{"error", json{{"kind", "usage"}, {"message", e.what()}}}});
        return 2;
    }

    try {
        if (p_l1->parsed()) return run_project_l1(x_arg, z_arg, r, sample, seed);
        if (p_c0->parsed()) return run_project_c0(x_arg, sample, seed);
        if (p_rz->parsed())
            return run_remez(fn_spec, degree, remez_tol, grid, start, emit_mu, emit_maximizing,
                             gateaux_dir);
        if (p_du->parsed())
            return run_duality(op, x_arg, y_arg, z_arg, u_arg, phi_arg, measure_arg, fn_spec, tol,
                               grid, r, sample, seed);
        if (p_cd->parsed())
            return run_coderiv(space, case_name, r, d, q0, x_arg, psi_arg, phi_arg, gamma_arg,
                               mu_arg, fn_spec, degree, battery, seed, tol);
        if (p_or->parsed()) return run_oracle(x_arg, r, dim, resolution);
        emit(json{{"error", json{{"kind", "usage"}, {"message", "no subcommand"}}}});
        return 2;
    } catch (const std::exception& e) {
        emit(json{{"error", json{{"kind", "domain"}, {"message", e.what()}}}});
        return 1;
    }
}
