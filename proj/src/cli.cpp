#include "zs/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "zs/asymptotics.hpp"
#include "zs/potential_io.hpp"
#include "zs/spectrum.hpp"
#include "zs/verify.hpp"
#include "zs/wkb.hpp"

namespace zs::cli {

namespace {

using nlohmann::json;

Potential make_potential(const RunConfig& cfg)
{
    if (!cfg.potential_path.empty())
        return load_potential(cfg.potential_path);
    if (cfg.preset.empty())
        throw std::invalid_argument("no potential: pass --potential FILE or --preset NAME");
    const int M = cfg.grid_size.value_or(64);
    if (cfg.preset == "zero")
        return Potential::zero(M);
    if (cfg.preset == "constant")
        return Potential::constant(cfg.a, cfg.b, M);
    if (cfg.preset == "single_mode")
        return Potential::single_mode(cfg.a, cfg.b, M);
    throw std::invalid_argument("unknown preset '" + cfg.preset + "'");
}

void validate(const RunConfig& cfg)
{
    if (cfg.n_min > cfg.n_max)
        throw std::invalid_argument("invalid range: n_min exceeds n_max");
    if (cfg.order < 1)
        throw std::invalid_argument("invalid order: N must be >= 1");
    if (!(cfg.tol > 0.0))
        throw std::invalid_argument("invalid tol: must be positive");
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::invalid_argument("invalid format '" + cfg.format + "': use csv or json");
}

void write_text(const RunConfig& cfg, const std::string& text, const std::string& suffix = "")
{
    if (cfg.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n')
            std::cout << '\n';
        return;
    }
    const std::string path = cfg.out_path + suffix;
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write output file '" + path + "'");
    out << text;
}

std::vector<ClaimId> requested_claims(const RunConfig& cfg, bool real_type)
{
    std::vector<ClaimId> ids;
    for (const std::string& tag : cfg.theorems) {
        if (tag == "all") {
            for (ClaimId id : all_claims) {
                const bool needs_real = id == ClaimId::pair_real || id == ClaimId::gap_real;
                if (!needs_real || real_type)
                    ids.push_back(id);
            }
            continue;
        }
        const auto id = parse_claim(tag);
        if (!id)
            throw std::invalid_argument("unknown theorem tag '" + tag + "'");
        ids.push_back(*id);
    }
    if (ids.empty())
        throw std::invalid_argument("no theorem requested: pass --theorem TAG (or 'all')");
    return ids;
}

json complex_json(cd v)
{
    return {{"re", v.real()}, {"im", v.imag()}};
}

int cmd_spectrum(const RunConfig& cfg)
{
    const Potential p = make_potential(cfg);
    SolverSettings s;
    s.tol = cfg.tol;
    s.n_floor = cfg.n_floor;
    const SpectralTable t = spectral_table(p, cfg.n_min, cfg.n_max, s);

    if (cfg.format == "csv") {
        std::ostringstream os;
        write_csv(t, os);
        write_text(cfg, os.str());
    } else {
        json j;
        j["n_min"] = t.n_min;
        j["n_max"] = t.n_max;
        const auto nb = localization_bound(t);
        j["localization_bound"] = nb ? json(*nb) : json();
        j["rows"] = json::array();
        for (const SpectralRow& r : t.rows)
            j["rows"].push_back({{"n", r.n},
                                 {"mu", complex_json(r.mu)},
                                 {"lam_minus", complex_json(r.lam_minus)},
                                 {"lam_plus", complex_json(r.lam_plus)},
                                 {"lam_dot", complex_json(r.lam_dot)},
                                 {"gamma", complex_json(r.gamma)},
                                 {"tau", complex_json(r.tau)},
                                 {"kappa", complex_json(r.kappa)},
                                 {"Delta_at_mu", complex_json(r.Delta_at_mu)},
                                 {"delta_at_mu", complex_json(r.delta_at_mu)},
                                 {"converged", r.converged()},
                                 {"localized", r.localized}});
        write_text(cfg, j.dump(2));
    }
    return 0;
}

int cmd_coeffs(const RunConfig& cfg)
{
    const Potential p = make_potential(cfg);
    const WkbTable t = wkb_coefficients(p, cfg.order);
    const ExpansionSeries series = marchenko_coefficients(t.I);

    json j;
    j["order"] = t.order;
    j["grid_size"] = t.grid_size;
    j["defect"] = vanishing_defect(t);
    for (const char* name : {"I", "J", "c"}) {
        const auto& src = name[0] == 'I' ? t.I : (name[0] == 'J' ? t.J : series.c);
        json arr = json::array();
        for (const cd& v : src)
            arr.push_back(complex_json(v));
        j[name] = arr;
    }
    json rs = json::array(), ss = json::array();
    for (const auto& rk : t.r) {
        json arr = json::array();
        for (const cd& v : rk)
            arr.push_back(complex_json(v));
        rs.push_back(arr);
    }
    for (const auto& sk : t.s) {
        json arr = json::array();
        for (const cd& v : sk)
            arr.push_back(complex_json(v));
        ss.push_back(arr);
    }
    j["r"] = rs;
    j["s"] = ss;
    write_text(cfg, j.dump(2));
    return 0;
}

int cmd_predict(const RunConfig& cfg)
{
    const Potential p = make_potential(cfg);
    const ExpansionSeries series = expansion_series(p, cfg.order);
    const auto ids = requested_claims(cfg, p.is_real_type());

    json out = json::array();
    const int lo = cfg.predict_n != 0 ? cfg.predict_n : cfg.n_min;
    const int hi = cfg.predict_n != 0 ? cfg.predict_n : cfg.n_max;
    for (ClaimId id : ids) {
        for (int n = lo; n <= hi; ++n) {
            if (n == 0)
                continue;
            const Prediction pr = predict(p, series, id, n);
            json e;
            e["theorem"] = to_string(id);
            e["n"] = n;
            json vals = json::array();
            vals.push_back(complex_json(pr.value));
            if (pr.value2)
                vals.push_back(complex_json(*pr.value2));
            e["prediction"] = vals;
            e["set_valued"] = pr.set_valued;
            e["decay_power"] = pr.decay_power;
            out.push_back(e);
        }
    }
    write_text(cfg, out.dump(2));
    return 0;
}

int cmd_verify(const RunConfig& cfg)
{
    const Potential p = make_potential(cfg);
    const auto ids = requested_claims(cfg, p.is_real_type());
    const ExpansionSeries series = expansion_series(p, cfg.order);
    SolverSettings s;
    s.tol = cfg.tol;
    s.n_floor = cfg.n_floor;
    const SpectralTable t = spectral_table(p, cfg.n_min, cfg.n_max, s);

    bool all_pass = true;
    json summary = json::array();
    for (ClaimId id : ids) {
        const ResidualReport rep = residual_report(p, t, series, id, cfg.slack);
        all_pass = all_pass && rep.pass;
        summary.push_back(json::parse(report_to_json(rep)));
        if (!cfg.out_path.empty()) {
            std::ostringstream csv;
            report_to_csv(rep, csv);
            write_text(cfg, csv.str(), "." + to_string(id) + ".csv");
            write_text(cfg, report_to_json(rep), "." + to_string(id) + ".json");
        }
        std::cout << "theorem " << to_string(id) << ": " << (rep.pass ? "pass" : "FAIL")
                  << "  sup_weighted=" << rep.sup_weighted << "  slope="
                  << (rep.slope_valid ? std::to_string(rep.slope) : std::string("n/a"))
                  << "  (claimed power " << rep.power << ")\n";
    }
    if (!cfg.out_path.empty())
        write_text(cfg, summary.dump(2), ".summary.json");
    return all_pass ? 0 : 1;
}

int cmd_a1check(const RunConfig& cfg)
{
    const Potential p = make_potential(cfg);
    std::vector<cd> samples;
    const std::vector<double> rs =
        cfg.lambda_re.empty() ? std::vector<double>{50, 100, 200, 400, 800} : cfg.lambda_re;
    const std::vector<double> ims = cfg.lambda_im.empty() ? std::vector<double>{0.0} : cfg.lambda_im;
    for (double re : rs)
        for (double im : ims)
            samples.emplace_back(re, im);
    const A1Check chk = a1_bound_check(p, samples, std::min(cfg.tol * 1e3, 1e-9));

    json j;
    j["sup"] = chk.sup;
    j["min"] = chk.min;
    j["ratio"] = chk.ratio;
    j["samples"] = json::array();
    for (const A1Sample& s : chk.samples)
        j["samples"].push_back(
            {{"lambda", complex_json(s.lambda)}, {"err", s.err}, {"weighted", s.weighted}});
    write_text(cfg, j.dump(2));
    return 0;
}

}  // namespace

int run(const RunConfig& cfg)
{
    try {
        validate(cfg);
        if (cfg.command == "spectrum")
            return cmd_spectrum(cfg);
        if (cfg.command == "coeffs")
            return cmd_coeffs(cfg);
        if (cfg.command == "predict")
            return cmd_predict(cfg);
        if (cfg.command == "verify")
            return cmd_verify(cfg);
        if (cfg.command == "a1check")
            return cmd_a1check(cfg);
        throw std::invalid_argument("unknown command '" + cfg.command + "'");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace zs::cli
