// Command-line surface: Tor tables, toric and stratification pipelines,
// group catalog lookups, spectral-sequence pages and the built-in selftest.
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 internal
// consistency failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "emtor/errors.hpp"
#include "emtor/json_io.hpp"
#include "emtor/selftest.hpp"
#include "emtor/svg.hpp"

namespace {

using namespace emtor;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ValidationError("cannot write '" + out_path + "'");
    out << text;
}

std::string tor_table(const BigradedTor& t) {
    std::ostringstream os;
    os << "  p   q   dim   (E_2^{-p,q}; trusted for q <= " << t.trusted_q
       << ")\n";
    for (const auto& [key, d] : t.dims)
        if (d != 0)
            os << "  " << key.first << "   " << key.second << "   " << d
               << "\n";
    return os.str();
}

std::string tor_csv(const BigradedTor& t) {
    std::ostringstream os;
    os << "p,q,dim\n";
    for (const auto& [key, d] : t.dims)
        if (d != 0) os << key.first << "," << key.second << "," << d << "\n";
    return os.str();
}

std::string weighted_table(const WeightedGradedVectorSpace& w) {
    std::ostringstream os;
    os << "  degree   weight   dim\n";
    for (const auto& [key, d] : w.dims)
        if (d != 0)
            os << "  " << key.first << "        " << key.second << "        "
               << d << "\n";
    return os.str();
}

std::string weighted_csv(const WeightedGradedVectorSpace& w) {
    std::ostringstream os;
    os << "degree,weight,dim\n";
    for (const auto& [key, d] : w.dims)
        if (d != 0) os << key.first << "," << key.second << "," << d << "\n";
    return os.str();
}

struct CommonOpts {
    int degree = -1;
    std::string method = "koszul";
    std::string format = "table";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_method) {
    cmd->add_option("-D,--degree", o.degree, "truncation degree");
    if (with_method)
        cmd->add_option("--method", o.method, "koszul | bar | smith | all")
            ->check(CLI::IsMember({"koszul", "bar", "smith", "all"}));
    cmd->add_option("--format", o.format, "table | json | csv | svg")
        ->check(CLI::IsMember({"table", "json", "csv", "svg"}));
    cmd->add_option("--out", o.out, "output file (default stdout)");
}

BigradedTor smith_route(const GradedModule& m, int bound) {
    const int steps = bound / 2 + 2;
    if (2 * steps > m.truncation)
        throw ValidationError(
            "smith method: truncation too small for the requested degree "
            "(needs D <= truncation - 4)");
    const SmithResolution res = smith_resolution(m, steps);
    return tor_from_resolution(res, trivial_module(m.ring, m.truncation),
                               bound);
}

int cmd_tor(const std::string& path, const CommonOpts& o) {
    const GradedModule m = module_from_json(load_json_file(path));
    const int bound = o.degree < 0 ? m.truncation : o.degree;
    if (bound > m.truncation)
        throw ValidationError("requested degree exceeds module truncation");

    std::map<std::string, BigradedTor> routes;
    const GradedModule triv = trivial_module(m.ring, m.truncation);
    if (o.method == "koszul" || o.method == "all")
        routes["koszul"] = koszul_tor(truncate(m, bound), bound);
    if (o.method == "bar" || o.method == "all")
        routes["bar"] = bar_tor(truncate(m, bound),
                                polynomial_algebra(m.ring, bound),
                                truncate(triv, bound), bound);
    if (o.method == "smith" || o.method == "all")
        routes["smith"] = smith_route(m, o.method == "all"
                                             ? std::min(bound,
                                                        m.truncation - 4)
                                             : bound);
    std::string agreement;
    if (o.method == "all") {
        int common = m.truncation;
        for (const auto& [name, t] : routes)
            common = std::min(common, t.trusted_q);
        for (const auto& [name, t] : routes)
            if (restrict_q(t, common).dims !=
                restrict_q(routes.begin()->second, common).dims)
                throw ConsistencyError("method disagreement: " + name +
                                       " differs from " +
                                       routes.begin()->first +
                                       " for q <= " + std::to_string(common));
        agreement = "methods agree for q <= " + std::to_string(common);
    }

    const BigradedTor& t = routes.count("koszul") ? routes["koszul"]
                                                  : routes.begin()->second;
    const WeightedGradedVectorSpace w = assemble_cohomology(t);
    if (o.format == "json") {
        json j{{"tor", tor_to_json(t)}, {"cohomology", weighted_to_json(w)}};
        if (!agreement.empty()) j["agreement"] = agreement;
        emit(j.dump(2) + "\n", o.out);
    } else if (o.format == "csv") {
        emit(tor_csv(t), o.out);
    } else if (o.format == "svg") {
        emit(weight_diagram_svg(w, "assembled cohomology"), o.out);
    } else {
        std::ostringstream os;
        os << "Tor table:\n" << tor_table(t);
        os << "assembled cohomology:\n" << weighted_table(w);
        if (!agreement.empty()) os << agreement << "\n";
        emit(os.str(), o.out);
    }
    return 0;
}

int cmd_toric(const std::string& path, const CommonOpts& o) {
    const Fan f = fan_from_json(load_json_file(path));
    const int bound = o.degree < 0 ? 2 * f.ambient_rank + 2 : o.degree;
    const ToricCohomology tc = toric_cohomology(f, bound);
    const PurityReport purity = purity_check(tc.cohomology);

    std::vector<long> betti;
    for (int k = 0; k <= 2 * f.ambient_rank; ++k)
        betti.push_back(tc.cohomology.total(k));
    bool h_check = tc.smooth && tc.complete;
    if (h_check)
        for (int k = 0; k <= f.ambient_rank; ++k)
            h_check = h_check &&
                      betti[static_cast<std::size_t>(2 * k)] ==
                          tc.h[static_cast<std::size_t>(k)];

    if (o.format == "json") {
        json j{{"smooth", tc.smooth},
               {"complete", tc.complete},
               {"h_vector", tc.h},
               {"betti", betti},
               {"pure", purity.pure},
               {"tor", tor_to_json(tc.tor)},
               {"cohomology", weighted_to_json(tc.cohomology)}};
        if (tc.smooth && tc.complete) j["h_betti_match"] = h_check;
        emit(j.dump(2) + "\n", o.out);
    } else if (o.format == "csv") {
        emit(weighted_csv(tc.cohomology), o.out);
    } else if (o.format == "svg") {
        emit(weight_diagram_svg(tc.cohomology, "toric cohomology"), o.out);
    } else {
        std::ostringstream os;
        os << "smooth: " << (tc.smooth ? "yes" : "no")
           << "   complete: " << (tc.complete ? "yes" : "no") << "\n";
        os << "h-vector:";
        for (long h : tc.h) os << " " << h;
        os << "\nBetti:";
        for (long b : betti) os << " " << b;
        os << "\npure: " << (purity.pure ? "yes" : "no") << "\n";
        if (tc.smooth && tc.complete)
            os << "b_{2k} = h_k: " << (h_check ? "pass" : "FAIL") << "\n";
        os << "weight table:\n" << weighted_table(tc.cohomology);
        emit(os.str(), o.out);
    }
    if (tc.smooth && tc.complete && !h_check)
        throw ConsistencyError("h-vector does not match Betti numbers");
    return 0;
}

int cmd_strata(const std::string& path, const CommonOpts& o) {
    const int bound = o.degree < 0 ? 20 : o.degree;
    const OrbitStratification s =
        stratification_from_json(load_json_file(path), bound);
    const WeightedGradedVectorSpace w = equivariant_series(s, bound);
    if (o.format == "json")
        emit(json{{"series", weighted_to_json(w)},
                  {"pure", w.is_pure()}}.dump(2) +
                 "\n",
             o.out);
    else if (o.format == "csv")
        emit(weighted_csv(w), o.out);
    else if (o.format == "svg")
        emit(weight_diagram_svg(w, "equivariant series"), o.out);
    else
        emit("equivariant series (pure):\n" + weighted_table(w), o.out);
    return 0;
}

int cmd_group(const std::string& spec, const CommonOpts& o) {
    const GroupData g = catalog_lookup(spec);
    const WeightedExteriorAlgebra e = group_cohomology(g);
    const WeightedGradedVectorSpace w = expand_exterior(e);
    if (o.format == "json") {
        json j{{"name", g.name},
               {"bg_generator_degrees", g.bg_generator_degrees},
               {"generator_degrees", e.generator_degrees},
               {"generator_weights", e.generator_weights},
               {"cohomology", weighted_to_json(w)}};
        emit(j.dump(2) + "\n", o.out);
    } else if (o.format == "csv") {
        emit(weighted_csv(w), o.out);
    } else if (o.format == "svg") {
        emit(weight_diagram_svg(w, "group cohomology"), o.out);
    } else {
        std::ostringstream os;
        os << "BG generator degrees:";
        for (int d : g.bg_generator_degrees) os << " " << d;
        os << "\ngroup cohomology (degree, weight):\n" << weighted_table(w);
        emit(os.str(), o.out);
    }
    return 0;
}

int cmd_ss(const std::string& path, const CommonOpts& o, bool pure) {
    const GradedModule m = module_from_json(load_json_file(path));
    const int bound = o.degree < 0 ? m.truncation : o.degree;
    if (bound > m.truncation)
        throw ValidationError("requested degree exceeds module truncation");
    const GradedModule mm = truncate(m, bound);
    const GradedAlgebra a = polynomial_algebra(m.ring, bound);
    const GradedModule triv = trivial_module(m.ring, bound);
    const EmFilteredComplex em = em_filtered_complex(mm, a, triv, bound, pure);
    const SpectralSequence ss = pages(em.fc);

    json out = json::array();
    std::ostringstream os;
    for (const Page& p : ss.pages) {
        out.push_back(page_to_json(p, em.p_max));
        os << "page r=" << p.r << " (entries as E_r^{-p,q}):\n";
        for (const auto& [key, d] : em_page_dims(p, em.p_max))
            os << "  p=" << key.first << " q=" << key.second << " dim=" << d
               << "\n";
        os << "  nonzero d_" << p.r << " maps: "
           << p.nonzero_differentials() << "\n";
    }
    if (pure) {
        const BigradedTor t = bar_tor(mm, a, triv, bound);
        const DegenerationCertificate cert =
            degeneration_certificate(t, true, true, true);
        os << "degeneration certificate: "
           << (cert.all_discharged ? "all higher differentials discharged"
                                   : "NOT discharged")
           << " (" << cert.entries.size() << " weight obligations)\n";
        json centries = json::array();
        for (const auto& e : cert.entries)
            centries.push_back(json{{"r", e.r},
                                    {"source", {e.p_source, e.q_source}},
                                    {"target", {e.p_target, e.q_target}},
                                    {"discharged", e.discharged}});
        out = json{{"pages", out}, {"certificate", centries}};
        if (!cert.all_discharged)
            throw ConsistencyError("degeneration certificate not discharged");
    }
    emit(o.format == "json" ? out.dump(2) + "\n" : os.str(), o.out);
    return 0;
}

int cmd_selftest(unsigned seed, const std::string& data_dir) {
    const SelftestReport report = run_selftest(seed, data_dir);
    for (const CriterionResult& r : report.results)
        std::cout << "criterion " << r.id << " [" << r.name << "]: "
                  << (r.pass ? "pass" : "FAIL") << " — " << r.detail << "\n";
    if (!report.all_pass) {
        std::cerr << "selftest failed\n";
        return 3;
    }
    std::cout << "selftest: all criteria pass\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bigraded Tor, weight filtrations and spectral sequences "
                 "for graded modules over polynomial rings"};
    app.require_subcommand(1);

    std::string tor_path, toric_path, strata_path, group_spec, ss_path;
    std::string data_dir = "data";
    unsigned seed = 20260823;
    bool ss_pure = false;
    CommonOpts tor_o, toric_o, strata_o, group_o, ss_o;

    CLI::App* tor_cmd = app.add_subcommand("tor", "Tor of a graded module");
    tor_cmd->add_option("module", tor_path, "module JSON file")->required();
    add_common(tor_cmd, tor_o, true);

    CLI::App* toric_cmd = app.add_subcommand("toric", "toric pipeline");
    toric_cmd->add_option("fan", toric_path, "fan JSON file")->required();
    add_common(toric_cmd, toric_o, false);

    CLI::App* strata_cmd =
        app.add_subcommand("strata", "orbit stratification series");
    strata_cmd->add_option("orbits", strata_path, "stratification JSON file")
        ->required();
    add_common(strata_cmd, strata_o, false);

    CLI::App* group_cmd = app.add_subcommand("group", "group catalog lookup");
    group_cmd->add_option("spec", group_spec, "group spec string")
        ->required();
    add_common(group_cmd, group_o, false);

    CLI::App* ss_cmd =
        app.add_subcommand("ss", "spectral sequence of the bar filtration");
    ss_cmd->add_option("module", ss_path, "module JSON file")->required();
    ss_cmd->add_flag("--pure", ss_pure,
                     "inputs are pure: also emit the degeneration "
                     "certificate");
    add_common(ss_cmd, ss_o, false);

    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "run all acceptance checks");
    selftest_cmd->add_option("--seed", seed, "random seed");
    selftest_cmd->add_option("--data", data_dir, "fixture directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the usage error
        return code == 0 ? 0 : 1;
    }

    try {
        if (tor_cmd->parsed()) return cmd_tor(tor_path, tor_o);
        if (toric_cmd->parsed()) return cmd_toric(toric_path, toric_o);
        if (strata_cmd->parsed()) return cmd_strata(strata_path, strata_o);
        if (group_cmd->parsed()) return cmd_group(group_spec, group_o);
        if (ss_cmd->parsed()) return cmd_ss(ss_path, ss_o, ss_pure);
        if (selftest_cmd->parsed()) return cmd_selftest(seed, data_dir);
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const EmtorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
