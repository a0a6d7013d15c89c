#include "kproj/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kproj/json_io.hpp"
#include "kproj/verify.hpp"

namespace kproj::cli {

namespace {

// Values may be inline JSON or a path to a JSON file.
json load_json(const std::string& text) {
    if (!text.empty() && (text[0] == '{' || text[0] == '[')) return json::parse(text);
    std::ifstream in(text);
    if (!in) throw validation_error("cannot open JSON file '" + text + "'");
    json j;
    in >> j;
    return j;
}

void emit(const json& payload, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << payload.dump(2) << "\n";
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw validation_error("cannot write to '" + out_path + "'");
    file << payload.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw validation_error("cannot write to '" + out_path + "'");
    file << text;
}

std::string points_csv(const std::vector<ProjPoint>& pts) {
    std::ostringstream os;
    os.precision(17);
    for (size_t n = 0; n < pts.size(); ++n) {
        os << n;
        for (const auto& s : pts[n].rep)
            for (int c = 0; c < real_dim(pts[n].field); ++c) os << "," << s.c[c];
        os << "\n";
    }
    return os.str();
}

struct Options {
    std::string domain, matrix, point, p, q, generators, sphere, z, out;
    std::string field = "c", format = "json";
    int dim = 2, steps = 20, depth = 12, samples = 1000, dual_samples = 0, words = 200;
    std::uint64_t seed = 1;
    double tolerance = 0;
    bool show_config = false;
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"projective domains over R, C, H: metrics, dynamics, Moebius maps"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", o.out, "write the artifact to this path");
        cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--seed", o.seed);
        cmd->add_option("--tol", o.tolerance,
                        "tighten the command's own check (dist: interior margin; map-sphere: "
                        "holdout residual); library defaults via `verify --show-config`");
    };

    auto* dist = app.add_subcommand("dist", "distance C_Omega(p, q)");
    dist->add_option("--domain", o.domain)->required();
    dist->add_option("--p", o.p)->required();
    dist->add_option("--q", o.q)->required();
    dist->add_option("--dual-samples", o.dual_samples, "use a sampled dual of this size");
    add_common(dist);

    auto* classify_cmd = app.add_subcommand("classify", "proximal classification of a map");
    classify_cmd->add_option("--matrix", o.matrix)->required();
    add_common(classify_cmd);

    auto* iterate_cmd = app.add_subcommand("iterate", "orbit of a point under a map");
    iterate_cmd->add_option("--matrix", o.matrix)->required();
    iterate_cmd->add_option("--point", o.point)->required();
    iterate_cmd->add_option("--steps", o.steps);
    add_common(iterate_cmd);

    auto* std_cmd = app.add_subcommand("standard-form", "standard coordinates of a bi-proximal map");
    std_cmd->add_option("--domain", o.domain)->required();
    std_cmd->add_option("--matrix", o.matrix)->required();
    add_common(std_cmd);

    auto* limit_cmd = app.add_subcommand("limit-set", "boundary accumulation of random orbit words");
    limit_cmd->add_option("--domain", o.domain)->required();
    limit_cmd->add_option("--generators", o.generators)->required();
    limit_cmd->add_option("--point", o.point);
    limit_cmd->add_option("--depth", o.depth);
    limit_cmd->add_option("--words", o.words);
    add_common(limit_cmd);

    auto* dual_cmd = app.add_subcommand("dual", "certified dual functionals of a domain");
    dual_cmd->add_option("--domain", o.domain)->required();
    dual_cmd->add_option("--samples", o.samples);
    add_common(dual_cmd);

    auto* moebius_cmd = app.add_subcommand("moebius", "Moebius actions on K + infinity");
    moebius_cmd->require_subcommand(1);
    auto* mapply = moebius_cmd->add_subcommand("apply", "act on an extended scalar");
    mapply->add_option("--field", o.field)->check(CLI::IsMember({"r", "c", "h"}));
    mapply->add_option("--matrix", o.matrix)->required();
    mapply->add_option("--z", o.z, "scalar payload, or \"inf\"")->required();
    add_common(mapply);
    auto* msphere = moebius_cmd->add_subcommand("map-sphere", "transport a sphere/hyperplane locus");
    msphere->add_option("--field", o.field)->check(CLI::IsMember({"r", "c", "h"}));
    msphere->add_option("--matrix", o.matrix)->required();
    msphere->add_option("--sphere", o.sphere)->required();
    add_common(msphere);
    auto* mhalf = moebius_cmd->add_subcommand("check-halfspace", "membership in Aut_0 of Re(z) > 0");
    mhalf->add_option("--field", o.field)->check(CLI::IsMember({"r", "c", "h"}));
    mhalf->add_option("--matrix", o.matrix)->required();
    add_common(mhalf);

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    verify_cmd->add_flag("--show-config", o.show_config, "print every tolerance default and exit");
    add_common(verify_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (dist->parsed()) {
        const Domain domain = domain_from_json(load_json(o.domain));
        const ProjPoint p = canonicalize(coords_from_json(json::parse(o.p), domain.field()));
        const ProjPoint q = canonicalize(coords_from_json(json::parse(o.q), domain.field()));
        if (o.tolerance > 0 &&
            (domain.defining_value(p) >= -o.tolerance || domain.defining_value(q) >= -o.tolerance))
            throw validation_error("a point sits closer to the boundary than the requested margin");
        DistanceResult r;
        if (o.dual_samples > 0) {
            const DualSample dual = dual_sample(domain, o.dual_samples, o.seed);
            r = general_distance(domain, p, q, dual);
            if (domain.kind() == DomainKind::Ball) r = refine_on_ball_dual(domain, p, q, r);
        } else if (domain.kind() == DomainKind::Ball) {
            r = ball_distance(domain, p, q);
        } else {
            const DualSample dual = dual_sample(domain, 2000, o.seed);
            r = general_distance(domain, p, q, dual);
        }
        emit(distance_to_json(r), o.out, out);
        return 0;
    }
    if (classify_cmd->parsed()) {
        const ProjMap phi(matrix_from_json(load_json(o.matrix)));
        emit(proximal_to_json(classify(phi)), o.out, out);
        return 0;
    }
    if (iterate_cmd->parsed()) {
        const ProjMap phi(matrix_from_json(load_json(o.matrix)));
        const ProjPoint p = canonicalize(coords_from_json(json::parse(o.point), phi.field()));
        const auto orbit = iterate_orbit(phi, p, o.steps);
        if (o.format == "csv") {
            emit_text(points_csv(orbit), o.out, out);
        } else {
            json pts = json::array();
            for (const auto& x : orbit) pts.push_back(point_to_json(x));
            emit(json{{"steps", o.steps}, {"orbit", pts}}, o.out, out);
        }
        return 0;
    }
    if (std_cmd->parsed()) {
        const Domain domain = domain_from_json(load_json(o.domain));
        const ProjMap phi(matrix_from_json(load_json(o.matrix)));
        const StandardForm sf = standard_form(domain, phi);
        emit(json{{"to_original", matrix_to_json(sf.to_original.mat)},
                  {"phi_std", matrix_to_json(sf.phi_std)},
                  {"lambda_plus", scalar_to_json(sf.lambda_plus)},
                  {"lambda_minus", scalar_to_json(sf.lambda_minus)},
                  {"a_block", matrix_to_json(sf.a_block)},
                  {"off_block_residual", sf.off_block_residual}},
             o.out, out);
        return 0;
    }
    if (limit_cmd->parsed()) {
        const Domain domain = domain_from_json(load_json(o.domain));
        std::vector<ProjMap> gens;
        for (const auto& g : load_json(o.generators)) gens.emplace_back(matrix_from_json(g));
        const ProjPoint p = o.point.empty()
                                ? domain.anchor()
                                : canonicalize(coords_from_json(json::parse(o.point), domain.field()));
        const LimitSetSample sample = limit_set_sample(gens, domain, p, o.depth, o.seed, o.words);
        if (o.format == "csv") emit_text(points_csv(sample.points), o.out, out);
        else emit(limit_set_to_json(sample), o.out, out);
        return 0;
    }
    if (dual_cmd->parsed()) {
        const Domain domain = domain_from_json(load_json(o.domain));
        const DualSample dual = dual_sample(domain, o.samples, o.seed);
        json fs = json::array();
        for (const auto& f : dual.functionals) fs.push_back(dual_to_json(f));
        emit(json{{"seed", dual.seed}, {"requested", dual.requested}, {"complete", dual.complete},
                  {"functionals", fs}},
             o.out, out);
        return 0;
    }
    if (mapply->parsed()) {
        const Field f = field_from_code(o.field);
        const MoebiusMap m = MoebiusMap::from_matrix(matrix_from_json(load_json(o.matrix)));
        const ExtendedScalar z = (o.z == "inf") ? ExtendedScalar::infinity(f)
                                                : ExtendedScalar::finite(scalar_from_json(json::parse(o.z), f));
        const ExtendedScalar w = apply(m, z);
        emit(w.infinite ? json{{"infinite", true}} : json{{"infinite", false}, {"z", scalar_to_json(w.z)}},
             o.out, out);
        return 0;
    }
    if (msphere->parsed()) {
        const Field f = field_from_code(o.field);
        const MoebiusMap m = MoebiusMap::from_matrix(matrix_from_json(load_json(o.matrix)));
        const SpherePlane s = sphereplane_from_json(load_json(o.sphere), f);
        const double holdout = o.tolerance > 0 ? o.tolerance : tol::sphere_fit_holdout;
        emit(sphereplane_to_json(map_sphereplane(m, s, o.seed, holdout), f), o.out, out);
        return 0;
    }
    if (mhalf->parsed()) {
        const Field f = field_from_code(o.field);
        const MoebiusMap m = MoebiusMap::from_matrix(matrix_from_json(load_json(o.matrix)));
        const auto rep = halfspace_aut_membership(m, 1000, o.seed);
        emit(json{{"member", rep.member}, {"normal_form", rep.normal_form}}, o.out, out);
        return 0;
    }
    if (verify_cmd->parsed()) {
        if (o.show_config) {
            print_tolerance_config(out);
            return 0;
        }
        return acceptance_exit_code(run_acceptance(out));
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run(args, out, err);
    } catch (const validation_error& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        err << "numerical contract failed: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        err << "bad JSON payload: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace kproj::cli
