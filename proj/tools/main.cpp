#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "resolvent_lab/errors.hpp"
#include "resolvent_lab/geometry.hpp"
#include "resolvent_lab/grid.hpp"
#include "resolvent_lab/json_io.hpp"
#include "resolvent_lab/resolvent.hpp"
#include "resolvent_lab/semigroup.hpp"
#include "resolvent_lab/verify.hpp"

namespace rl = resolvent_lab;
using nlohmann::ordered_json;

namespace {

rl::Complex parse_pair(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw CLI::ValidationError("expected \"re\" or \"re,im\", got \"" + text + "\"");
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw CLI::ValidationError("expected \"re,im\", got \"" + text + "\"");
    }
    std::string rest;
    if (in >> rest) throw CLI::ValidationError("trailing characters in \"" + text + "\"");
    return {re, im};
}

rl::Grid parse_grid(const std::string& text) {
    const auto sep = text.find('x');
    if (sep == std::string::npos)
        throw CLI::ValidationError("expected \"NRxNA\", got \"" + text + "\"");
    try {
        rl::Grid grid;
        grid.radius_count = std::stoi(text.substr(0, sep));
        grid.angle_count = std::stoi(text.substr(sep + 1));
        if (grid.radius_count < 1 || grid.angle_count < 1)
            throw CLI::ValidationError("grid sizes must be positive");
        return grid;
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("expected \"NRxNA\", got \"" + text + "\"");
    } catch (const std::out_of_range&) {
        throw CLI::ValidationError("grid size out of range in \"" + text + "\"");
    }
}

std::vector<double> parse_sweep(const std::string& text) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0))
        throw CLI::ValidationError("expected \"lo:hi:step\" with step > 0, got \"" + text + "\"");
    std::vector<double> out;
    for (double v = lo; v <= hi + 1e-12 * step; v += step) out.push_back(v);
    if (out.empty()) throw CLI::ValidationError("empty sweep \"" + text + "\"");
    return out;
}

rl::Generator load_generator(const std::string& inline_json, const std::string& path) {
    if (!inline_json.empty() && !path.empty())
        throw CLI::ValidationError("--gen and --gen-file are mutually exclusive");
    if (!inline_json.empty()) return rl::parse_generator(inline_json);
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw rl::Error("cannot open generator file " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        return rl::parse_generator(buf.str());
    }
    throw CLI::ValidationError("a generator is required: pass --gen or --gen-file");
}

ordered_json complex_json(rl::Complex z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw rl::Error("cannot open output file " + path);
    return file;
}

struct EvalOptions {
    std::string gen, gen_file, z_text, r_sweep, format = "json", out;
    double r = 0.0;
    double tol = 1e-12;
};

int run_eval(const EvalOptions& opt) {
    const rl::Generator gen = load_generator(opt.gen, opt.gen_file);
    const rl::Complex z = parse_pair(opt.z_text);
    std::vector<double> rs;
    if (!opt.r_sweep.empty())
        rs = parse_sweep(opt.r_sweep);
    else if (opt.r > 0.0)
        rs.push_back(opt.r);
    else
        throw CLI::ValidationError("pass --r R or --r-sweep lo:hi:step");
    std::ofstream file;
    std::ostream& out = open_out(file, opt.out);
    if (opt.format == "csv")
        out << "r,re_z,im_z,re_w,im_w,re_deriv,im_deriv,residual,iterations\n";
    for (const double r : rs) {
        const rl::ResolventValue rv = rl::solve_resolvent(gen, r, z, opt.tol);
        if (opt.format == "csv") {
            out << rl::format_double(r) << "," << rl::format_double(z.real()) << ","
                << rl::format_double(z.imag()) << "," << rl::format_double(rv.w.real()) << ","
                << rl::format_double(rv.w.imag()) << "," << rl::format_double(rv.deriv.real())
                << "," << rl::format_double(rv.deriv.imag()) << ","
                << rl::format_double(rv.residual) << "," << rv.iterations << "\n";
        } else {
            ordered_json j;
            j["r"] = r;
            j["z"] = complex_json(z);
            j["w"] = complex_json(rv.w);
            j["deriv"] = complex_json(rv.deriv);
            j["residual"] = rv.residual;
            j["iterations"] = rv.iterations;
            out << j.dump() << "\n";
        }
    }
    return 0;
}

struct RadiiOptions {
    std::string q_text = "1", r_sweep, format = "json", out;
    double r = 0.0;
};

int run_radii(const RadiiOptions& opt) {
    const rl::Complex q = parse_pair(opt.q_text);
    std::vector<double> rs;
    if (!opt.r_sweep.empty())
        rs = parse_sweep(opt.r_sweep);
    else if (opt.r > 0.0)
        rs.push_back(opt.r);
    else
        throw CLI::ValidationError("pass --r R or --r-sweep lo:hi:step");
    std::ofstream file;
    std::ostream& out = open_out(file, opt.out);
    if (opt.format == "csv") out << "r,x,rho,rho1,rho2,rho3,rho4,extended\n";
    for (const double r : rs) {
        const rl::ResolventRadii rad = rl::resolvent_radii(r, q);
        if (opt.format == "csv") {
            out << rl::format_double(r) << "," << rl::format_double(rad.x) << ",";
            if (rad.extended)
                out << rl::format_double(rad.rho) << "," << rl::format_double(rad.rho1) << ","
                    << rl::format_double(rad.rho2) << "," << rl::format_double(rad.rho3) << ",";
            else
                out << ",,,,";
            out << rl::format_double(rad.rho4) << "," << (rad.extended ? "true" : "false")
                << "\n";
        } else {
            ordered_json j;
            j["r"] = r;
            j["x"] = rad.x;
            if (rad.extended) {
                j["rho"] = rad.rho;
                j["rho1"] = rad.rho1;
                j["rho2"] = rad.rho2;
                j["rho3"] = rad.rho3;
            }
            j["rho4"] = rad.rho4;
            j["extended"] = rad.extended;
            out << j.dump() << "\n";
        }
    }
    return 0;
}

struct OrdersOptions {
    std::string gen, gen_file, grid_text = "64x256", out;
    double x = 0.0;
    double r = 0.0;
    double theta = 0.0;
    double tol = 1e-12;
    bool estimate = false;
};

int run_orders(const OrdersOptions& opt) {
    std::ofstream file;
    std::ostream& out = open_out(file, opt.out);
    if (opt.estimate) {
        const rl::Generator gen = load_generator(opt.gen, opt.gen_file);
        if (!(opt.r > 0.0)) throw CLI::ValidationError("--estimate needs --r R");
        const rl::Grid grid = parse_grid(opt.grid_text);
        const rl::OrderEstimate est =
            rl::estimate_orders(rl::resolvent_evaluator(gen, opt.r, opt.tol), grid, opt.theta);
        ordered_json j;
        j["r"] = opt.r;
        j["theta"] = est.theta;
        j["grid"] = std::to_string(grid.radius_count) + "x" + std::to_string(grid.angle_count);
        j["starlike_order"] = est.starlike_order;
        j["strong_order"] = est.strong_order;
        j["spirallike_order"] = est.spirallike_order;
        out << j.dump() << "\n";
        return 0;
    }
    if (!(opt.x > 0.0)) throw CLI::ValidationError("pass --x X for bounds or --estimate");
    const rl::TheoreticalOrders th = rl::theoretical_orders(opt.x, opt.theta);
    ordered_json j;
    j["x"] = opt.x;
    j["amplitude"] = th.amplitude;
    j["starlike_order"] = th.starlike_order;
    j["strong_order"] = th.strong_order;
    j["squeeze_exponent"] = th.squeeze_exponent;
    j["quasiconformal_constant"] = th.quasiconformal_constant;
    if (th.spirallike_order) {
        j["theta"] = opt.theta;
        j["spirallike_order"] = *th.spirallike_order;
    }
    out << j.dump() << "\n";
    return 0;
}

struct VerifyOptions {
    std::vector<std::string> checks;
    std::vector<std::int64_t> seeds;
    std::vector<double> xs;
    std::vector<double> xs_containment;
    std::string grid_text, format = "json", out, summary;
    double tol = 1e-12;
    int threads = 0;
};

int run_verify(const VerifyOptions& opt) {
    rl::SuiteConfig config;
    if (!opt.checks.empty()) {
        const auto& known = rl::known_checks();
        for (const std::string& id : opt.checks)
            if (std::find(known.begin(), known.end(), id) == known.end())
                throw CLI::ValidationError("unknown check id \"" + id + "\"");
        config.checks = opt.checks;
    }
    if (!opt.seeds.empty()) config.seeds = opt.seeds;
    if (!opt.xs.empty()) config.xs = opt.xs;
    if (!opt.xs_containment.empty()) config.xs_containment = opt.xs_containment;
    if (!opt.grid_text.empty()) {
        const rl::Grid grid = parse_grid(opt.grid_text);
        config.grid_radii = grid.radius_count;
        config.grid_angles = grid.angle_count;
    }
    config.tol = opt.tol;
    config.threads = opt.threads;

    const std::vector<rl::VerificationReport> reports = rl::run_suite(config);

    std::ofstream file;
    std::ostream& out = open_out(file, opt.out);
    if (opt.format == "csv")
        rl::write_csv_summary(out, reports);
    else
        rl::write_json_lines(out, reports);
    if (!opt.summary.empty()) {
        std::ofstream s(opt.summary);
        if (!s) throw rl::Error("cannot open summary file " + opt.summary);
        rl::write_csv_summary(s, reports);
    }
    std::size_t failed = 0;
    for (const auto& rep : reports)
        if (!rep.pass) ++failed;
    std::cerr << reports.size() << " reports, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}

struct TrajectoryOptions {
    std::string gen, gen_file, z_text, t_text = "1", out;
    int samples = 200;
    double resolvent_r = 0.0;
    double tol = 1e-12;
};

int run_trajectory(const TrajectoryOptions& opt) {
    const rl::Generator gen = load_generator(opt.gen, opt.gen_file);
    const rl::Complex z = parse_pair(opt.z_text);
    const rl::Complex t = parse_pair(opt.t_text);
    rl::VectorField field;
    if (opt.resolvent_r > 0.0) {
        const double r = opt.resolvent_r;
        const double tol = opt.tol;
        field = [gen, r, tol](rl::Complex u) { return rl::solve_resolvent(gen, r, u, tol).w; };
    } else {
        field = [gen](rl::Complex u) { return gen.f(u).value; };
    }
    const rl::Trajectory traj = rl::sample_trajectory(field, t, z, opt.samples);
    std::ofstream file;
    std::ostream& out = open_out(file, opt.out);
    out << "s,re_u,im_u,abs_u\n";
    for (const auto& [s, u] : traj.samples)
        out << rl::format_double(s) << "," << rl::format_double(u.real()) << ","
            << rl::format_double(u.imag()) << "," << rl::format_double(std::abs(u)) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlinear resolvents of holomorphic generators on the unit disk"};
    app.require_subcommand(1);

    EvalOptions eval_opt;
    CLI::App* eval = app.add_subcommand("eval", "solve G_r + r f(G_r) = z at a point");
    eval->add_option("--gen", eval_opt.gen, "generator JSON");
    eval->add_option("--gen-file", eval_opt.gen_file, "path to generator JSON");
    eval->add_option("--r", eval_opt.r, "resolvent parameter");
    eval->add_option("--r-sweep", eval_opt.r_sweep, "sweep lo:hi:step over r");
    eval->add_option("--z", eval_opt.z_text, "evaluation point \"re,im\"")->required();
    eval->add_option("--tol", eval_opt.tol, "residual tolerance");
    eval->add_option("--format", eval_opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    eval->add_option("--out", eval_opt.out, "output file (default stdout)");

    RadiiOptions radii_opt;
    CLI::App* radii = app.add_subcommand("radii", "domain, distortion and covering radii");
    radii->add_option("--q", radii_opt.q_text, "p(0) as \"re,im\" (default 1)");
    radii->add_option("--r", radii_opt.r, "resolvent parameter");
    radii->add_option("--r-sweep", radii_opt.r_sweep, "sweep lo:hi:step over r");
    radii->add_option("--format", radii_opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    radii->add_option("--out", radii_opt.out, "output file (default stdout)");

    OrdersOptions orders_opt;
    CLI::App* orders = app.add_subcommand("orders", "starlikeness orders: bounds or grid estimates");
    orders->add_option("--x", orders_opt.x, "product r Re q for the closed-form bounds");
    orders->add_flag("--estimate", orders_opt.estimate, "estimate from a resolvent grid instead");
    orders->add_option("--gen", orders_opt.gen, "generator JSON (with --estimate)");
    orders->add_option("--gen-file", orders_opt.gen_file, "generator JSON file (with --estimate)");
    orders->add_option("--r", orders_opt.r, "resolvent parameter (with --estimate)");
    orders->add_option("--theta", orders_opt.theta, "spiral angle");
    orders->add_option("--grid", orders_opt.grid_text, "grid NRxNA (with --estimate)");
    orders->add_option("--tol", orders_opt.tol, "residual tolerance");
    orders->add_option("--out", orders_opt.out, "output file (default stdout)");

    VerifyOptions verify_opt;
    CLI::App* verify = app.add_subcommand("verify", "run the certification suite");
    verify->add_option("--checks", verify_opt.checks, "check ids (default: all)")->delimiter(',');
    verify->add_option("--seeds", verify_opt.seeds, "generator seeds")->delimiter(',');
    verify->add_option("--xs", verify_opt.xs, "x sweep for distortion/covering")->delimiter(',');
    verify->add_option("--xs-containment", verify_opt.xs_containment, "x sweep for containment")
        ->delimiter(',');
    verify->add_option("--grid", verify_opt.grid_text, "grid NRxNA");
    verify->add_option("--tol", verify_opt.tol, "residual tolerance");
    verify->add_option("--threads", verify_opt.threads, "worker threads (0: env or hardware)");
    verify->add_option("--format", verify_opt.format, "json (jsonl lines) or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--out", verify_opt.out, "report file (default stdout)");
    verify->add_option("--summary", verify_opt.summary, "also write a csv summary here");

    TrajectoryOptions traj_opt;
    CLI::App* traj = app.add_subcommand("trajectory", "integrate du/ds = -e^{i arg t} g(u)");
    traj->add_option("--gen", traj_opt.gen, "generator JSON");
    traj->add_option("--gen-file", traj_opt.gen_file, "path to generator JSON");
    traj->add_option("--z", traj_opt.z_text, "start point \"re,im\"")->required();
    traj->add_option("--t", traj_opt.t_text, "complex time \"re,im\"");
    traj->add_option("--samples", traj_opt.samples, "number of samples after the start");
    traj->add_option("--resolvent-r", traj_opt.resolvent_r,
                     "flow the resolvent G_r instead of the generator itself");
    traj->add_option("--tol", traj_opt.tol, "residual tolerance for the resolvent field");
    traj->add_option("--out", traj_opt.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (eval->parsed()) return run_eval(eval_opt);
        if (radii->parsed()) return run_radii(radii_opt);
        if (orders->parsed()) return run_orders(orders_opt);
        if (verify->parsed()) return run_verify(verify_opt);
        if (traj->parsed()) return run_trajectory(traj_opt);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const rl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
