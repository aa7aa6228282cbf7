// cglab: command-line front end.
//
//   cglab <command> [-c config] [--set key=value ...] [command options]
//
// Commands write their file into output.dir and a short summary to stdout.
// Exit codes: 0 success, 2 invalid input or parameter window, 3 numerical failure,
// 4 a verification identity failed, 1 anything else.
#include "cgl/config.hpp"
#include "cgl/output.hpp"
#include "cgl/params.hpp"
#include "cgl/profilefield.hpp"
#include "cgl/reduction.hpp"
#include "cgl/shoot.hpp"
#include "cgl/verify.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace cgl;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kOther = 1, kDomain = 2, kNumerical = 3, kVerify = 4 };

struct Common {
    std::string config_path;
    std::vector<std::string> sets;
};

RunConfig resolve(const Common& c) {
    RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
    for (const std::string& kv : c.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name, std::string& path) {
    fs::create_directories(cfg.output_dir);
    path = (fs::path(cfg.output_dir) / name).string();
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    return os;
}

int cmd_constants(const RunConfig& cfg) {
    b_critical(cfg.sim.p, cfg.sim.delta);  // names the violated window condition
    const ConstantsBundle K = compute_constants(cfg.sim.p, cfg.sim.delta);
    nlohmann::json j = constants_json(K);
    j["meta"] = meta_json("constants", cfg);
    std::string path;
    open_out(cfg, "constants.json", path) << j.dump(2) << "\n";
    std::cout << "b^2 = " << K.P.b2.str() << "\nmu = " << to_text(K.P.mu) << "\nHtilde1 = " << to_text(K.ode.Htilde1)
              << "\nwrote " << path << "\n";
    return kOk;
}

int cmd_verify(const RunConfig& cfg) {
    b_critical(cfg.sim.p, cfg.sim.delta);
    const VerifyReport r = verify_all(cfg.sim.p, cfg.sim.delta);
    for (const Check& c : r.checks) {
        std::cout << status_word(c) << "  " << c.name;
        if (!c.ok && !c.detail.empty()) std::cout << "  [" << c.detail << "]";
        std::cout << "\n";
    }
    std::cout << r.count(CheckKind::identity, true) << " identities pass, " << r.count(CheckKind::identity, false)
              << " fail; " << r.count(CheckKind::transcription, true) << " transcriptions match, "
              << r.count(CheckKind::transcription, false) << " mismatch\n";
    nlohmann::json j = verify_json(r);
    j["meta"] = meta_json("verify", cfg);
    std::string path;
    open_out(cfg, "verify.json", path) << j.dump(2) << "\n";
    return r.identities_pass() ? kOk : kVerify;
}

int cmd_basis(const RunConfig& cfg, int M) {
    const ProfileParams P = derive_params(cfg.sim.p, cfg.sim.delta);
    const BasisTable B = build_basis(M, P.p, P.delta, P.beta);
    nlohmann::json j = basis_json(B);
    j["meta"] = meta_json("basis", cfg);
    std::string path;
    open_out(cfg, "basis.json", path) << j.dump(2) << "\n";
    for (int n = 0; n <= std::min(M, 4); ++n)
        std::cout << "h" << n << " = " << to_text(B.h[n]) << "ht" << n << " = " << to_text(B.ht[n]);
    std::cout << "wrote " << path << "\n";
    return kOk;
}

int cmd_profile(const RunConfig& cfg, double s, int points) {
    const ConstantsBundle K = compute_constants(cfg.sim.p, cfg.sim.delta);
    const FloatParams P = FloatParams::from(K.P);
    std::string path;
    std::ofstream os = open_out(cfg, "profile.csv", path);
    write_header(os, "profile", cfg);
    os << "# s = " << s << "\n";
    write_profile_csv(os, P, s, cfg.sim.L, points);
    std::cout << "kappa = " << P.kappa << ", b = " << P.b << ", nu = " << P.nu << ", mu = " << P.mu << "\nwrote " << path
              << "\n";
    return kOk;
}

int cmd_simulate(const RunConfig& cfg, double d0, double d1, int every, bool stop) {
    const Simulator sim(cfg.sim);
    InitialDataSpec spec;
    spec.d0_tilde = d0;
    spec.d1_tilde = d1;
    RunOptions opt;
    opt.record_every = every;
    opt.stop_on_exit = stop;
    const RunResult r = run(sim, spec, opt);
    std::string path;
    std::ofstream os = open_out(cfg, "history.csv", path);
    write_header(os, "simulate", cfg, sim.K());
    os << "# d0_tilde = " << d0 << "\n# d1_tilde = " << d1 << "\n";
    write_history_csv(os, r.history, cfg.sim.M_track);
    if (r.exited)
        std::cout << "left the shrinking set at s = " << r.exit_s << " through " << r.exit_component << "\n";
    else
        std::cout << "stayed inside the shrinking set up to s = " << r.last.s << "\n";
    std::cout << "exit map (" << r.phi.phi0 << ", " << r.phi.phi1 << ")";
    if (r.modulation_flag) std::cout << "; modulation Newton failed at some step";
    std::cout << "\nwrote " << path << "\n";
    return kOk;
}

int cmd_shoot(const RunConfig& cfg) {
    const Simulator sim(cfg.sim);
    const ShootResult r = shoot(sim, cfg.shoot);
    nlohmann::json j = shoot_json(r);
    j["meta"] = meta_json("shoot", cfg, sim.K());
    std::string path;
    open_out(cfg, "shoot.json", path) << j.dump(2) << "\n";
    std::cout << "best (d0, d1) = (" << r.d0 << ", " << r.d1 << "), exit s = " << r.exit_s
              << (r.trapped ? " (stayed inside)" : "") << "\ncorner quadrants cover all four: "
              << (r.corners_cover_quadrants ? "yes" : "no") << ", latest corner exit s = " << r.corner_max_exit_s
              << "\n" << r.probes.size() << " probes; wrote " << path << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical blow-up laboratory for the complex Ginzburg-Landau equation"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("-c,--config", common.config_path, "key = value configuration file");
    app.add_option("--set", common.sets, "override one key, e.g. --set delta=1/2");

    auto* constants = app.add_subcommand("constants", "exact parameters, tables and combinations as JSON");
    auto* verify = app.add_subcommand("verify", "exact identity and transcription report");
    auto* basis = app.add_subcommand("basis", "dump the polynomial basis h_n, ht_n");
    int M = 6;
    basis->add_option("-M", M, "highest index")->check(CLI::Range(0, 40));
    auto* profile = app.add_subcommand("profile", "profile, rest term and potentials on a grid");
    double s_prof = 100;
    int points = 401;
    profile->add_option("--s", s_prof, "time")->check(CLI::PositiveNumber);
    profile->add_option("--points", points, "number of grid points")->check(CLI::Range(2, 10000000));
    auto* simulate = app.add_subcommand("simulate", "one run from the initial data");
    double d0 = 0, d1 = 0;
    int every = 10;
    bool keep_going = false;
    simulate->add_option("--d0", d0, "d0_tilde");
    simulate->add_option("--d1", d1, "d1_tilde");
    simulate->add_option("--every", every, "record every k-th step (0: first and last)")->check(CLI::NonNegativeNumber);
    simulate->add_flag("--no-stop", keep_going, "keep integrating after leaving the shrinking set");
    auto* shoot_cmd = app.add_subcommand("shoot", "two-parameter shooting search");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = resolve(common);
        if (*constants) return cmd_constants(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*basis) return cmd_basis(cfg, M);
        if (*profile) return cmd_profile(cfg, s_prof, points);
        if (*simulate) return cmd_simulate(cfg, d0, d1, every, !keep_going);
        if (*shoot_cmd) return cmd_shoot(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kDomain;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const GridTooNarrow& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
    return kOther;
}
