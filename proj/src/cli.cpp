#include "wpcn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "wpcn/baselines.hpp"
#include "wpcn/hap.hpp"
#include "wpcn/model.hpp"
#include "wpcn/montecarlo.hpp"
#include "wpcn/planner.hpp"
#include "wpcn/separated.hpp"
#include "wpcn/serialization.hpp"

namespace wpcn::cli {

namespace {

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

std::uint64_t env_default_seed() {
    if (const char* v = std::getenv("WPCN_SEED")) return std::strtoull(v, nullptr, 10);
    return 0;
}

std::optional<std::vector<int>> parse_cluster_order(const std::string& csv) {
    if (csv.empty()) return std::nullopt;
    std::vector<int> order;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ',')) order.push_back(std::stoi(tok));
    return order;
}

struct Emitter {
    std::string prefix;
    std::string command;
    std::uint64_t seed = 0;
    const Scenario* scenario = nullptr;
    std::vector<std::string> written;

    void placement_files(const Placement& placement, bool hap_mode, const SolveReport* report,
                         std::optional<double> cost) {
        const Metrics metrics = evaluate(placement, *scenario);
        write(prefix + ".placement.json", placement_to_json(placement, hap_mode));
        write(prefix + ".metrics.csv",
              metrics_to_csv(metrics, *scenario,
                             report ? std::optional<double>(report->t_star) : std::nullopt, cost));
        if (report && !report->history.empty())
            write(prefix + ".history.csv", history_to_csv(*report));
    }

    void run_record(const Clock& clock, std::optional<double> p_r, std::optional<double> t_star,
                    std::optional<double> cost, std::optional<bool> feasible) {
        RunSummary summary;
        summary.command = command;
        summary.seed = seed;
        summary.wall_ms = clock.ms();
        summary.p_r = p_r;
        summary.t_star = t_star;
        summary.cost = cost;
        summary.feasible = feasible;
        write_file(prefix + ".run.json",
                   run_record_to_json(summary, scenario_digest(*scenario), written));
    }

    void write(const std::string& path, const std::string& content) {
        write_file(path, content);
        written.push_back(path);
    }
};

double separated_cost(const Scenario& s, std::size_t m, std::size_t n) {
    return s.costs.c1 * static_cast<double>(m) + s.costs.c2 * static_cast<double>(n);
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimum-cost placement of energy and information access points in "
                 "wireless powered communication networks"};
    app.require_subcommand(1);

    // Shared option storage; each subcommand binds the flags it uses.
    std::string scenario_path, out_prefix = "run", placement_path, en_file, ap_file;
    std::string mode = "separated", cluster_order_csv;
    std::uint64_t seed = env_default_seed();
    std::size_t k = 60, m = 6, n = 6, m_max = 30, n_max = 30;
    double box = 24.0, gamma = -1.0e-4;
    int l = 10;
    unsigned jobs = 1;
    bool hap_flag = false, ap_first = false;
    long blocks = 1000000;
    double distance_m = 10.0, rx_dbm = -70.0, outage = 0.05, gain_ul = 2.0, freq_ul = 915.0e6;
    long sa_steps = -1;
    double sa_sigma3 = -1.0, sa_temp = 1e-4, sa_cooling = 0.995;
    std::optional<double> gamma_override;

    const auto add_scenario = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
        cmd->add_option("--seed", seed, "RNG seed (default: WPCN_SEED env or 0)");
        cmd->add_option("--out", out_prefix, "output file prefix");
    };

    auto* gen = app.add_subcommand("gen-scenario", "uniform random scenario");
    gen->add_option("--k", k, "device count");
    gen->add_option("--box", box, "square region side, m");
    gen->add_option("--gamma", gamma, "target net rate, W");
    gen->add_option("--seed", seed, "RNG seed");
    std::string gen_out = "scenario.json";
    gen->add_option("--out", gen_out, "output scenario path");

    auto* pen = app.add_subcommand("place-en", "greedy EN placement under fixed APs");
    add_scenario(pen);
    pen->add_option("--m", m, "EN count")->required();
    pen->add_option("--ap-file", ap_file, "placement JSON providing the fixed APs");
    pen->add_option("--n", n, "place N cluster-center APs instead of --ap-file");
    pen->add_option("--cluster-order", cluster_order_csv, "override cluster order, csv");

    auto* pap = app.add_subcommand("place-ap", "trial-and-error AP placement under fixed ENs");
    add_scenario(pap);
    pap->add_option("--n", n, "AP count")->required();
    pap->add_option("--en-file", en_file, "placement JSON providing the fixed ENs");
    pap->add_option("--m", m, "place M cluster-center ENs instead of --en-file");

    auto* pj = app.add_subcommand("place-joint", "alternating joint EN and AP placement");
    add_scenario(pj);
    pj->add_option("--m", m, "EN count")->required();
    pj->add_option("--n", n, "AP count")->required();
    pj->add_option("--l", l, "alternating iteration budget");
    pj->add_flag("--ap-first", ap_first, "run the AP phase first");
    pj->add_option("--cluster-order", cluster_order_csv, "override cluster order, csv");

    auto* ph = app.add_subcommand("place-hap", "greedy HAP placement");
    add_scenario(ph);
    ph->add_option("--m", m, "HAP count")->required();
    ph->add_option("--cluster-order", cluster_order_csv, "override cluster order, csv");

    auto* cc = app.add_subcommand("baseline-cc", "cluster-center placement");
    add_scenario(cc);
    cc->add_option("--m", m, "EN (or HAP) count")->required();
    cc->add_option("--n", n, "AP count");
    cc->add_flag("--hap", hap_flag, "place HAPs instead of separate ENs and APs");

    auto* ls = app.add_subcommand("baseline-ls", "simulated-annealing local search from CC");
    add_scenario(ls);
    ls->add_option("--m", m, "EN (or HAP) count")->required();
    ls->add_option("--n", n, "AP count");
    ls->add_flag("--hap", hap_flag, "search HAP placements");
    ls->add_option("--steps", sa_steps, "annealing steps (default 5000*(M+N))");
    ls->add_option("--sigma3", sa_sigma3, "move budget, m^2 (default (0.02 diag)^2 (M+N))");
    ls->add_option("--temp", sa_temp, "initial temperature, W");
    ls->add_option("--cooling", sa_cooling, "geometric cooling factor");

    auto* mc = app.add_subcommand("min-cost", "cheapest feasible deployment search");
    add_scenario(mc);
    mc->add_option("--mode", mode, "separated | hap")
        ->check(CLI::IsMember({"separated", "hap"}));
    mc->add_option("--m-max", m_max, "EN/HAP count cap");
    mc->add_option("--n-max", n_max, "AP count cap");
    mc->add_option("--l", l, "alternating budget per candidate");
    mc->add_option("--jobs", jobs, "worker pool size for candidate evaluation");
    mc->add_option("--gamma", gamma_override, "override the scenario target, W");

    auto* val = app.add_subcommand("validate", "Monte Carlo validation of the models");
    add_scenario(val);
    val->add_option("--placement", placement_path, "placement JSON to validate");
    val->add_option("--m", m, "CC ENs when no placement file is given");
    val->add_option("--n", n, "CC APs when no placement file is given");
    val->add_flag("--hap", hap_flag, "CC HAP placement");
    val->add_option("--blocks", blocks, "fading blocks");
    val->add_option("--distance", distance_m, "uplink validation distance, m");
    val->add_option("--rx-dbm", rx_dbm, "uplink receive power target, dBm");
    val->add_option("--outage", outage, "uplink outage probability");
    val->add_option("--gain-ul", gain_ul, "uplink antenna gain, linear");
    val->add_option("--freq-ul", freq_ul, "uplink carrier frequency, Hz");

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes reversed vectors
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const std::string command_line = [&] {
        std::string s = app.get_subcommands().front()->get_name();
        std::reverse(args.begin(), args.end());
        for (const auto& a : args) s += " " + a;
        return s;
    }();

    try {
        Clock clock;

        if (gen->parsed()) {
            const Scenario s = uniform_scenario(k, box, seed);
            Scenario with_gamma = s;
            with_gamma.gamma = gamma;
            save_scenario(with_gamma, gen_out);
            out << "wrote " << gen_out << " (K=" << k << ", box=" << box << " m, seed=" << seed
                << ")\n";
            return 0;
        }

        Scenario scenario = load_scenario(scenario_path);
        if (gamma_override) scenario.gamma = *gamma_override;
        Emitter emit{out_prefix, command_line, seed, &scenario, {}};
        const auto order = parse_cluster_order(cluster_order_csv);

        if (pen->parsed()) {
            std::vector<Point2> aps;
            if (!ap_file.empty())
                aps = load_placement(ap_file).ap_locations;
            else if (pen->count("--n"))
                aps = cluster_center_placement(scenario, n, n, seed).ap_locations;
            else
                throw ParseError("place-en: provide --ap-file or --n");
            auto [ens, report] = greedy_en_placement(scenario, aps, m, seed, order);
            const Placement placement = make_placement(ens, aps, scenario);
            emit.placement_files(placement, false, &report,
                                 separated_cost(scenario, ens.size(), aps.size()));
            emit.run_record(clock, report.t_star, report.t_star,
                            separated_cost(scenario, ens.size(), aps.size()), std::nullopt);
            out << "P_r = " << format_double(report.t_star) << " W\n";
            return 0;
        }

        if (pap->parsed()) {
            std::vector<Point2> ens;
            if (!en_file.empty())
                ens = load_placement(en_file).en_locations;
            else if (pap->count("--m"))
                ens = cluster_center_placement(scenario, m, std::nullopt, seed).en_locations;
            else
                throw ParseError("place-ap: provide --en-file or --m");
            auto [placement, report] = trial_and_error_ap(scenario, ens, n, seed);
            emit.placement_files(placement, false, &report,
                                 separated_cost(scenario, ens.size(), n));
            emit.run_record(clock, report.t_star, report.t_star,
                            separated_cost(scenario, ens.size(), n), std::nullopt);
            out << "P_r = " << format_double(report.t_star) << " W after "
                << report.association_rounds << " association rounds\n";
            return 0;
        }

        if (pj->parsed()) {
            AltOptions options;
            options.ap_phase_first = ap_first;
            options.cluster_order = order;
            auto [placement, report] = alternating_joint(scenario, m, n, l, seed, options);
            emit.placement_files(placement, false, &report, separated_cost(scenario, m, n));
            emit.run_record(clock, report.t_star, report.t_star, separated_cost(scenario, m, n),
                            std::nullopt);
            out << "P_r = " << format_double(report.t_star) << " W (best of " << l
                << " iterations)\n";
            return 0;
        }

        if (ph->parsed()) {
            auto [haps, report] = greedy_hap_placement(scenario, m, seed, order);
            const Placement placement = make_placement(haps, haps, scenario);
            emit.placement_files(placement, true, &report,
                                 scenario.costs.c3 * static_cast<double>(m));
            emit.run_record(clock, report.t_star, report.t_star,
                            scenario.costs.c3 * static_cast<double>(m), std::nullopt);
            out << "P_r = " << format_double(report.t_star) << " W\n";
            return 0;
        }

        if (cc->parsed()) {
            const bool hap_mode = hap_flag;
            const Placement placement = cluster_center_placement(
                scenario, m, hap_mode ? std::nullopt : std::optional<std::size_t>(n), seed);
            const double cost = hap_mode ? scenario.costs.c3 * static_cast<double>(m)
                                         : separated_cost(scenario, m, n);
            const double p_r = evaluate(placement, scenario).p_r;
            emit.placement_files(placement, hap_mode, nullptr, cost);
            emit.run_record(clock, p_r, p_r, cost, std::nullopt);
            out << "P_r = " << format_double(p_r) << " W\n";
            return 0;
        }

        if (ls->parsed()) {
            const bool hap_mode = hap_flag;
            const Placement init = cluster_center_placement(
                scenario, m, hap_mode ? std::nullopt : std::optional<std::size_t>(n), seed);
            SaConfig cfg = sa_default_config(scenario, m, hap_mode ? 0 : n, seed);
            if (sa_steps >= 0) cfg.steps = sa_steps;
            if (sa_sigma3 > 0.0) cfg.sigma3 = sa_sigma3;
            cfg.initial_temp = sa_temp;
            cfg.cooling = sa_cooling;
            cfg.hap_mode = hap_mode;
            auto [placement, p_r] = simulated_annealing(scenario, init, cfg);
            const double cost = hap_mode ? scenario.costs.c3 * static_cast<double>(m)
                                         : separated_cost(scenario, m, n);
            emit.placement_files(placement, hap_mode, nullptr, cost);
            emit.run_record(clock, p_r, p_r, cost, std::nullopt);
            out << "P_r = " << format_double(p_r) << " W\n";
            return 0;
        }

        if (mc->parsed()) {
            const MinCostResult result =
                mode == "hap" ? min_cost_hap(scenario, m_max, seed, jobs)
                              : min_cost_separated(scenario, m_max, n_max, l, seed, jobs);
            const DeploymentPlan* plan =
                result.plan ? &*result.plan
                            : (result.best_infeasible ? &*result.best_infeasible : nullptr);
            if (plan) {
                SolveReport trace;
                for (const CandidateEval& c : result.evaluated)
                    trace.history.push_back({static_cast<int>(trace.history.size()) + 1,
                                             c.feasible ? 'F' : 'I', c.t_star});
                trace.t_star = plan->t_star;
                emit.placement_files(plan->placement, plan->mode == DeploymentMode::hap, &trace,
                                     plan->cost);
            }
            emit.run_record(clock,
                            plan ? std::optional<double>(plan->t_star) : std::nullopt,
                            plan ? std::optional<double>(plan->t_star) : std::nullopt,
                            plan ? std::optional<double>(plan->cost) : std::nullopt,
                            result.plan.has_value());
            if (!result.plan) {
                err << "no feasible deployment within caps (gamma = "
                    << format_double(scenario.gamma) << " W); best infeasible plan written\n";
                return 3;
            }
            out << "cost = " << format_double(result.plan->cost) << " (M=" << result.plan->m;
            if (result.plan->mode == DeploymentMode::separated)
                out << ", N=" << result.plan->n;
            out << "), t* = " << format_double(result.plan->t_star) << " W\n";
            return 0;
        }

        if (val->parsed()) {
            Placement placement;
            if (!placement_path.empty()) {
                placement = load_placement(placement_path);
                placement = make_placement(placement.en_locations, placement.ap_locations,
                                           scenario);
            } else {
                placement = cluster_center_placement(
                    scenario, m, hap_flag ? std::nullopt : std::optional<std::size_t>(n), seed);
            }
            const Metrics metrics = evaluate(placement, scenario);
            const HarvestSimResult sim = simulate_harvest(placement, scenario, blocks, seed);

            std::ostringstream csv;
            csv << "device,x_m,y_m,analytic_lambda_w,empirical_lambda_w,std_err_w,z_score\n";
            bool all_within = true;
            for (std::size_t i = 0; i < metrics.lambda.size(); ++i) {
                const double z = sim.std_err[i] > 0.0
                                     ? (sim.mean[i] - metrics.lambda[i]) / sim.std_err[i]
                                     : 0.0;
                all_within &= std::abs(z) <= 3.0;
                const Point2 w = scenario.devices[i].location;
                csv << i << ',' << format_double(w.x) << ',' << format_double(w.y) << ','
                    << format_double(metrics.lambda[i]) << ',' << format_double(sim.mean[i])
                    << ',' << format_double(sim.std_err[i]) << ',' << format_double(z) << '\n';
            }
            emit.write(out_prefix + ".validate.csv", csv.str());

            UplinkPolicy policy{std::pow(10.0, (rx_dbm - 30.0) / 10.0), outage, gain_ul, freq_ul,
                                scenario.channel.ul_exponent};
            const UplinkSimResult ul = simulate_uplink_power(distance_m, policy, blocks, seed);
            const double analytic =
                derive_a2(policy.rx_power, policy.outage, policy.antenna_gain_ul,
                          policy.carrier_freq_ul, policy.ul_exponent) *
                std::pow(distance_m, policy.ul_exponent);
            std::ostringstream ul_csv;
            ul_csv << "distance_m,analytic_power_w,empirical_power_w,rel_err,"
                      "outage_target,outage_empirical\n";
            ul_csv << format_double(distance_m) << ',' << format_double(analytic) << ','
                   << format_double(ul.mean_power) << ','
                   << format_double(std::abs(ul.mean_power - analytic) / analytic) << ','
                   << format_double(outage) << ',' << format_double(ul.outage_fraction) << '\n';
            emit.write(out_prefix + ".uplink.csv", ul_csv.str());
            emit.run_record(clock, std::nullopt, std::nullopt, std::nullopt, std::nullopt);

            out << (all_within ? "all devices within 3 sigma\n"
                               : "3 sigma violation, see " + out_prefix + ".validate.csv\n");
            return all_within ? 0 : 1;
        }

        err << "error: unknown subcommand\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const AssociationCyclingError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace wpcn::cli
