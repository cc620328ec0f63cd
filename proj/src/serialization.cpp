#include "wpcn/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wpcn {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

double get_number(const ordered_json& obj, const std::string& field, const std::string& where) {
    if (!obj.contains(field)) fail(where, "missing field '" + field + "'");
    const auto& v = obj.at(field);
    if (!v.is_number()) fail(where, "field '" + field + "' must be a number");
    return v.get<double>();
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

Point2 point_from_json(const ordered_json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(where, "expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

std::string scenario_to_json(const Scenario& scenario) {
    ordered_json j;
    j["devices"] = ordered_json::array();
    for (const Device& d : scenario.devices) {
        ordered_json dj;
        dj["x"] = d.location.x;
        dj["y"] = d.location.y;
        dj["a1_w"] = d.circuit_power;
        dj["a2"] = d.tx_coeff;
        j["devices"].push_back(dj);
    }
    ordered_json cj;
    cj["p0_w"] = scenario.channel.p0;
    cj["eta"] = scenario.channel.eta;
    cj["gain_dl_linear"] = scenario.channel.antenna_gain_dl;
    cj["freq_hz"] = scenario.channel.carrier_freq_dl;
    cj["d_dl"] = scenario.channel.dl_exponent;
    cj["d_ul"] = scenario.channel.ul_exponent;
    cj["min_distance_m"] = scenario.channel.min_distance;
    j["channel"] = cj;
    j["region"] = {{"lo", {scenario.region.lo.x, scenario.region.lo.y}},
                   {"hi", {scenario.region.hi.x, scenario.region.hi.y}}};
    j["gamma_w"] = scenario.gamma;
    j["costs"] = {{"c1", scenario.costs.c1}, {"c2", scenario.costs.c2},
                  {"c3", scenario.costs.c3}};
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }

    Scenario s;
    if (!j.contains("devices") || !j.at("devices").is_array() || j.at("devices").empty())
        fail("scenario", "'devices' must be a non-empty array");
    std::size_t idx = 0;
    for (const auto& dj : j.at("devices")) {
        const std::string where = "devices[" + std::to_string(idx) + "]";
        Device d;
        d.location = {get_number(dj, "x", where), get_number(dj, "y", where)};
        d.circuit_power = get_number(dj, "a1_w", where);
        d.tx_coeff = get_number(dj, "a2", where);
        s.devices.push_back(d);
        ++idx;
    }

    if (!j.contains("channel")) fail("scenario", "missing 'channel'");
    const auto& cj = j.at("channel");
    double p0 = 0.0;
    if (cj.contains("p0_w"))
        p0 = get_number(cj, "p0_w", "channel");
    else if (cj.contains("p0_dbm"))
        p0 = dbm_to_watts(get_number(cj, "p0_dbm", "channel"));
    else
        fail("channel", "missing 'p0_w' (or 'p0_dbm')");
    double gain = 0.0;
    if (cj.contains("gain_dl_linear"))
        gain = get_number(cj, "gain_dl_linear", "channel");
    else if (cj.contains("gain_dl_db"))
        gain = db_to_linear(get_number(cj, "gain_dl_db", "channel"));
    else
        fail("channel", "missing 'gain_dl_linear' (or 'gain_dl_db')");
    const double min_distance =
        cj.contains("min_distance_m") ? get_number(cj, "min_distance_m", "channel") : 0.5;
    try {
        s.channel = make_channel_params(p0, get_number(cj, "eta", "channel"), gain,
                                        get_number(cj, "freq_hz", "channel"),
                                        get_number(cj, "d_dl", "channel"),
                                        get_number(cj, "d_ul", "channel"), min_distance);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }

    if (!j.contains("region")) fail("scenario", "missing 'region'");
    s.region.lo = point_from_json(j.at("region").value("lo", ordered_json()), "region.lo");
    s.region.hi = point_from_json(j.at("region").value("hi", ordered_json()), "region.hi");
    s.gamma = get_number(j, "gamma_w", "scenario");
    if (!j.contains("costs")) fail("scenario", "missing 'costs'");
    s.costs.c1 = get_number(j.at("costs"), "c1", "costs");
    s.costs.c2 = get_number(j.at("costs"), "c2", "costs");
    s.costs.c3 = get_number(j.at("costs"), "c3", "costs");

    try {
        validate_scenario(s);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return s;
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_file(path)); }

void save_scenario(const Scenario& scenario, const std::string& path) {
    write_file(path, scenario_to_json(scenario));
}

std::string placement_to_json(const Placement& placement, bool hap_mode) {
    ordered_json j;
    j["mode"] = hap_mode ? "hap" : "separated";
    j["en"] = ordered_json::array();
    for (const Point2& p : placement.en_locations) j["en"].push_back({{"x_m", p.x}, {"y_m", p.y}});
    j["ap"] = ordered_json::array();
    for (const Point2& p : placement.ap_locations) j["ap"].push_back({{"x_m", p.x}, {"y_m", p.y}});
    j["associations"] = placement.associations;
    return j.dump(2) + "\n";
}

Placement placement_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("placement: ") + e.what());
    }
    Placement p;
    const auto read_points = [&](const char* key) {
        std::vector<Point2> pts;
        if (!j.contains(key) || !j.at(key).is_array())
            fail("placement", std::string("missing array '") + key + "'");
        for (const auto& pj : j.at(key))
            pts.push_back({get_number(pj, "x_m", key), get_number(pj, "y_m", key)});
        return pts;
    };
    p.en_locations = read_points("en");
    p.ap_locations = read_points("ap");
    if (j.contains("associations"))
        p.associations = j.at("associations").get<std::vector<int>>();
    if (p.en_locations.empty() || p.ap_locations.empty())
        fail("placement", "needs at least one EN and one AP");
    return p;
}

Placement load_placement(const std::string& path) { return placement_from_json(read_file(path)); }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string metrics_to_csv(const Metrics& metrics, const Scenario& scenario,
                           std::optional<double> t_star, std::optional<double> cost) {
    std::ostringstream os;
    os << "kind,device,x_m,y_m,lambda_w,mu_w,omega_w,p_r_w,t_star_w,cost\n";
    for (std::size_t k = 0; k < metrics.lambda.size(); ++k) {
        const Point2 w = scenario.devices[k].location;
        os << "device," << k << ',' << format_double(w.x) << ',' << format_double(w.y) << ','
           << format_double(metrics.lambda[k]) << ',' << format_double(metrics.mu[k]) << ','
           << format_double(metrics.omega[k]) << ",,,\n";
    }
    os << "summary,,,,,,," << format_double(metrics.p_r) << ','
       << (t_star ? format_double(*t_star) : "") << ',' << (cost ? format_double(*cost) : "")
       << '\n';
    return os.str();
}

std::string history_to_csv(const SolveReport& report) {
    std::ostringstream os;
    os << "iter,phase,z_w\n";
    for (const PhaseRecord& rec : report.history)
        os << rec.iter << ',' << rec.phase << ',' << format_double(rec.value) << '\n';
    return os.str();
}

std::string run_record_to_json(const RunSummary& summary, const std::string& digest,
                               const std::vector<std::string>& outputs) {
    ordered_json j;
    j["command"] = summary.command;
    j["scenario_digest"] = digest;
    j["seed"] = summary.seed;
    j["wall_ms"] = summary.wall_ms;
    j["outputs"] = outputs;
    ordered_json rj;
    if (summary.p_r) rj["p_r_w"] = *summary.p_r;
    if (summary.t_star) rj["t_star_w"] = *summary.t_star;
    if (summary.cost) rj["cost"] = *summary.cost;
    if (summary.feasible) rj["feasible"] = *summary.feasible;
    j["result"] = rj;
    return j.dump(2) + "\n";
}

std::string scenario_digest(const Scenario& scenario) {
    const std::string text = scenario_to_json(scenario);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace wpcn
