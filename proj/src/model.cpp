#include "wpcn/model.hpp"

#include <algorithm>
#include <cmath>

#include "wpcn/random.hpp"

namespace wpcn {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Point2 Region::clamp(Point2 p) const {
    return {std::min(std::max(p.x, lo.x), hi.x), std::min(std::max(p.y, lo.y), hi.y)};
}

double Region::diagonal() const { return std::hypot(width(), height()); }

std::vector<Point2> Scenario::device_locations() const {
    std::vector<Point2> pts;
    pts.reserve(devices.size());
    for (const auto& d : devices) pts.push_back(d.location);
    return pts;
}

double compute_beta(double antenna_gain_dl, double carrier_freq_dl, double dl_exponent) {
    if (!(antenna_gain_dl > 0.0) || !(carrier_freq_dl > 0.0))
        throw std::invalid_argument("compute_beta: gain and frequency must be positive");
    if (!(dl_exponent >= 2.0))
        throw std::invalid_argument("compute_beta: path loss exponent must be >= 2");
    const double wavelength_term = kSpeedOfLight / (4.0 * M_PI * carrier_freq_dl);
    return antenna_gain_dl * std::pow(wavelength_term, dl_exponent);
}

ChannelParams make_channel_params(double p0, double eta, double antenna_gain_dl,
                                  double carrier_freq_dl, double dl_exponent,
                                  double ul_exponent, double min_distance) {
    if (!(p0 > 0.0)) throw std::invalid_argument("channel: p0 must be positive");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("channel: eta must be in (0,1]");
    if (!(ul_exponent >= 2.0)) throw std::invalid_argument("channel: d_U must be >= 2");
    if (!(min_distance > 0.0)) throw std::invalid_argument("channel: min_distance must be positive");
    ChannelParams ch;
    ch.p0 = p0;
    ch.eta = eta;
    ch.antenna_gain_dl = antenna_gain_dl;
    ch.carrier_freq_dl = carrier_freq_dl;
    ch.dl_exponent = dl_exponent;
    ch.ul_exponent = ul_exponent;
    ch.min_distance = min_distance;
    ch.beta = compute_beta(antenna_gain_dl, carrier_freq_dl, dl_exponent);
    ch.phi = eta * ch.beta * p0;
    return ch;
}

void validate_scenario(const Scenario& scenario) {
    if (scenario.devices.empty())
        throw std::invalid_argument("scenario: at least one device required");
    if (!std::isfinite(scenario.gamma))
        throw std::invalid_argument("scenario: gamma must be finite");
    const Region& r = scenario.region;
    if (!(r.lo.x <= r.hi.x && r.lo.y <= r.hi.y))
        throw std::invalid_argument("scenario: region lo must not exceed hi");
    if (!(scenario.channel.phi > 0.0))
        throw std::invalid_argument("scenario: channel phi must be positive");
    for (std::size_t k = 0; k < scenario.devices.size(); ++k) {
        const Device& d = scenario.devices[k];
        if (!(d.circuit_power >= 0.0))
            throw std::invalid_argument("scenario: device " + std::to_string(k) +
                                        " circuit power must be >= 0");
        if (!(d.tx_coeff > 0.0))
            throw std::invalid_argument("scenario: device " + std::to_string(k) +
                                        " tx coefficient must be positive");
        if (!r.contains(d.location))
            throw std::invalid_argument("scenario: device " + std::to_string(k) +
                                        " lies outside the region");
    }
}

double harvest_rate(std::span<const Point2> en_locations, Point2 device_location,
                    const ChannelParams& channel) {
    if (en_locations.empty())
        throw std::invalid_argument("harvest_rate: at least one EN required");
    double sum = 0.0;
    for (const Point2& u : en_locations) {
        const double d = std::max(distance(u, device_location), channel.min_distance);
        sum += std::pow(d, -channel.dl_exponent);
    }
    return channel.phi * sum;
}

std::size_t nearest_index(std::span<const Point2> sites, Point2 device_location) {
    if (sites.empty()) throw std::invalid_argument("nearest_index: empty site list");
    std::size_t best = 0;
    double best_d = distance(sites[0], device_location);
    for (std::size_t j = 1; j < sites.size(); ++j) {
        const double d = distance(sites[j], device_location);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

double consumption_rate(Point2 ap_location, const Device& device, double ul_exponent) {
    const double d = distance(ap_location, device.location);
    return device.circuit_power + device.tx_coeff * std::pow(d, ul_exponent);
}

Metrics evaluate(const Placement& placement, const Scenario& scenario) {
    if (placement.en_locations.empty() || placement.ap_locations.empty())
        throw std::invalid_argument("evaluate: placement needs at least one EN and one AP");
    const std::size_t k_count = scenario.devices.size();
    Metrics m;
    m.lambda.resize(k_count);
    m.mu.resize(k_count);
    m.omega.resize(k_count);
    m.p_r = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < k_count; ++k) {
        const Device& dev = scenario.devices[k];
        m.lambda[k] = harvest_rate(placement.en_locations, dev.location, scenario.channel);
        const std::size_t j = nearest_index(placement.ap_locations, dev.location);
        m.mu[k] = consumption_rate(placement.ap_locations[j], dev, scenario.channel.ul_exponent);
        m.omega[k] = m.lambda[k] - m.mu[k];
        m.p_r = std::min(m.p_r, m.omega[k]);
    }
    return m;
}

Placement make_placement(std::vector<Point2> en_locations, std::vector<Point2> ap_locations,
                         const Scenario& scenario) {
    Placement p;
    p.en_locations = std::move(en_locations);
    p.ap_locations = std::move(ap_locations);
    p.associations.resize(scenario.devices.size());
    for (std::size_t k = 0; k < scenario.devices.size(); ++k)
        p.associations[k] =
            static_cast<int>(nearest_index(p.ap_locations, scenario.devices[k].location));
    return p;
}

double lifetime(double omega, double battery) {
    if (!(battery > 0.0)) throw std::invalid_argument("lifetime: battery must be positive");
    if (omega >= 0.0) return std::numeric_limits<double>::infinity();
    return -battery / omega;
}

namespace {

// Power series around 0: E1(x) = -gamma - ln x + sum (-1)^(n+1) x^n / (n n!).
double e1_series(double x) {
    constexpr double kEulerGamma = 0.57721566490153286060651209008240;
    double sum = 0.0;
    double term = 1.0;
    for (int n = 1; n <= 64; ++n) {
        term *= -x / n;
        const double contrib = -term / n;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * std::max(1.0, std::abs(sum))) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// Modified Lentz continued fraction, accurate for x > 1.
double e1_continued_fraction(double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 200; ++i) {
        const double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + a / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x);
}

}  // namespace

double exp_integral_e1(double x) {
    if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: x must be positive");
    return x <= 1.0 ? e1_series(x) : e1_continued_fraction(x);
}

double derive_a2(double rx_power_target, double outage, double antenna_gain_ul,
                 double carrier_freq_ul, double ul_exponent) {
    if (!(outage > 0.0 && outage < 1.0))
        throw std::domain_error("derive_a2: outage must be in (0,1)");
    if (!(rx_power_target > 0.0) || !(antenna_gain_ul > 0.0) || !(carrier_freq_ul > 0.0))
        throw std::domain_error("derive_a2: power, gain and frequency must be positive");
    const double path_term =
        std::pow(4.0 * M_PI * carrier_freq_ul / kSpeedOfLight, ul_exponent);
    const double severity = std::log(1.0 / (1.0 - outage));
    return rx_power_target / antenna_gain_ul * path_term * exp_integral_e1(severity);
}

ChannelParams default_channel_params() {
    // 3 dB downlink gain taken as linear 2.0, which reproduces beta = 6.57e-4.
    return make_channel_params(1.0, 0.51, 2.0, 915.0e6, 2.2, 2.5, 0.5);
}

Costs default_costs() { return {0.7, 1.0, 1.4}; }

Scenario uniform_scenario(std::size_t k, double box_size, std::uint64_t seed) {
    if (k == 0) throw std::invalid_argument("uniform_scenario: k must be positive");
    if (!(box_size > 0.0)) throw std::invalid_argument("uniform_scenario: box must be positive");
    Scenario s;
    s.channel = default_channel_params();
    s.region = {{0.0, 0.0}, {box_size, box_size}};
    s.gamma = -1.0e-4;
    s.costs = default_costs();
    Rng rng(seed);
    s.devices.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        Device d;
        d.location = {rng.uniform(0.0, box_size), rng.uniform(0.0, box_size)};
        d.circuit_power = 50.0e-6;
        d.tx_coeff = 1.4e-6;
        s.devices.push_back(d);
    }
    return s;
}

}  // namespace wpcn
