#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Channel and energy models of a wireless powered communication network.
// Every other module evaluates physics only through the functions here.

namespace wpcn {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }
};

double distance(Point2 a, Point2 b);

/// Axis-aligned deployment area. Contains every device location.
struct Region {
    Point2 lo;
    Point2 hi;

    bool contains(Point2 p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }
    Point2 clamp(Point2 p) const;
    Point2 center() const { return {0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)}; }
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double diagonal() const;
};

/// A wireless device: fixed location, constant circuit power a1 [W] and
/// uplink transmit coefficient a2 [W/m^d_U].
struct Device {
    Point2 location;
    double circuit_power = 0.0;  // a1, watts
    double tx_coeff = 0.0;       // a2, watts per meter^d_U
};

/// Downlink/uplink channel constants. beta and phi are derived; use
/// make_channel_params so the derivation invariants hold.
struct ChannelParams {
    double p0 = 0.0;               // EN transmit power, watts
    double eta = 0.0;              // harvesting circuit efficiency, (0,1]
    double antenna_gain_dl = 0.0;  // linear
    double carrier_freq_dl = 0.0;  // hertz
    double dl_exponent = 0.0;      // d_D >= 2
    double ul_exponent = 0.0;      // d_U >= 2
    double beta = 0.0;             // gain * (c / 4 pi f)^d_D, m^d_D
    double phi = 0.0;              // eta * beta * p0, W m^d_D
    double min_distance = 0.5;     // harvest-side distance clamp, m
};

struct Costs {
    double c1 = 0.0;  // per EN
    double c2 = 0.0;  // per AP
    double c3 = 0.0;  // per HAP
};

/// Immutable problem instance.
struct Scenario {
    std::vector<Device> devices;
    ChannelParams channel;
    Region region;
    double gamma = 0.0;  // target net rate, watts
    Costs costs;

    std::size_t device_count() const { return devices.size(); }
    std::vector<Point2> device_locations() const;
};

/// Candidate solution: EN coordinates, AP coordinates (identical vectors in
/// HAP mode) and nearest-AP associations.
struct Placement {
    std::vector<Point2> en_locations;
    std::vector<Point2> ap_locations;
    std::vector<int> associations;  // device index -> AP index
};

/// Per-device rates of a placement. omega[k] = lambda[k] - mu[k] exactly and
/// p_r = min_k omega[k].
struct Metrics {
    std::vector<double> lambda;
    std::vector<double> mu;
    std::vector<double> omega;
    double p_r = 0.0;
};

/// Raised when a trial-and-error association loop exceeds its round guard.
struct AssociationCyclingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// beta = gain * (3e8 / (4 pi f))^exponent.
double compute_beta(double antenna_gain_dl, double carrier_freq_dl, double dl_exponent);

ChannelParams make_channel_params(double p0, double eta, double antenna_gain_dl,
                                  double carrier_freq_dl, double dl_exponent,
                                  double ul_exponent, double min_distance = 0.5);

/// Throws std::invalid_argument when a scenario violates its invariants.
void validate_scenario(const Scenario& scenario);

/// Mean harvesting rate phi * sum_i max(||u_i - w||, min_distance)^(-d_D).
double harvest_rate(std::span<const Point2> en_locations, Point2 device_location,
                    const ChannelParams& channel);

/// Index of the closest site; ties go to the lowest index.
std::size_t nearest_index(std::span<const Point2> sites, Point2 device_location);

/// a1 + a2 * ||v - w||^d_U. The uplink side carries no distance clamp.
double consumption_rate(Point2 ap_location, const Device& device, double ul_exponent);

Metrics evaluate(const Placement& placement, const Scenario& scenario);

Placement make_placement(std::vector<Point2> en_locations, std::vector<Point2> ap_locations,
                         const Scenario& scenario);

/// Mean time until a battery of `battery` joules depletes at net rate omega;
/// +infinity when omega >= 0.
double lifetime(double omega, double battery);

/// Exponential integral E1(x) = integral_1^inf t^-1 e^(-t x) dt, x > 0.
double exp_integral_e1(double x);

/// Uplink transmit coefficient implied by truncated channel inversion with
/// receive power target rx_power_target and outage probability `outage`.
double derive_a2(double rx_power_target, double outage, double antenna_gain_ul,
                 double carrier_freq_ul, double ul_exponent);

/// K devices uniform in a [0, box_size]^2 region with the default channel
/// (1 W, eta 0.51, gain 2.0 linear, 915 MHz, d_D 2.2, d_U 2.5,
/// a1 = 50 uW, a2 = 1.4e-6, gamma = -1e-4 W, costs 0.7/1.0/1.4).
Scenario uniform_scenario(std::size_t k, double box_size, std::uint64_t seed);

ChannelParams default_channel_params();
Costs default_costs();

inline constexpr double kSpeedOfLight = 3.0e8;

}  // namespace wpcn
