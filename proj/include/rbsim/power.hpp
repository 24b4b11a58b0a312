#ifndef RBSIM_POWER_HPP
#define RBSIM_POWER_HPP

#include <array>

#include "rbsim/errors.hpp"

namespace rbsim {

// Small-signal gain-length product presets. The calibrated value pins the
// 5.0 W beam-power plateau at unit transmission efficiency; the datasheet
// value is the naive back-out of the quoted excitation efficiency through
// the stored-power relation and sits below the lasing threshold under the
// symmetric loss split.
double calibrated_gain_length();           // ~0.2359
double datasheet_gain_length();            // ~0.0865

// Per-leg loss factors V1..V4 with product equal to eta_t.
enum class LossSplit { symmetric, weighted };

struct PowerModelParams {
    double p_in_w = 37.3;            // pump power into the gain medium
    double i_sat_w_m2 = 1.26e7;      // saturated intensity
    double reflectivity = 0.9;       // output retroreflector R
    double v_s = 0.88;               // lumped optics loss factor
    double g0_lg = 0.0;              // small-signal gain-length product; 0 -> calibrated
    double gain_radius_m = 2.8e-3;   // pumped area A_g = pi r^2
    double eta_b = 1.0;              // beam/gain area overlap A_b / A_g
    double eta_pv = 0.12;            // photovoltaic efficiency

    LossSplit split = LossSplit::symmetric;
    // Unit-product weights applied on top of the symmetric split when
    // split == weighted (e.g. measured checkpoint ratios rescaled).
    std::array<double, 4> split_weights{1.0, 1.0, 1.0, 1.0};

    double gain_length() const { return g0_lg > 0.0 ? g0_lg : calibrated_gain_length(); }
    double gain_area_m2() const;
    std::array<double, 4> legs(double eta_t) const;
    void validate() const;
};

// Beam power leaving the receiver mirror (the output-coupling formula
// without the photovoltaic factor). Returns 0 below threshold.
double output_beam_power(double eta_t, const PowerModelParams& p);

// eta_pv times the beam power.
double output_electrical_power(double eta_t, const PowerModelParams& p);

// The same electrical power through the factored route
// P = eta_pv * eta_e(eta_t) * eta_g * (P_in - P_th); algebraically identical
// to output_electrical_power above threshold and cross-checked in the tests.
double output_electrical_power_factored(double eta_t, const PowerModelParams& p);

// Pump threshold |ln sqrt(R Vs^2 eta_t)| * P_in / (g0 lg).
// Returns +infinity for eta_t == 0.
double threshold_power(double eta_t, const PowerModelParams& p);

// Gain-length product that makes the beam power hit target_w at eta_t = 1.
double calibrate_gain(const PowerModelParams& p, double target_beam_w);

struct SafetyParams {
    double p_o_w = 5.0;                  // output beam power
    double reflectivity = 0.9;
    double cavity_length_m = 2.0;
    double light_speed_m_s = 3.0e8;
    double beam_area_m2 = 1.5393804002589986e-4;  // pi * (7 mm)^2
    double mpe_j_m2 = 1000.0;            // skin MPE of the laser safety standard
    void validate() const;
};

struct ExposureResult {
    double p_s_w = 0.0;    // intra-cavity circulating power
    double t_s_s = 0.0;    // storage time L/c
    double e_r_j_m2 = 0.0; // radiant exposure on a blocking object
    bool compliant = false;
};

ExposureResult radiant_exposure(const SafetyParams& s);

} // namespace rbsim

#endif
