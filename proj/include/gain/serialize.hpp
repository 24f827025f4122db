#pragma once

#include <string>

#include "gain/gain.hpp"

namespace gain {

// Model container: versioned binary file holding the config echo, the
// feature schema with normalization params, and both nets' parameters as
// raw 64-bit reals (little-endian). save/load round-trips are bit-exact.
void save_model(const GainModel& model, const std::string& path);
GainModel load_model(const std::string& path);

// Loss history as CSV: iteration, d_loss, g_adv_loss, g_recon_loss.
void save_loss_history(const GainModel& model, const std::string& path);

}  // namespace gain
