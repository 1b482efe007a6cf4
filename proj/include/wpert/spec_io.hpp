#pragma once

#include <string>

#include <json.hpp>

#include "wpert/distribution.hpp"
#include "wpert/perturbation.hpp"

namespace wpert {

//! Config schema:
//! {
//!   "base": {"kind": "uniform"|"normal"|"exponential",
//!            "lo":, "hi":, "mu":, "sigma":, "rate":},
//!   "perturbation": {
//!     "mode": "single"|"level2"|"level4",
//!     "gain": 1.0,                 // optional, default 1
//!     "path": "auto"|"direct"|"normalized",   // optional, default auto
//!     "wavelets": [{"family": "psi_u"|"beta"|"mexican_hat"|"daubechies",
//!                   "alpha":, "beta":, "half_width":, "order":}, ...]
//!   }
//! }
//! Wavelet lists hold 1, 2 or 4 entries ordered low segment to high.

BaseDistribution base_from_json(const nlohmann::json& j);
Wavelet wavelet_from_json(const nlohmann::json& j);
PerturbationSpec perturbation_from_json(const nlohmann::json& j);
PerturbedDistribution perturbed_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BaseDistribution& base);
nlohmann::json to_json(const Wavelet& w);
nlohmann::json to_json(const PerturbationSpec& spec);

//! Full round-trip decimal text for CSV output.
std::string format_double(double v);

}  // namespace wpert
