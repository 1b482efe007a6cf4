#include "wpert/spec_io.hpp"

#include <charconv>
#include <stdexcept>

namespace wpert {

using nlohmann::json;

namespace {

double require_number(const json& j, const char* key, const char* ctx) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw std::invalid_argument(std::string(ctx) + ": missing numeric field \"" +
                                    key + "\"");
    }
    return j[key].get<double>();
}

}  // namespace

BaseDistribution base_from_json(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "uniform")
        return BaseDistribution::uniform(require_number(j, "lo", "base uniform"),
                                         require_number(j, "hi", "base uniform"));
    if (kind == "normal")
        return BaseDistribution::normal(require_number(j, "mu", "base normal"),
                                        require_number(j, "sigma", "base normal"));
    if (kind == "exponential")
        return BaseDistribution::exponential(
            require_number(j, "rate", "base exponential"));
    throw std::invalid_argument(
        "base: \"kind\" must be uniform, normal or exponential");
}

Wavelet wavelet_from_json(const json& j) {
    const std::string family = j.value("family", "");
    if (family == "psi_u") return Wavelet::psi_u();
    if (family == "beta")
        return Wavelet::beta(require_number(j, "alpha", "beta wavelet"),
                             require_number(j, "beta", "beta wavelet"));
    if (family == "mexican_hat")
        return Wavelet::mexican_hat(j.value("half_width", 5.0));
    if (family == "daubechies") {
        if (!j.contains("order"))
            throw std::invalid_argument("daubechies wavelet: missing \"order\"");
        return Wavelet::daubechies(j["order"].get<int>());
    }
    throw std::invalid_argument(
        "wavelet: \"family\" must be psi_u, beta, mexican_hat or daubechies");
}

PerturbationSpec perturbation_from_json(const json& j) {
    PerturbationSpec spec;
    const std::string mode = j.value("mode", "single");
    if (mode == "single")
        spec.mode = PerturbMode::single;
    else if (mode == "level2")
        spec.mode = PerturbMode::level2;
    else if (mode == "level4")
        spec.mode = PerturbMode::level4;
    else
        throw std::invalid_argument(
            "perturbation: \"mode\" must be single, level2 or level4");

    spec.gain = j.value("gain", 1.0);
    const std::string path = j.value("path", "auto");
    if (path == "auto")
        spec.path = PerturbPath::automatic;
    else if (path == "direct")
        spec.path = PerturbPath::direct;
    else if (path == "normalized")
        spec.path = PerturbPath::normalized;
    else
        throw std::invalid_argument(
            "perturbation: \"path\" must be auto, direct or normalized");

    if (!j.contains("wavelets") || !j["wavelets"].is_array())
        throw std::invalid_argument("perturbation: missing \"wavelets\" array");
    for (const auto& w : j["wavelets"]) spec.wavelets.push_back(wavelet_from_json(w));
    return spec;
}

PerturbedDistribution perturbed_from_json(const json& j) {
    if (!j.contains("base"))
        throw std::invalid_argument("spec: missing \"base\" object");
    if (!j.contains("perturbation"))
        throw std::invalid_argument("spec: missing \"perturbation\" object");
    return {base_from_json(j["base"]), perturbation_from_json(j["perturbation"])};
}

json to_json(const BaseDistribution& base) {
    json j;
    switch (base.kind()) {
        case DistKind::uniform:
            j["kind"] = "uniform";
            j["lo"] = base.param1();
            j["hi"] = base.param2();
            break;
        case DistKind::normal:
            j["kind"] = "normal";
            j["mu"] = base.param1();
            j["sigma"] = base.param2();
            break;
        case DistKind::exponential:
            j["kind"] = "exponential";
            j["rate"] = base.param1();
            break;
    }
    return j;
}

json to_json(const Wavelet& w) {
    json j;
    const WaveletDesc& d = w.desc();
    switch (d.family) {
        case WaveletFamily::psi_u:
            j["family"] = "psi_u";
            break;
        case WaveletFamily::beta:
            j["family"] = "beta";
            j["alpha"] = d.alpha;
            j["beta"] = d.beta;
            break;
        case WaveletFamily::mexican_hat:
            j["family"] = "mexican_hat";
            j["half_width"] = d.half_width;
            break;
        case WaveletFamily::daubechies:
            j["family"] = "daubechies";
            j["order"] = d.order;
            break;
        case WaveletFamily::custom:
            throw std::invalid_argument(
                "to_json: custom wavelets have no config representation");
    }
    return j;
}

json to_json(const PerturbationSpec& spec) {
    json j;
    switch (spec.mode) {
        case PerturbMode::single: j["mode"] = "single"; break;
        case PerturbMode::level2: j["mode"] = "level2"; break;
        case PerturbMode::level4: j["mode"] = "level4"; break;
    }
    j["gain"] = spec.gain;
    switch (spec.path) {
        case PerturbPath::automatic: j["path"] = "auto"; break;
        case PerturbPath::direct: j["path"] = "direct"; break;
        case PerturbPath::normalized: j["path"] = "normalized"; break;
    }
    j["wavelets"] = json::array();
    for (const auto& w : spec.wavelets) j["wavelets"].push_back(to_json(w));
    return j;
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace wpert
