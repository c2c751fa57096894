#include <json.hpp>
#include <map>

#include "isoband/error.hpp"
#include "isoband/problem_spec.hpp"

namespace isoband {
namespace {

struct Preset {
  const char* description;
  const char* json;
};

// Grids and cutoffs are chosen so every preset runs in seconds on one core
// and passes its full verification at the default tolerances.
const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = {
      {"free-torus",
       {"identity metric, no potential; closed-form bands",
        R"({"name": "free-torus", "geometry": "torus", "metric": "identity",
            "solver": {"grid": 64, "cutoff": 8, "kPoints": 33, "kRange": "half", "nBands": 6},
            "expect": {"kappa": [0, "2pi"], "A": [[1, 0], [0, 1]], "firstBandOscillation": 0.25,
                       "closedFormBands": true}})"}},
      {"diag-half-two",
       {"constant metric diag(1/2, 2); closed-form bands",
        R"({"name": "diag-half-two", "geometry": "torus", "metric": {"kind": "constant", "g11": 0.5, "g12": 0, "g22": 2},
            "solver": {"grid": 64, "cutoff": 8, "kPoints": 33, "kRange": "half", "nBands": 6},
            "expect": {"kappa": [0, "pi"], "A": [[0.5, 0], [0, 2]], "firstBandOscillation": 0.125,
                       "closedFormBands": true}})"}},
      {"rotated-anisotropic-a",
       {"rotated anisotropic metric with potential and magnetic field",
        R"({"name": "rotated-anisotropic-a", "geometry": "torus",
            "metric": {"kind": "rotated-anisotropic",
                       "logLambda": [[3, 0, 0.3], [2, 4, 0.2, 0, 0.1], [0, 5, 0.15]],
                       "theta": [[0, 0, 0.6], [4, 3, 0, 0.3], [1, 6, 0, 0.2, 0, 0.1]]},
            "V": {"kind": "trig", "terms": [[1, 0, 1], [1, 1, 0, 0, 0, 0.5]]},
            "a1": {"kind": "trig", "terms": [[0, 1, 0.3]]},
            "a2": {"kind": "trig", "terms": [[1, 0, 0, 0, 0.2]]},
            "solver": {"grid": 128, "cutoff": 16, "kPoints": 33, "kRange": "full", "nBands": 6}})"}},
      {"rotated-anisotropic-b",
       {"rotated anisotropic metric with potential and Gram weight",
        R"({"name": "rotated-anisotropic-b", "geometry": "torus",
            "metric": {"kind": "rotated-anisotropic",
                       "logLambda": [[4, 3, 0.2, 0.1, 0, 0.1], [4, 0, 0, 0, 0.15]],
                       "theta": [[5, 0, 0.3, 0, 0.15], [3, 4, 0, 0.25]]},
            "V": {"kind": "trig", "terms": [[1, 1, 0.5, 0, 0, -0.5]]},
            "mu": {"kind": "exp-trig", "terms": [[0, 1, 0, 0.2]]},
            "solver": {"grid": 128, "cutoff": 16, "kPoints": 33, "kRange": "half", "nBands": 6}})"}},
      {"rotated-anisotropic-c",
       {"rotated anisotropic metric alone",
        R"({"name": "rotated-anisotropic-c", "geometry": "torus",
            "metric": {"kind": "rotated-anisotropic",
                       "logLambda": [[0, 6, 0.3, 0.1], [5, 4, 0, 0, 0.15, 0.1]],
                       "theta": [[4, 4, 0.3, 0, 0, 0.3], [0, 0, 0.8]]},
            "solver": {"grid": 128, "cutoff": 16, "kPoints": 33, "kRange": "half", "nBands": 6}})"}},
      {"mirror-symmetric",
       {"metric symmetric under x2 -> -x2; lattice checks for real kappa",
        R"({"name": "mirror-symmetric", "geometry": "torus",
            "metric": {"kind": "rotated-anisotropic",
                       "logLambda": [[2, 2, 0.3, 0, 0.1, 0], [0, 3, 0.2]],
                       "theta": [[1, 2, 0, 0.4, 0, 0.2], [3, 1, 0, 0, 0, 0.3]]},
            "V": {"kind": "trig", "terms": [[0, 1, 1]]},
            "solver": {"grid": 128, "cutoff": 8, "kPoints": 33, "kRange": "half", "nBands": 6}})"}},
      {"cosine-potential",
       {"identity metric with V = 2 cos x1 + cos x2",
        R"({"name": "cosine-potential", "geometry": "torus", "metric": "identity",
            "V": {"kind": "trig", "terms": [[1, 0, 2], [0, 1, 1]]},
            "solver": {"grid": 64, "cutoff": 8, "kPoints": 33, "kRange": "half", "nBands": 6}})"}},
      {"delta-line-torus",
       {"identity metric with a delta line of density 1 + cos(x1)/2 at x2 = pi",
        R"({"name": "delta-line-torus", "geometry": "torus", "metric": "identity",
            "deltaLines": [{"y0": "pi", "sigma": {"kind": "trig", "terms": [[0, 0, 1], [1, 0, 0.5]]}}],
            "solver": {"grid": 64, "cutoff": 8, "kPoints": 33, "kRange": "half", "nBands": 6}})"}},
      {"sandwich-torus",
       {"weighted form with omega = exp(0.1 sin x1)",
        R"({"name": "sandwich-torus", "geometry": "torus", "metric": "identity",
            "omega": {"kind": "exp-trig", "terms": [[1, 0, 0, 0, 0.1]]},
            "solver": {"grid": 64, "cutoff": 8, "kPoints": 33, "kRange": "half", "nBands": 6}})"}},
      {"dirichlet-free-strip",
       {"free strip, Dirichlet edges; separable closed-form bands",
        R"({"name": "dirichlet-free-strip", "geometry": "strip", "bc": "dirichlet", "metric": "identity",
            "solver": {"grid": [64, 32], "cutoff": 8, "kPoints": 33, "kRange": "half", "nBands": 6},
            "expect": {"closedFormBands": true}})"}},
      {"neumann-cosine-strip",
       {"strip with V = cos x1 + cos(2 x2)/2, Neumann edges",
        R"({"name": "neumann-cosine-strip", "geometry": "strip", "bc": "neumann", "metric": "identity",
            "V": {"kind": "trig", "terms": [[1, 0, 1], [0, 2, 0.5]]},
            "solver": {"grid": [64, 32], "cutoff": 8, "kPoints": 33, "kRange": "half", "nBands": 6}})"}},
      {"odd-a2-strip",
       {"strip with magnetic potential, a2 vanishing on the edges",
        R"({"name": "odd-a2-strip", "geometry": "strip", "bc": "dirichlet", "metric": "identity",
            "a1": {"kind": "trig", "terms": [[0, 2, 0.2]]},
            "a2": {"kind": "trig", "terms": [[1, 1, 0, 0.3]]},
            "solver": {"grid": [64, 32], "cutoff": 8, "kPoints": 33, "kRange": "full", "nBands": 6}})"}},
      {"sandwich-strip",
       {"strip with omega = 1 + 0.2 x2 (pi - x2), Neumann edges (Robin terms)",
        R"({"name": "sandwich-strip", "geometry": "strip", "bc": "neumann", "metric": "identity",
            "omega": {"kind": "poly-trig", "poly": [1, "0.2pi", -0.2]},
            "solver": {"grid": [64, 64], "cutoff": 8, "kPoints": 33, "kRange": "half", "nBands": 6}})"}},
  };
  return table;
}

}  // namespace

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = [] {
    std::vector<PresetInfo> out;
    for (const auto& [name, p] : presets()) out.push_back({name, p.description});
    return out;
  }();
  return catalog;
}

std::string preset_json(const std::string& name) {
  const auto it = presets().find(name);
  if (it == presets().end()) throw Error(ErrorKind::Config, "unknown preset \"" + name + "\"");
  return it->second.json;
}

ProblemSpec preset(const std::string& name) { return parse_problem_spec(preset_json(name)); }

}  // namespace isoband
