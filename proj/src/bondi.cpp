#include "cwy/bondi.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <utility>

#include <json.hpp>

#include "cwy/errors.hpp"

namespace cwy {
namespace {

constexpr double kFourPi = 4.0 * SphereGrid::kPi;

// Band-limit projection of an axisymmetric profile f(theta).
HarmonicCoeffs project_profile(const SphereGrid& g, double (*f)(double),
                               double scale) {
  Vec vals(g.size());
  for (int j = 0; j < g.n_theta(); ++j) {
    const double v = scale * f(g.theta(j));
    for (int k = 0; k < g.n_phi(); ++k)
      vals[static_cast<std::size_t>(j) * g.n_phi() + k] = v;
  }
  return analyze(g, vals, g.band_limit());
}

}  // namespace

BondiData kerr_data(double mass, double spin, int band_limit) {
  if (!std::isfinite(mass) || !std::isfinite(spin))
    throw ShapeError("kerr_data: mass and spin must be finite");
  if (band_limit < 8)
    throw BandLimitError("kerr_data: band limit must be at least 8");

  const SphereGrid g(band_limit);

  BondiData d;
  d.band_limit = band_limit;
  d.u = 0.0;

  HarmonicCoeffs mc(band_limit);
  mc.at(0, 0) = mass * std::sqrt(kFourPi);
  d.m = ScalarField(std::move(mc));

  HarmonicCoeffs ng = project_profile(g, std::sin, 3.0 * mass * spin);
  HarmonicCoeffs nc(band_limit);
  nc.at(1, 0) = -3.0 * mass * spin * std::sqrt(kFourPi / 3.0);
  d.N = CovectorField(ScalarField(std::move(ng)), ScalarField(std::move(nc)));

  HarmonicCoeffs ce = project_profile(g, std::sin, -2.0 * spin);
  d.shear = TracelessTensor(ScalarField(std::move(ce)),
                            ScalarField(HarmonicCoeffs(band_limit)));
  return d;
}

BondiData random_data(std::uint64_t seed, int band_limit, double amplitude,
                      bool com_frame) {
  if (band_limit < 2)
    throw BandLimitError("random_data: band limit must be at least 2");

  std::mt19937_64 rng(seed);
  // Uniform in [-1, 1) from the top 53 bits; avoids distribution classes,
  // whose output is not pinned down by the standard.
  const auto draw = [&rng]() {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  };
  const auto fill = [&](HarmonicCoeffs& c, int l_min) {
    for (int l = l_min; l <= c.band_limit(); ++l) {
      const double s = amplitude / ((1.0 + l) * (1.0 + l) * (1.0 + l));
      for (int mu = -l; mu <= l; ++mu) c.at(l, mu) = s * draw();
    }
  };

  HarmonicCoeffs mc(band_limit), ng(band_limit), nc(band_limit),
      ce(band_limit), cb(band_limit);
  fill(mc, 0);
  fill(ng, 1);
  fill(nc, 1);
  fill(ce, 2);
  fill(cb, 2);

  if (com_frame) {
    mc.zero_degrees(1, 1);
    mc.at(0, 0) = std::sqrt(kFourPi) * (1.0 + amplitude);
  }

  BondiData d;
  d.band_limit = band_limit;
  d.u = 0.0;
  d.m = ScalarField(std::move(mc));
  d.N = CovectorField(ScalarField(std::move(ng)), ScalarField(std::move(nc)));
  d.shear =
      TracelessTensor(ScalarField(std::move(ce)), ScalarField(std::move(cb)));
  return d;
}

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

HarmonicCoeffs parse_triplets(const json& arr, const std::string& where,
                              int band, int l_min) {
  if (!arr.is_array())
    throw ParseError("\"" + where + "\" must be an array of [l, mu, value]");
  HarmonicCoeffs out(band);
  std::set<std::pair<int, int>> seen;
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
        !e[1].is_number_integer() || !e[2].is_number())
      throw ParseError("\"" + where +
                       "\": each entry must be [l, mu, value] with integer "
                       "l, mu and numeric value");
    const int l = e[0].get<int>();
    const int mu = e[1].get<int>();
    const double v = e[2].get<double>();
    if (l < 0 || std::abs(mu) > l)
      throw ParseError("\"" + where + "\": invalid (l, mu) = (" +
                       std::to_string(l) + ", " + std::to_string(mu) + ")");
    if (l < l_min)
      throw ParseError("\"" + where + "\": degree " + std::to_string(l) +
                       " is below the minimum degree " +
                       std::to_string(l_min) + " for this field");
    if (l > band)
      throw ParseError("band-limit mismatch: \"" + where + "\" has degree " +
                       std::to_string(l) + " above bandlimit " +
                       std::to_string(band));
    if (!std::isfinite(v))
      throw ParseError("\"" + where + "\": non-finite value at (l, mu) = (" +
                       std::to_string(l) + ", " + std::to_string(mu) + ")");
    if (!seen.insert({l, mu}).second)
      throw ParseError("\"" + where + "\": duplicate entry (l, mu) = (" +
                       std::to_string(l) + ", " + std::to_string(mu) + ")");
    out.at(l, mu) = v;
  }
  return out;
}

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw ParseError("unknown field \"" + it.key() + "\" in " + where);
  }
}

json triplet_array(const HarmonicCoeffs& c, int l_min) {
  json arr = json::array();
  for (int l = l_min; l <= c.band_limit(); ++l)
    for (int mu = -l; mu <= l; ++mu)
      if (c.at(l, mu) != 0.0) arr.push_back({l, mu, c.at(l, mu)});
  return arr;
}

}  // namespace

BondiData read_data(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed document: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw ParseError("document root must be an object");
  require_keys(doc, "document root",
               {"version", "bandlimit", "u", "mass_aspect", "angmom_aspect",
                "shear"});

  if (!doc.contains("version") || !doc["version"].is_number_integer())
    throw ParseError("missing or non-integer field \"version\"");
  if (doc["version"].get<long long>() != 1)
    throw ParseError("unknown version " + doc["version"].dump() +
                     " (expected 1)");

  if (!doc.contains("bandlimit") || !doc["bandlimit"].is_number_integer())
    throw ParseError("missing or non-integer field \"bandlimit\"");
  const long long band_ll = doc["bandlimit"].get<long long>();
  if (band_ll < 0 || band_ll > 4096)
    throw ParseError("\"bandlimit\" out of range: " + std::to_string(band_ll));
  const int band = static_cast<int>(band_ll);

  if (!doc.contains("u") || !doc["u"].is_number())
    throw ParseError("missing or non-numeric field \"u\"");
  const double u = doc["u"].get<double>();
  if (!std::isfinite(u)) throw ParseError("non-finite field \"u\"");

  if (!doc.contains("mass_aspect"))
    throw ParseError("missing field \"mass_aspect\"");
  HarmonicCoeffs mc = parse_triplets(doc["mass_aspect"], "mass_aspect", band, 0);

  HarmonicCoeffs ng(band), nc(band);
  if (doc.contains("angmom_aspect")) {
    const json& na = doc["angmom_aspect"];
    if (!na.is_object())
      throw ParseError("\"angmom_aspect\" must be an object");
    require_keys(na, "\"angmom_aspect\"", {"grad", "curl"});
    if (na.contains("grad"))
      ng = parse_triplets(na["grad"], "angmom_aspect.grad", band, 1);
    if (na.contains("curl"))
      nc = parse_triplets(na["curl"], "angmom_aspect.curl", band, 1);
  }

  HarmonicCoeffs ce(band), cb(band);
  if (doc.contains("shear")) {
    const json& sh = doc["shear"];
    if (!sh.is_object()) throw ParseError("\"shear\" must be an object");
    require_keys(sh, "\"shear\"", {"electric", "magnetic"});
    const int l_min = strict ? 2 : 0;
    if (sh.contains("electric"))
      ce = parse_triplets(sh["electric"], "shear.electric", band, l_min);
    if (sh.contains("magnetic"))
      cb = parse_triplets(sh["magnetic"], "shear.magnetic", band, l_min);
  }

  BondiData d;
  d.band_limit = band;
  d.u = u;
  d.m = ScalarField(std::move(mc));
  d.N = CovectorField(ScalarField(std::move(ng)), ScalarField(std::move(nc)));
  d.shear =
      TracelessTensor(ScalarField(std::move(ce)), ScalarField(std::move(cb)));
  return d;
}

void write_data(const BondiData& d, const std::string& path) {
  ordered_json doc;
  doc["version"] = 1;
  doc["bandlimit"] = d.band_limit;
  doc["u"] = d.u;
  doc["mass_aspect"] = triplet_array(d.m.coeffs(), 0);
  doc["angmom_aspect"] = {
      {"grad", triplet_array(d.N.grad_potential().coeffs(), 1)},
      {"curl", triplet_array(d.N.curl_potential().coeffs(), 1)}};
  doc["shear"] = {
      {"electric", triplet_array(d.shear.electric().coeffs(), 2)},
      {"magnetic", triplet_array(d.shear.magnetic().coeffs(), 2)}};
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open \"" + path + "\" for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw ParseError("failed writing \"" + path + "\"");
}

}  // namespace cwy
