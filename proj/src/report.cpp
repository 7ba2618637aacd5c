#include "entorder/report.hpp"

#include <cmath>
#include <string>

#include "entorder/numfmt.hpp"

namespace entorder {

Json json_number(double value) {
  if (std::isfinite(value)) return value;
  return format_g17(value);
}

namespace {

template <typename T>
Json optional_number(const std::optional<T>& value) {
  return value ? Json(*value) : Json(nullptr);
}

Json to_json(const ConditionCheck& check) {
  return {{"pass", check.pass}, {"first_failure", optional_number(check.first_failure)}};
}

Json to_json(const std::vector<Witness>& list) {
  Json out = Json::array();
  for (const auto& w : list) out.push_back({{"n", w.n}, {"value", json_number(w.value)}});
  return out;
}

void dump(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        dump(item, indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ",\n";
        out += inner;
        dump(v[i], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_g17(v.get<double>());
      return;
    default:
      out += v.dump();  // strings, integers, booleans, null
  }
}

}  // namespace

Json to_json(const ConditionReport& report) {
  return {{"positivity", to_json(report.positivity)},
          {"strict_monotonicity", to_json(report.strict_monotonicity)},
          {"convexity", to_json(report.convexity)},
          {"normalization", {{"pass", report.normalization_pass},
                             {"residual", json_number(report.normalization_residual)}}},
          {"all_pass", report.all_pass()}};
}

Json to_json(const SpectrumStats& stats) {
  return {{"entropy_bits", json_number(stats.entropy_bits)},
          {"schmidt_rank", optional_number(stats.schmidt_rank)},
          {"mean_excitation", json_number(stats.mean_excitation)}};
}

Json to_json(const Window& window) { return {{"n_min", window.n_min}, {"n_max", window.n_max}}; }

Json to_json(const TrendStats& stats) {
  return {{"trend", std::string(to_string(stats.trend))},
          {"min_fall", json_number(stats.min_fall)},
          {"max_rise", json_number(stats.max_rise)},
          {"min_extensions", stats.min_extensions},
          {"max_extensions", stats.max_extensions},
          {"second_half_start", stats.second_half_start},
          {"min_stable", stats.min_stable()},
          {"max_stable", stats.max_stable()}};
}

Json to_json(const TargetEvidence& evidence) {
  Json regions = Json::array();
  for (const auto& r : evidence.regions) {
    regions.push_back({{"j", r.j},
                       {"n_lo", r.n_lo},
                       {"n_hi", r.n_hi},
                       {"min", json_number(r.min)},
                       {"max", json_number(r.max)}});
  }
  return {{"regions", regions},
          {"min_extended", evidence.min_extended},
          {"max_extended", evidence.max_extended},
          {"has_targets", evidence.has_targets},
          {"tail_covers_period", evidence.tail_covers_period}};
}

Json to_json(const OscillationCertificate& certificate) {
  return {{"window", to_json(certificate.window)}, {"up", to_json(certificate.up)}, {"down", to_json(certificate.down)}};
}

Json to_json(const ComparisonReport& report) {
  Json out{{"mode", report.mode}, {"verdict", std::string(to_string(report.verdict))}};
  if (report.mode == "slocc") {
    out["window"] = report.window ? to_json(*report.window) : Json(nullptr);
    out["log_epsilon_ab"] = report.log_epsilon_ab ? json_number(*report.log_epsilon_ab) : Json(nullptr);
    out["log_epsilon_ba"] = report.log_epsilon_ba ? json_number(*report.log_epsilon_ba) : Json(nullptr);
    out["forward"] = report.forward ? to_json(*report.forward) : Json(nullptr);
    out["backward"] = report.backward ? to_json(*report.backward) : Json(nullptr);
    out["targets"] = report.targets ? to_json(*report.targets) : Json(nullptr);
    out["certificate"] = report.witnesses ? to_json(*report.witnesses) : Json(nullptr);
  }
  if (report.probability_ab) out["probability_ab"] = json_number(*report.probability_ab);
  if (report.probability_ba) out["probability_ba"] = json_number(*report.probability_ba);
  return out;
}

Json to_json(const MonotoneEstimate& estimate) {
  Json per_r = Json::array();
  for (const auto& s : estimate.per_r) {
    per_r.push_back({{"r", json_number(s.r)},
                     {"trend", std::string(to_string(s.trend))},
                     {"liminf_zero", std::string(to_string(s.liminf_zero))},
                     {"limsup_finite", std::string(to_string(s.limsup_finite))},
                     {"stats", s.stats ? to_json(*s.stats) : Json(nullptr)},
                     {"targets", s.targets ? to_json(*s.targets) : Json(nullptr)}});
  }
  Json band = Json::array();
  for (double r : estimate.undecided_band) band.push_back(json_number(r));
  Json order = Json::array();
  for (const auto& c : estimate.family_order) {
    order.push_back({{"r_low", json_number(c.r_low)},
                     {"r_high", json_number(c.r_high)},
                     {"verdict", std::string(to_string(c.verdict))}});
  }
  return {{"r_min", json_number(estimate.r_min)},
          {"r_max", json_number(estimate.r_max)},
          {"r_minus", json_number(estimate.r_minus)},
          {"r_plus", json_number(estimate.r_plus)},
          {"window", estimate.window ? to_json(*estimate.window) : Json(nullptr)},
          {"per_r", per_r},
          {"undecided_band", band},
          {"family_order", order}};
}

std::string canonical_dump(const Json& value) {
  std::string out;
  dump(value, 0, out);
  out += '\n';
  return out;
}

}  // namespace entorder
