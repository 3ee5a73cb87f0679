#include "hypercalc/report_json.hpp"

#include <charconv>
#include <cmath>

namespace hypercalc::report {

namespace {

std::string shortest(double d) {
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "+inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

Json relation_name(Relation r) { return std::string(to_string(r)); }

}  // namespace

Json to_json(const Classification& c) {
  return Json{{"tag", std::string(to_string(c.tag))}, {"sign", std::string(to_string(c.sign))}};
}

Json to_json(const ExtendedValue& v) { return v.to_string(); }

Json to_json(const ConvergenceReport& r) {
  Json j;
  j["bounded"] = r.bounded;
  j["cauchy"] = r.cauchy;
  Json pts = Json::array();
  for (const auto& p : r.limit_points) pts.push_back(p.to_string());
  j["limit_points"] = pts;
  j["liminf"] = r.liminf.to_string();
  j["limsup"] = r.limsup.to_string();
  if (r.converges_to) j["limit"] = r.converges_to->to_string();
  else if (r.diverges_to) j["limit"] = r.diverges_to->to_string();
  else j["limit"] = nullptr;
  j["even_limit"] = r.even_limit.to_string();
  j["odd_limit"] = r.odd_limit.to_string();
  return j;
}

Json to_json(const FrechetVerdict& v) {
  Json j;
  j["relation"] = relation_name(v.relation);
  j["exception_bound"] = v.exception_bound;
  j["even"] = relation_name(v.even);
  j["odd"] = relation_name(v.odd);
  return j;
}

Json to_json(const SeriesReport& r) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["method"] = r.method;
  if (r.value) j["value"] = r.value->to_string();
  if (r.diverges_to) j["diverges_to"] = r.diverges_to->to_string();
  if (r.partial_sum) j["partial_sum"] = r.partial_sum->to_string();
  if (r.block_floor) j["block_floor"] = r.block_floor->to_string();
  if (r.block_ratio) j["block_ratio"] = r.block_ratio->to_string();
  return j;
}

Json to_json(const IntegralResult& r) {
  Json j;
  j["value"] = r.exact_value ? r.exact_value->to_string() : shortest(r.value);
  j["tag"] = std::string(to_string(r.tag));
  j["gap"] = r.exact_gap ? r.exact_gap->to_string() : shortest(r.gap);
  j["cells"] = r.cells;
  j["mode"] = r.mode;
  j["certificate"] = r.certificate;
  return j;
}

Json to_json(const LimitValue& v) { return v.to_string(); }

Json to_json(const Scalar& s) { return s.to_string(); }

Json to_json(const AdmissibilityReport& r) {
  Json j;
  Json levels = Json::array();
  for (const auto& lv : r.levels)
    levels.push_back({{"delta", lv.delta.to_string()},
                      {"max_residual", lv.max_residual.to_string()},
                      {"nonzero_cells", lv.nonzero_cells},
                      {"rectangular", lv.rectangular}});
  j["levels"] = levels;
  j["residual_halving"] = r.residual_halving;
  j["rectangular"] = r.rectangular;
  j["total"] = r.total.to_string();
  j["integral"] = to_json(r.integral);
  j["matches_integral"] = r.matches_integral;
  return j;
}

std::string dump(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace); }

}  // namespace hypercalc::report
