#include "biharm/report.hpp"

#include <cstdio>
#include <sstream>

namespace biharm {

namespace {

nlohmann::json vec(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

nlohmann::json report_to_json(const BiharmonicReport& report, std::optional<Verdict> expected) {
  using nlohmann::json;
  json j;
  j["schema"] = kReportSchema;
  j["ambient"] = report.ambient;
  j["dimension"] = report.m;
  j["settings"] = {{"samples", report.samples_requested},
                   {"seed", report.seed},
                   {"step", report.options.fd.step},
                   {"tol_res", report.options.tol_res},
                   {"tol_h", report.options.tol_h}};
  j["verdict"] = std::string(to_string(report.verdict));
  if (expected) {
    j["expected"] = std::string(to_string(*expected));
    j["matches"] = *expected == report.verdict;
  } else {
    j["expected"] = nullptr;
    j["matches"] = nullptr;
  }
  j["aggregate"] = {{"valid_samples", report.valid_count},
                    {"max_normal_residual", report.max_normal},
                    {"max_tangential_residual", report.max_tangential},
                    {"max_normal_residual_raw", report.max_normal_raw},
                    {"max_tangential_residual_raw", report.max_tangential_raw},
                    {"max_H", report.max_H},
                    {"min_H", report.min_H},
                    {"H_sq_spread", report.H_sq_spread},
                    {"max_pseudo_umbilical", report.max_pseudo_umbilical},
                    {"max_grad_H_sq", report.max_grad_H_sq}};
  json samples = json::array();
  for (const auto& s : report.samples) {
    json r;
    r["u"] = vec(s.u);
    r["valid"] = s.valid;
    if (!s.valid) {
      r["error"] = s.error;
      samples.push_back(std::move(r));
      continue;
    }
    r["normal"] = vec(s.normal);
    r["normal_norm"] = s.normal_norm;
    r["tangential"] = vec(s.tangential);
    r["tangential_norm"] = s.tangential_norm;
    r["scale"] = s.scale;
    r["normalized"] = {{"normal", s.normal_normalized}, {"tangential", s.tangential_normalized}};
    r["H_norm"] = s.H_norm;
    r["H_length"] = s.H_length;
    r["H_sq"] = s.H_sq;
    r["grad_H_sq_norm"] = s.grad_H_sq_norm;
    r["pseudo_umbilical"] = s.pseudo_umbilical;
    samples.push_back(std::move(r));
  }
  j["samples"] = std::move(samples);
  j["diagnostics"] = report.diagnostics;
  return j;
}

std::string summarize(const BiharmonicReport& report) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "ambient %s, m=%d, %d/%d samples valid\n"
                "max |H| %.6g, <H,H> spread %.3g\n"
                "max residual: normal %.3e, tangential %.3e (normalized; tol %.1e)\n"
                "verdict: %s\n",
                report.ambient.c_str(), report.m, report.valid_count, static_cast<int>(report.samples.size()),
                report.max_H, report.H_sq_spread, report.max_normal, report.max_tangential, report.options.tol_res,
                std::string(to_string(report.verdict)).c_str());
  std::string out = buf;
  for (const auto& d : report.diagnostics) out += "note: " + d + "\n";
  return out;
}

}  // namespace biharm
