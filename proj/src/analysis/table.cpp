#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "dormant/analysis/analysis.hpp"
#include "dormant/errors.hpp"
#include "dormant/exact/number_theory.hpp"
#include "dormant/verlinde/verlinde.hpp"

namespace dormant::analysis {

namespace {

std::string opt_str(const std::optional<BigRational>& v) { return v ? v->to_string() : ""; }

GridRow compute_cell(std::int64_t p, std::int64_t r, std::int64_t g,
                     const oper::EvalOptions& opts) {
  GridRow row;
  row.p = p;
  row.r = r;
  row.g = g;
  if (r < 2 || g < 2) {
    row.skip_reason = "invalid";
    row.skip_detail = "need r >= 2 and g >= 2";
    return row;
  }
  if (!exact::is_prime(p)) {
    row.skip_reason = "non_prime";
    row.skip_detail = "p=" + std::to_string(p) + " is not prime";
    return row;
  }
  const std::int64_t c = oper::oper_threshold(r, g);
  if (p <= c) {
    row.skip_reason = "threshold";
    row.skip_detail = "p <= C(r,g)=" + std::to_string(c);
    return row;
  }
  if (p <= r) {
    row.skip_reason = "r_ge_p";
    row.skip_detail = "need p > r";
    return row;
  }
  row.dormant_degree = oper::dormant_degree(p, r, g, opts).value;
  row.sl_degree = *row.dormant_degree *
                  BigRational(exact::pow(exact::BigInt(r), static_cast<unsigned long>(2 * g)));
  row.verlinde_conjectural = r != 2;
  try {
    const exact::BigInt dim = r == 2 ? verlinde::verlinde_dim_fusion(p - r, g)
                                     : verlinde::verlinde_dim_trig(r, p - r, g, opts.precision_bits);
    const BigRational rhs(dim, exact::pow(exact::BigInt(r), static_cast<unsigned long>(g)));
    row.verlinde_verdict = rhs == *row.dormant_degree ? "equal" : "not_equal";
  } catch (const PrecisionError&) {
    row.verlinde_verdict = "error";
  }
  return row;
}

std::string to_json(const std::vector<GridRow>& rows) {
  nlohmann::ordered_json out;
  out["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    j["g"] = row.g;
    j["r"] = row.r;
    j["p"] = row.p;
    if (row.skip_reason.empty()) {
      j["dormant_degree"] = opt_str(row.dormant_degree);
      j["sl_degree"] = opt_str(row.sl_degree);
      j["verlinde"] = row.verlinde_verdict;
      j["conjectural"] = row.verlinde_conjectural;
    } else {
      j["skipped"] = {{"reason", row.skip_reason}, {"detail", row.skip_detail}};
    }
    out["rows"].push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string to_csv(const std::vector<GridRow>& rows) {
  std::ostringstream os;
  os << "g,r,p,dormant_degree,sl_degree,verlinde,conjectural,skip_reason\n";
  for (const auto& row : rows) {
    os << row.g << ',' << row.r << ',' << row.p << ',' << opt_str(row.dormant_degree) << ','
       << opt_str(row.sl_degree) << ',' << row.verlinde_verdict << ','
       << (row.skip_reason.empty() ? (row.verlinde_conjectural ? "true" : "false") : "") << ','
       << row.skip_reason << '\n';
  }
  return os.str();
}

std::string to_markdown(const std::vector<GridRow>& rows) {
  std::ostringstream os;
  os << "| g | r | p | dormant degree | SL degree | Verlinde | note |\n";
  os << "|---|---|---|---|---|---|---|\n";
  for (const auto& row : rows) {
    os << "| " << row.g << " | " << row.r << " | " << row.p << " | ";
    if (row.skip_reason.empty()) {
      os << opt_str(row.dormant_degree) << " | " << opt_str(row.sl_degree) << " | "
         << row.verlinde_verdict << " | " << (row.verlinde_conjectural ? "conjectural" : "")
         << " |\n";
    } else {
      os << "- | - | - | skipped: " << row.skip_reason << " (" << row.skip_detail << ") |\n";
    }
  }
  return os.str();
}

}  // namespace

std::string GridReport::serialize() const {
  switch (format) {
    case TableFormat::json: return to_json(rows);
    case TableFormat::csv: return to_csv(rows);
    case TableFormat::markdown: return to_markdown(rows);
  }
  return {};
}

GridReport generate_table(const std::vector<std::int64_t>& g_range,
                          const std::vector<std::int64_t>& r_range,
                          const std::vector<std::int64_t>& p_range, TableFormat format,
                          const oper::EvalOptions& opts) {
  auto sorted_unique = [](std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  GridReport report;
  report.format = format;
  for (auto g : sorted_unique(g_range))
    for (auto r : sorted_unique(r_range))
      for (auto p : sorted_unique(p_range)) report.rows.push_back(compute_cell(p, r, g, opts));
  return report;
}

}  // namespace dormant::analysis
