#include "cohen/report_io.hpp"

#include <iomanip>
#include <sstream>

namespace cohen {

namespace {

std::ostringstream precise_stream() {
  std::ostringstream os;
  os << std::setprecision(17);
  return os;
}

}  // namespace

nlohmann::json to_json(const ExpansionReport& report) {
  nlohmann::json checkpoints = nlohmann::json::array();
  for (const auto& c : report.checkpoints) {
    checkpoints.push_back(
        {{"Q", c.cutoff}, {"partial_sum", c.partial_sum}, {"abs_error", c.abs_error}});
  }
  return {{"schema", kReportSchema},
          {"kind", "expansion"},
          {"s", report.s},
          {"k", report.k},
          {"n", report.n},
          {"target", report.target},
          {"partial_sums", checkpoints},
          {"final_abs_error", report.final_abs_error},
          {"tolerance", report.tolerance},
          {"converged", report.converged}};
}

nlohmann::json to_json(const AsymptoticReport& report) {
  nlohmann::json lhs = nlohmann::json::array();
  for (const auto& c : report.lhs_checkpoints) lhs.push_back({{"N", c.limit}, {"lhs", c.sum}});
  nlohmann::json ratios = nlohmann::json::array();
  for (const auto& r : report.ratios) ratios.push_back({{"N", r.limit}, {"ratio", r.ratio}});
  return {{"schema", kReportSchema},
          {"kind", "asymptotic"},
          {"s", report.s},
          {"a", report.a},
          {"b", report.b},
          {"h", report.h},
          {"m", report.m},
          {"k", report.k},
          {"euler_product",
           {{"prime_cutoff", report.product.prime_cutoff},
            {"dividing_factor", report.product.dividing_factor},
            {"nondividing_factor", report.product.nondividing_factor}}},
          {"rhs", report.rhs.value},
          {"rhs_tail_bound", report.rhs.tail_bound},
          {"lhs_checkpoints", lhs},
          {"ratios", ratios},
          {"tolerance", report.tolerance},
          {"converged", report.converged}};
}

std::string to_csv(const ExpansionReport& report) {
  auto os = precise_stream();
  os << "Q,partial_sum,abs_error\n";
  for (const auto& c : report.checkpoints) {
    os << c.cutoff << ',' << c.partial_sum << ',' << c.abs_error << '\n';
  }
  return os.str();
}

std::string to_csv(const AsymptoticReport& report) {
  auto os = precise_stream();
  os << "N,lhs,N_rhs,ratio\n";
  for (std::size_t i = 0; i < report.lhs_checkpoints.size(); ++i) {
    const auto& c = report.lhs_checkpoints[i];
    os << c.limit << ',' << c.sum << ','
       << static_cast<double>(c.limit) * report.rhs.value << ','
       << report.ratios[i].ratio << '\n';
  }
  return os.str();
}

std::string plot_data(const AsymptoticReport& report) {
  auto os = precise_stream();
  for (const auto& r : report.ratios) os << r.limit << ' ' << r.ratio << '\n';
  return os.str();
}

}  // namespace cohen
