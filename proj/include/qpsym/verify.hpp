#ifndef QPSYM_VERIFY_HPP
#define QPSYM_VERIFY_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "qpsym/gen.hpp"

namespace qpsym {

struct Failure {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::string check;
  std::string message;
  std::string expected;
  std::string actual;
  std::string rerun;
  nlohmann::json inputs;
};

// Outcome of one verification suite. Wall time is reported in the text
// rendering only; the JSON form is a pure function of (suite, config) so
// repeated runs are byte-identical.
struct VerifyReport {
  std::string suite;
  GenConfig cfg;
  std::uint64_t trials = 0;
  std::vector<Failure> failures;
  std::vector<std::string> findings;
  double wall_seconds = 0.0;

  bool passed() const { return failures.empty(); }
  nlohmann::json to_json() const;
  std::string text() const;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Runs one named suite. Throws std::invalid_argument for unknown names.
VerifyReport run_suite(const std::string& name, const GenConfig& cfg);

std::vector<VerifyReport> run_all(const GenConfig& cfg);
nlohmann::json reports_to_json(const std::vector<VerifyReport>& reports);

}  // namespace qpsym

#endif
