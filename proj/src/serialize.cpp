#include "berezin/serialize.hpp"

#include <fstream>

namespace berezin {

namespace {

const std::vector<std::pair<OpTag, const char*>> kTagNames = {
    {kTagNormal, "normal_by_construction"},
    {kTagInvertible, "invertible_by_construction"},
    {kTagShift, "shift_compression"},
    {kTagRankOne, "rank_one_model"},
};

}  // namespace

nlohmann::json operator_to_json(const OperatorMatrix& a) {
  nlohmann::json j;
  j["space"] = {{"kind", to_string(a.space.kind)},
                {"dim", a.space.dim},
                {"r_max", a.space.r_max}};
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < a.entries.rows(); ++i)
    for (int k = 0; k < a.entries.cols(); ++k)
      entries.push_back({a.entries(i, k).real(), a.entries(i, k).imag()});
  j["entries"] = std::move(entries);
  nlohmann::json tags = nlohmann::json::array();
  for (const auto& [tag, name] : kTagNames)
    if (a.tags & tag) tags.push_back(name);
  j["tags"] = std::move(tags);
  return j;
}

OperatorMatrix operator_from_json(const nlohmann::json& j) {
  const auto& sp = j.at("space");
  const SpaceSpec space = make_space(space_kind_from_string(sp.at("kind").get<std::string>()),
                                     sp.at("dim").get<int>(),
                                     sp.value("r_max", 0.995));
  const auto& entries = j.at("entries");
  const int n = space.dim;
  if (static_cast<int>(entries.size()) != n * n)
    throw UsageError("operator_from_json: expected " + std::to_string(n * n) +
                     " entries, got " + std::to_string(entries.size()));
  Eigen::MatrixXcd m(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k, ++idx)
      m(i, k) = Complex(entries[idx][0].get<double>(), entries[idx][1].get<double>());
  unsigned tags = 0;
  for (const auto& t : j.value("tags", nlohmann::json::array())) {
    const std::string name = t.get<std::string>();
    bool known = false;
    for (const auto& [tag, tag_name] : kTagNames)
      if (name == tag_name) {
        tags |= tag;
        known = true;
      }
    if (!known) throw UsageError("operator_from_json: unknown tag '" + name + "'");
  }
  return OperatorMatrix{space, std::move(m), tags};
}

void save_operator(const OperatorMatrix& a, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  os << operator_to_json(a).dump(2) << '\n';
  if (!os) throw IoError("write failed: " + path.string());
}

OperatorMatrix load_operator(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open for reading: " + path.string());
  nlohmann::json j;
  is >> j;
  return operator_from_json(j);
}

nlohmann::json report_to_json(const InequalityReport& rep) {
  nlohmann::json j;
  j["check_id"] = rep.check_id;
  j["seed"] = rep.seed;
  nlohmann::json hyps = nlohmann::json::array();
  for (const Hypothesis& h : rep.hypotheses)
    hyps.push_back({{"name", h.name},
                    {"value", h.value},
                    {"satisfied", h.satisfied},
                    {"certification", to_string(h.cert)}});
  j["hypotheses"] = std::move(hyps);
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["slack"] = rep.slack;
  j["tol"] = rep.tol;
  j["pass"] = rep.pass;
  j["vacuous"] = rep.vacuous;
  if (!rep.detail.empty()) j["detail"] = rep.detail;
  if (!rep.warnings.empty()) j["warnings"] = rep.warnings;
  j["instance"] = {{"A", rep.instance_a.empty() ? nlohmann::json() : nlohmann::json(rep.instance_a)},
                   {"B", rep.instance_b.empty() ? nlohmann::json() : nlohmann::json(rep.instance_b)}};
  return j;
}

}  // namespace berezin
