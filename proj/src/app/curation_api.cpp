#include "jitlab/app/curation_api.hpp"

#include <httplib.h>

#include "jitlab/core/error.hpp"

namespace jitlab::app {

using nlohmann::json;

namespace {

ApiResponse error(int status, const std::string& message) { return {status, {{"error", message}}}; }

}  // namespace

json catalog_json() {
  json sections = json::array();
  for (auto s : {curation::RuleSection::kMislabeled, curation::RuleSection::kBug, curation::RuleSection::kExtrinsic,
                 curation::RuleSection::kIntrinsic}) {
    json rules = json::array();
    for (const auto& r : curation::RuleCatalog::standard().rules()) {
      if (r.section == s) rules.push_back({{"rule_id", r.id}, {"text", r.text}});
    }
    sections.push_back({{"section", curation::to_string(s)},
                        {"heading", curation::RuleCatalog::heading(s)},
                        {"step", s == curation::RuleSection::kMislabeled || s == curation::RuleSection::kBug ? 1 : 2},
                        {"rules", rules}});
  }
  return {{"sections", sections}};
}

CurationService::CurationService(curation::LabelStore& store, std::vector<szz::IssueRecord> issues,
                                 std::map<std::string, std::vector<std::string>> bfcs_by_issue, DiffProvider diff)
    : store_(store), issues_(std::move(issues)), bfcs_(std::move(bfcs_by_issue)), diff_(std::move(diff)) {
  for (std::size_t i = 0; i < issues_.size(); ++i) issue_index_[issues_[i].issue_id] = i;
}

json CurationService::task_json(const szz::IssueRecord& issue, const std::string& rater, bool disputed) const {
  json bfcs = json::array();
  if (auto it = bfcs_.find(issue.issue_id); it != bfcs_.end()) {
    for (const auto& id : it->second) {
      std::string diff;
      if (diff_) {
        try {
          diff = diff_(id);
        } catch (const std::exception& e) {
          diff = std::string("(diff unavailable: ") + e.what() + ")";
        }
      }
      bfcs.push_back({{"commit_id", id}, {"diff", diff}});
    }
  }
  json own = nullptr;
  if (auto l = store_.label(issue.issue_id, rater)) own = curation::to_json(*l);
  json others = json::array();
  if (disputed) {
    for (const auto& l : store_.labels_for(issue.issue_id)) others.push_back(curation::to_json(l));
  }
  return {{"issue_id", issue.issue_id},
          {"title", issue.title},
          {"description", issue.description},
          {"reporter", issue.reporter},
          {"reported_time", issue.reported_time ? json(format_timestamp(*issue.reported_time)) : json(nullptr)},
          {"bfcs", bfcs},
          {"rule_catalog", catalog_json()},
          {"own_label", own},
          {"disputed", disputed},
          {"labels", others}};
}

ApiResponse CurationService::next_task(const std::string& rater) const {
  if (rater.empty()) return error(400, "query parameter 'rater' is required");
  for (const auto& issue : issues_) {
    if (!store_.label(issue.issue_id, rater)) return {200, {{"task", task_json(issue, rater, false)}}};
  }
  for (const auto& d : store_.disagreements()) {
    const bool involved =
        std::any_of(d.labels.begin(), d.labels.end(), [&](const auto& l) { return l.rater == rater; });
    auto it = issue_index_.find(d.issue_id);
    if (involved && it != issue_index_.end()) {
      return {200, {{"task", task_json(issues_[it->second], rater, true)}}};
    }
  }
  return {200, {{"task", nullptr}}};
}

ApiResponse CurationService::post_label(const std::string& body, const std::string& rater_header) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception&) {
    return error(400, "request body is not JSON");
  }
  try {
    std::string rater = j.value("rater", rater_header);
    if (!rater_header.empty() && rater != rater_header) return error(400, "rater in body and header differ");
    if (rater.empty()) return error(400, "rater is required");
    const auto issue_id = j.at("issue_id").get<std::string>();
    if (!store_.issues().count(issue_id)) return error(404, "unknown issue '" + issue_id + "'");
    const auto verdict = curation::verdict_from_string(j.at("verdict").get<std::string>());
    const auto rule_id = j.at("rule_id").get<std::string>();
    const auto rationale = j.value("rationale", "");
    std::optional<int> expected;
    if (j.contains("revision") && !j.at("revision").is_null()) expected = j.at("revision").get<int>();
    if (!expected) {
      // A first label is expected at revision 0; an overwrite must say
      // which revision it replaces.
      if (auto existing = store_.label(issue_id, rater)) {
        return {409,
                {{"error", "label exists; resend with its revision to overwrite"},
                 {"current", curation::to_json(*existing)}}};
      }
      expected = 0;
    }
    const auto rec = store_.record_label(issue_id, rater, verdict, rule_id, rationale, expected);
    return {201, {{"record", curation::to_json(rec)}}};
  } catch (const ConflictError& e) {
    return error(409, e.what());
  } catch (const DataError& e) {
    return error(400, e.what());
  } catch (const json::exception& e) {
    return error(400, std::string("malformed label: ") + e.what());
  }
}

ApiResponse CurationService::agreement() const {
  try {
    auto body = curation::to_json(store_.agreement_report());
    body["computable"] = true;
    return {200, body};
  } catch (const DataError& e) {
    return {200,
            {{"alpha_bug_vs_not", nullptr},
             {"alpha_intrinsic_vs_extrinsic", nullptr},
             {"disagreements", json::array()},
             {"coverage", 0.0},
             {"double_rated", 0},
             {"both_bug", 0},
             {"computable", false},
             {"reason", e.what()}}};
  }
}

ApiResponse CurationService::disagreements() const {
  json out = json::array();
  for (const auto& d : store_.disagreements()) {
    json labels = json::array();
    for (const auto& l : d.labels) labels.push_back(curation::to_json(l));
    auto it = issue_index_.find(d.issue_id);
    out.push_back({{"issue_id", d.issue_id},
                   {"title", it == issue_index_.end() ? "" : issues_[it->second].title},
                   {"labels", labels}});
  }
  return {200, {{"disagreements", out}}};
}

ApiResponse CurationService::progress() const {
  std::map<std::string, std::size_t> per_rater;
  std::map<std::string, std::size_t> per_issue;
  for (const auto& l : store_.labels()) {
    ++per_rater[l.rater];
    ++per_issue[l.issue_id];
  }
  std::size_t double_rated = 0;
  for (const auto& [_, n] : per_issue) double_rated += n >= 2 ? 1 : 0;
  return {200,
          {{"issues", issues_.size()},
           {"labeled", per_issue.size()},
           {"double_rated", double_rated},
           {"open_disagreements", store_.disagreements().size()},
           {"raters", per_rater}}};
}

ApiResponse CurationService::post_resolution(const std::string& body) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception&) {
    return error(400, "request body is not JSON");
  }
  try {
    const auto issue_id = j.at("issue_id").get<std::string>();
    if (!store_.issues().count(issue_id)) return error(404, "unknown issue '" + issue_id + "'");
    const auto r = store_.resolve(issue_id, curation::verdict_from_string(j.at("verdict").get<std::string>()),
                                  j.at("rule_id").get<std::string>(), j.value("rationale", ""),
                                  j.value("resolver", ""));
    return {201, {{"resolution", curation::to_json(r)}}};
  } catch (const DataError& e) {
    return error(400, e.what());
  } catch (const json::exception& e) {
    return error(400, std::string("malformed resolution: ") + e.what());
  }
}

ApiResponse CurationService::catalog() const { return {200, catalog_json()}; }

void register_routes(httplib::Server& server, CurationService& service) {
  auto reply = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get("/api/tasks/next", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    std::string rater = req.get_param_value("rater");
    if (rater.empty()) rater = req.get_header_value("X-Rater");
    reply(res, service.next_task(rater));
  });
  server.Post("/api/labels", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.post_label(req.body, req.get_header_value("X-Rater")));
  });
  server.Get("/api/agreement",
             [&service, reply](const httplib::Request&, httplib::Response& res) { reply(res, service.agreement()); });
  server.Get("/api/disagreements", [&service, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service.disagreements());
  });
  server.Get("/api/progress",
             [&service, reply](const httplib::Request&, httplib::Response& res) { reply(res, service.progress()); });
  server.Post("/api/resolutions", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.post_resolution(req.body));
  });
  server.Get("/api/catalog",
             [&service, reply](const httplib::Request&, httplib::Response& res) { reply(res, service.catalog()); });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(json{{"error", what}}.dump(), "application/json");
  });
}

void serve_curation_api(CurationService& service, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, service);
  if (!server.bind_to_port(host, port)) {
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  server.listen_after_bind();
}

}  // namespace jitlab::app
