#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "jitlab/curation/label_store.hpp"
#include "jitlab/szz/issue.hpp"

namespace httplib {
class Server;
}

namespace jitlab::app {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// Transport-free handlers behind the HTTP endpoints. Every write goes
// through exactly one LabelStore operation.
class CurationService {
 public:
  using DiffProvider = std::function<std::string(const std::string& commit_id)>;

  CurationService(curation::LabelStore& store, std::vector<szz::IssueRecord> issues,
                  std::map<std::string, std::vector<std::string>> bfcs_by_issue = {}, DiffProvider diff = {});

  // GET /api/tasks/next?rater=R: the first issue R has not labeled, else the
  // first unresolved disagreement R took part in; {"task": null} when done.
  ApiResponse next_task(const std::string& rater) const;
  // POST /api/labels. Overwriting an existing label requires the body to
  // quote its current "revision".
  ApiResponse post_label(const std::string& body, const std::string& rater_header = {});
  ApiResponse agreement() const;                               // GET /api/agreement
  ApiResponse disagreements() const;                           // GET /api/disagreements
  ApiResponse progress() const;                                // GET /api/progress
  ApiResponse post_resolution(const std::string& body);        // POST /api/resolutions
  ApiResponse catalog() const;                                 // GET /api/catalog

 private:
  nlohmann::json task_json(const szz::IssueRecord& issue, const std::string& rater, bool disputed) const;

  curation::LabelStore& store_;
  std::vector<szz::IssueRecord> issues_;
  std::map<std::string, std::size_t> issue_index_;
  std::map<std::string, std::vector<std::string>> bfcs_;
  DiffProvider diff_;
};

nlohmann::json catalog_json();

// Binds the service to `server` under /api. Responses are JSON; the rater
// may also be given in an X-Rater header.
void register_routes(httplib::Server& server, CurationService& service);

// Blocks until the server stops. Throws Error when the address cannot be
// bound.
void serve_curation_api(CurationService& service, const std::string& host, int port);

}  // namespace jitlab::app
