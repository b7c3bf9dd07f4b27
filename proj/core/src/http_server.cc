// Copyright 2026 The Emoint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <httplib.h>

#include "emoint/annotation_service.h"

namespace emoint {

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const char* kind,
                const std::string& message) {
  send_json(res, status, {{"error", kind}, {"message", message}});
}

std::string bearer_token(const httplib::Request& req) {
  const std::string header = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.compare(0, kPrefix.size(), kPrefix) != 0) {
    throw UnauthorizedError("missing bearer token");
  }
  return header.substr(kPrefix.size());
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON body: ") + e.what());
  }
}

std::string string_field(const Json& body, const char* name) {
  if (!body.is_object() || !body.contains(name) || !body[name].is_string()) {
    throw InvalidArgument(std::string("field '") + name +
                          "' must be a string");
  }
  return body[name].get<std::string>();
}

// Maps the error taxonomy onto status codes.
template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const UnauthorizedError& e) {
      send_error(res, 401, "unauthorized", e.what());
    } catch (const LockedOutError& e) {
      send_error(res, 403, "locked_out", e.what());
    } catch (const UnknownTaskError& e) {
      send_error(res, 404, "unknown_task", e.what());
    } catch (const ProtocolError& e) {
      send_error(res, 409, "protocol", e.what());
    } catch (const InvalidResponseError& e) {
      send_error(res, 400, "validation", e.what());
    } catch (const InvalidArgument& e) {
      send_error(res, 400, "validation", e.what());
    } catch (const ParseError& e) {
      send_error(res, 400, "validation", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

}  // namespace

struct HttpServer::Impl {
  AnnotationService& service;
  ServerOptions options;
  httplib::Server server;

  Impl(AnnotationService& s, ServerOptions o)
      : service(s), options(std::move(o)) {}

  void require_admin(const httplib::Request& req) const {
    if (options.admin_token.empty()) return;
    if (bearer_token(req) != options.admin_token) {
      throw UnauthorizedError("admin token required");
    }
  }

  void install_routes() {
    server.Post("/api/session", guarded([this](const httplib::Request& req,
                                               httplib::Response& res) {
      const std::string annotator = string_field(parse_body(req), "annotator_id");
      const std::string token = service.create_session(annotator);
      send_json(res, 200, {{"token", token}, {"annotator_id", annotator}});
    }));

    server.Get(R"(/api/task/([^/]+)/tuple)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 const std::string task_id = req.matches[1];
                 const std::string annotator =
                     service.annotator_for_token(bearer_token(req));
                 const NextResult next = service.next_assignment(task_id, annotator);
                 if (!next.assignment) {
                   send_json(res, 200, {{"status", "exhausted"},
                                        {"contributions", next.contributions}});
                   return;
                 }
                 Json items = Json::array();
                 for (const std::string& id : next.assignment->display_order) {
                   items.push_back(
                       {{"id", id}, {"text", service.item_text(task_id, id)}});
                 }
                 send_json(res, 200,
                           {{"status", "ok"},
                            {"tuple_id", next.assignment->tuple_id},
                            {"items", items},
                            {"question_html",
                             question_html(service.task_emotion(task_id))}});
               }));

    server.Post(R"(/api/task/([^/]+)/response)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const std::string task_id = req.matches[1];
                  const std::string annotator =
                      service.annotator_for_token(bearer_token(req));
                  const Json body = parse_body(req);
                  const Verdict v = service.submit_response(
                      task_id, annotator, string_field(body, "tuple_id"),
                      string_field(body, "best"), string_field(body, "worst"));
                  send_json(res, 200, verdict_to_json(v));
                }));

    server.Get(R"(/api/task/([^/]+)/status)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 send_json(res, 200, service.status(req.matches[1]));
               }));

    server.Post("/api/task", guarded([this](const httplib::Request& req,
                                            httplib::Response& res) {
      require_admin(req);
      std::random_device rd;
      const std::uint64_t seed =
          (static_cast<std::uint64_t>(rd()) << 32) | rd();
      const std::string id =
          service.create_task(task_definition_from_request(parse_body(req), seed));
      send_json(res, 201, {{"task_id", id}});
    }));

    server.Get(R"(/api/task/([^/]+)/export)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 require_admin(req);
                 res.status = 200;
                 res.set_content(service.export_csv(req.matches[1]), "text/csv");
               }));

    if (!options.static_dir.empty()) {
      server.set_mount_point("/", options.static_dir);
    }
  }
};

HttpServer::HttpServer(AnnotationService& service, ServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {
  impl_->install_routes();
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int HttpServer::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace emoint
