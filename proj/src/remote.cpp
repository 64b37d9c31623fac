// HTTP clients for the embedding and generation services.

#include <fmt/format.h>

#include <httplib.h>
#include <json.hpp>

#include "dsrl/error.hpp"
#include "dsrl/generators.hpp"
#include "dsrl/retrieval.hpp"

namespace dsrl {

namespace {

using json = nlohmann::json;

httplib::Client make_client(std::string_view endpoint) {
  httplib::Client client{std::string(endpoint)};
  if (!client.is_valid()) {
    throw Error(ErrorCategory::backend,
                fmt::format("invalid endpoint '{}'", endpoint));
  }
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(300, 0);
  return client;
}

json parse_reply(std::string_view endpoint, const char* path,
                 const httplib::Result& res) {
  if (!res) {
    throw Error(ErrorCategory::backend,
                fmt::format("{}{}: {}", endpoint, path,
                            httplib::to_string(res.error())));
  }
  if (res->status != 200) {
    throw Error(ErrorCategory::backend,
                fmt::format("{}{}: HTTP {}: {}", endpoint, path, res->status,
                            res->body));
  }
  try {
    return json::parse(res->body);
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::protocol,
                fmt::format("{}{}: response is not JSON: {}", endpoint, path,
                            e.what()));
  }
}

json post_json(std::string_view endpoint, const char* path, const json& body) {
  auto client = make_client(endpoint);
  return parse_reply(endpoint, path,
                     client.Post(path, body.dump(), "application/json"));
}

}  // namespace

RemoteEmbedder::RemoteEmbedder(std::string endpoint, std::size_t batch_limit)
    : endpoint_(std::move(endpoint)), batch_limit_(std::max<std::size_t>(1, batch_limit)) {}

std::pair<std::size_t, std::vector<EmbeddingVector>> RemoteEmbedder::request(
    std::span<const std::string> texts) const {
  json body = {{"texts", json::array()}};
  for (const std::string& t : texts) body["texts"].push_back(t);
  json reply = post_json(endpoint_, "/embed", body);

  auto fail = [&](const std::string& what) {
    throw Error(ErrorCategory::protocol,
                fmt::format("{}/embed: {}", endpoint_, what));
  };
  if (!reply.is_object() || !reply.contains("dimension") ||
      !reply.contains("vectors")) {
    fail("expected {\"dimension\", \"vectors\"}");
  }
  if (!reply["dimension"].is_number_integer() ||
      reply["dimension"].get<long long>() <= 0) {
    fail("'dimension' must be a positive integer");
  }
  const std::size_t dim = reply["dimension"].get<std::size_t>();
  const json& vectors = reply["vectors"];
  if (!vectors.is_array() || vectors.size() != texts.size()) {
    fail(fmt::format("expected {} vectors", texts.size()));
  }
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const json& v : vectors) {
    if (!v.is_array() || v.size() != dim) {
      fail(fmt::format("vector length differs from dimension {}", dim));
    }
    EmbeddingVector ev;
    ev.values.reserve(dim);
    for (const json& x : v) {
      if (!x.is_number()) fail("vector components must be numbers");
      ev.values.push_back(x.get<double>());
    }
    out.push_back(std::move(ev));
  }
  return {dim, std::move(out)};
}

std::size_t RemoteEmbedder::dimension() const {
  return request({}).first;
}

std::vector<EmbeddingVector> RemoteEmbedder::embed_batch(
    std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  std::optional<std::size_t> dim;
  for (std::size_t start = 0; start < texts.size(); start += batch_limit_) {
    auto chunk = texts.subspan(start, std::min(batch_limit_, texts.size() - start));
    auto [d, vectors] = request(chunk);
    if (dim && *dim != d) {
      throw Error(ErrorCategory::protocol,
                  fmt::format("{}/embed: dimension changed from {} to {}",
                              endpoint_, *dim, d));
    }
    dim = d;
    for (EmbeddingVector& v : vectors) out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::string> remote_generate(std::string_view endpoint,
                                         std::span<const std::string> inputs,
                                         std::optional<StylePrefix> prefix,
                                         std::size_t batch_size) {
  batch_size = std::max<std::size_t>(1, batch_size);
  json prefix_json = nullptr;
  if (prefix) {
    prefix_json = {
        {"inventory", std::string(to_string(prefix->inventory))},
        {"formalism", prefix->formalism == Formalism::dependency ? "dep-srl"
                                                                 : "span-srl"}};
  }

  std::vector<std::string> out;
  out.reserve(inputs.size());
  std::size_t batch_index = 0;
  for (std::size_t start = 0; start < inputs.size();
       start += batch_size, ++batch_index) {
    const std::size_t n = std::min(batch_size, inputs.size() - start);
    json body = {{"inputs", json::array()}, {"prefix", prefix_json}};
    for (std::size_t i = 0; i < n; ++i) body["inputs"].push_back(inputs[start + i]);

    json reply;
    try {
      reply = post_json(endpoint, "/generate", body);
    } catch (const Error& e) {
      throw Error(e.category(),
                  fmt::format("batch {} (inputs {}..{}): {}", batch_index,
                              start, start + n - 1, e.what()));
    }
    if (!reply.is_object() || !reply.contains("outputs") ||
        !reply["outputs"].is_array()) {
      throw Error(ErrorCategory::protocol,
                  fmt::format("batch {}: expected {{\"outputs\": [...]}}",
                              batch_index));
    }
    const json& outputs = reply["outputs"];
    if (outputs.size() != n) {
      throw Error(ErrorCategory::protocol,
                  fmt::format("batch {}: sent {} inputs, received {} outputs",
                              batch_index, n, outputs.size()));
    }
    for (const json& o : outputs) {
      if (!o.is_string()) {
        throw Error(ErrorCategory::protocol,
                    fmt::format("batch {}: outputs must be strings",
                                batch_index));
      }
      out.push_back(o.get<std::string>());
    }
  }
  return out;
}

std::string service_health(std::string_view endpoint) {
  auto client = make_client(endpoint);
  const json reply = parse_reply(endpoint, "/health", client.Get("/health"));
  if (!reply.is_object() || !reply.contains("status") ||
      !reply["status"].is_string()) {
    throw Error(ErrorCategory::protocol,
                fmt::format("{}/health: expected {{\"status\", \"mode\"}}", endpoint));
  }
  if (reply["status"] != "ok") {
    throw Error(ErrorCategory::backend,
                fmt::format("{}/health: status {}", endpoint, reply["status"].dump()));
  }
  return reply.contains("mode") && reply["mode"].is_string()
             ? reply["mode"].get<std::string>()
             : std::string();
}

}  // namespace dsrl
