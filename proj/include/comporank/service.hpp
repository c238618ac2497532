#pragma once

#include <optional>
#include <string>

#include "comporank/catalog.hpp"
#include "comporank/random_index.hpp"

namespace httplib {
class Server;
}

namespace comporank {

struct HttpResult {
  int status = 200;
  std::string body;
};

/// Stateless JSON API. The only shared state is the catalog loaded at
/// startup, which is never modified; every handler is safe to call from
/// concurrent requests.
class Service {
 public:
  explicit Service(std::optional<Catalog> catalog, RandomIndex ri = RandomIndex::standard());

  HttpResult post_weights(const std::string& body) const;
  HttpResult post_rank(const std::string& body) const;
  HttpResult post_sensitivity(const std::string& body) const;
  HttpResult get_catalog() const;

  /// Registers the /api routes on `server`.
  void mount(httplib::Server& server) const;

 private:
  std::optional<Catalog> catalog_;
  RandomIndex ri_;
};

}  // namespace comporank
