#pragma once

// Shared CLI plumbing: ordered JSON (stable key order in reports), the
// path-or-stdout output sink, and the exit-code-2 audit failure path.

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace CLI {
class App;
}

namespace holderlab::cli {

using Json = nlohmann::ordered_json;

// the command ran to completion but the checked property is false
struct AuditBreach : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// file sink when a path is given (binary mode keeps LF endings), else stdout
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void registerBounds(CLI::App& app);
void registerSier(CLI::App& app);
void registerPhi(CLI::App& app);
void registerCross(CLI::App& app);

}  // namespace holderlab::cli
