#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "common.hpp"

int main(int argc, char** argv) {
  CLI::App app{"level-set geometry of Hölder functions on self-similar sets"};
  app.require_subcommand(1);

  holderlab::cli::registerBounds(app);
  holderlab::cli::registerSier(app);
  holderlab::cli::registerPhi(app);
  holderlab::cli::registerCross(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const holderlab::cli::AuditBreach& e) {
    std::cerr << "audit failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
