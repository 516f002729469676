#include <fstream>
#include <iostream>

#include "tadic/cli/run.hpp"

int main(int argc, char** argv) {
  tadic::RunConfig cfg;
  try {
    const int code = tadic::parse_args(argc, argv, cfg);
    if (code >= 0) return code;
    const auto doc = tadic::run(cfg);
    const std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out);
      if (!out) {
        std::cerr << "error: cannot write " << cfg.out << "\n";
        return 1;
      }
      out << text;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return tadic::exit_code_for(e);
  }
}
