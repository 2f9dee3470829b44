#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lenslab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Check and construct lens squares, spans and proxy pullbacks of finite categories"};
  std::vector<std::string> files;
  bool json = false;
  app.add_option("-w,--workspace", files, "Workspace file to load (repeatable)")
      ->allow_extra_args(false);
  app.add_flag("--json", json, "Print the machine-readable record instead of text");
  app.prefix_command();
  app.footer("Commands: validate, check, construct, verify, gen (see README)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  std::vector<std::string> command = app.remaining();
  if (command.empty()) {
    std::cerr << app.help();
    return 2;
  }

  lenslab::Workspace ws;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << path << "\n";
      return 2;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
      lenslab::load(ws, text.str());
    } catch (const lenslab::Error& e) {
      std::cerr << path << ": " << e.what() << "\n";
      return 2;
    }
  }

  lenslab::Outcome out = lenslab::execute(ws, command);
  if (json) {
    lenslab::Json record = out.record;
    if (out.document) record["document"] = lenslab::to_json(*out.document);
    std::cout << lenslab::print(record);
  } else {
    (out.exit_code == 2 ? std::cerr : std::cout) << out.text;
  }
  return out.exit_code;
}
