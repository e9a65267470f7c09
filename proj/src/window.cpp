#include <json.hpp>

#include "toeplitz/common.hpp"

namespace toeplitz {

std::string PartialWindow::to_text() const {
  return "offset=" + std::to_string(offset) + "\n" + cells + "\n";
}

std::string PartialWindow::to_json() const {
  nlohmann::ordered_json j;
  j["offset"] = offset;
  j["cells"] = cells;
  return j.dump();
}

static void check_cells(const std::string& cells) {
  if (cells.empty()) fail(Err::BadInput, "window must have length >= 1");
  for (char c : cells)
    if (!is_cell(c))
      fail(Err::BadInput, std::string("bad cell character '") + c + "'");
}

PartialWindow PartialWindow::from_text(const std::string& text) {
  auto nl = text.find('\n');
  if (nl == std::string::npos || text.compare(0, 7, "offset=") != 0)
    fail(Err::BadInput, "window text must start with an offset= line");
  PartialWindow w;
  w.offset = std::stoll(text.substr(7, nl - 7));
  std::string rest = text.substr(nl + 1);
  while (!rest.empty() && (rest.back() == '\n' || rest.back() == '\r'))
    rest.pop_back();
  w.cells = rest;
  check_cells(w.cells);
  return w;
}

PartialWindow PartialWindow::from_json(const std::string& json) {
  auto j = nlohmann::json::parse(json);
  PartialWindow w;
  w.offset = j.at("offset").get<i64>();
  w.cells = j.at("cells").get<std::string>();
  check_cells(w.cells);
  return w;
}

}  // namespace toeplitz
