#include "tricolor/io.hpp"

#include <fstream>
#include <sstream>

namespace tricolor {

namespace {

std::vector<long long> parse_line(const std::string& line, int line_no) {
  std::istringstream ls(line);
  std::vector<long long> values;
  long long x = 0;
  while (ls >> x) values.push_back(x);
  if (!ls.eof()) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected integers");
  }
  return values;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

RawInstance parse_instance_text(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  while (!lines.empty() && blank(lines.back())) lines.pop_back();
  if (lines.empty()) throw Error(ErrorCode::Parse, "empty instance");

  RawInstance raw;
  const auto head = parse_line(lines[0], 1);
  if (head.size() != 1) throw Error(ErrorCode::Parse, "line 1: expected a single integer n");
  raw.n = head[0];
  for (std::size_t i = 1; i < lines.size(); ++i) {
    raw.perms.push_back(parse_line(lines[i], static_cast<int>(i + 1)));
  }
  return raw;
}

RawInstance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance_text(in);
}

Instance read_instance(std::istream& in) { return validate_instance(parse_instance_text(in)); }

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  return read_instance(in);
}

std::string format_perms(int n, const std::vector<std::vector<int>>& perms) {
  std::string out = std::to_string(n) + "\n";
  for (const auto& p : perms) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(p[i]);
    }
    out += '\n';
  }
  return out;
}

std::string format_instance(const Instance& inst) {
  return format_perms(inst.n(), {inst.perm(1), inst.perm(2), inst.perm(3)});
}

nlohmann::ordered_json matching_to_json(const Matching& m) {
  nlohmann::ordered_json j;
  auto edges = nlohmann::ordered_json::array();
  for (const Edge& e : m.edges()) edges.push_back({e.u, e.color});
  j["edges"] = std::move(edges);
  const ColorCounts c = m.counts();
  j["counts"] = {c[1], c[2], c[3]};
  return j;
}

Matching matching_from_json(const nlohmann::json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::Parse, "edge must be [u, color]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return Matching(std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::Parse, std::string("matching JSON: ") + ex.what());
  }
}

std::string format_matching(const Matching& m) { return matching_to_json(m).dump() + "\n"; }

Matching read_matching_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  try {
    return matching_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error(ErrorCode::Parse, std::string("matching JSON: ") + ex.what());
  }
}

}  // namespace tricolor
