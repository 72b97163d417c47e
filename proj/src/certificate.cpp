#include "rb/certificate.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

namespace rb {

using nlohmann::json;

std::string hex_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double parse_hex(const std::string& s) {
  if (s.empty()) throw Error("empty numeric field in certificate");
  const char* p = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(p, &end);
  if (end != p + s.size()) throw Error("malformed numeric field in certificate");
  return v;
}

InequalityRecord record_less(const std::string& name, const Interval& lhs,
                             const Interval& rhs) {
  InequalityRecord r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.ok = lhs.hi < rhs.lo;
  return r;
}

void Certificate::finalize() {
  verdict = true;
  for (const auto& s : stages)
    if (!s.ok) verdict = false;
  for (const auto& q : inequalities)
    if (!q.ok) verdict = false;
}

static json interval_json(const Interval& x) {
  return json{{"lo", hex_double(x.lo)}, {"hi", hex_double(x.hi)}};
}

std::string certificate_text(const Certificate& c) {
  json j;
  j["format"] = "rbcert-1";
  json params = json::object();
  for (const auto& kv : c.params) params[kv.first] = kv.second;
  j["params"] = params;
  j["stages"] = json::array();
  for (const auto& s : c.stages)
    j["stages"].push_back({{"name", s.name}, {"ok", s.ok}, {"error", s.error}});
  j["inequalities"] = json::array();
  for (const auto& q : c.inequalities)
    j["inequalities"].push_back({{"name", q.name},
                                 {"lhs", interval_json(q.lhs)},
                                 {"rhs", interval_json(q.rhs)},
                                 {"ok", q.ok}});
  j["values"] = json::array();
  for (const auto& kv : c.values)
    j["values"].push_back({{"name", kv.first}, {"value", interval_json(kv.second)}});
  j["verdict"] = c.verdict;
  j["timing_seconds"] = c.elapsed_seconds;
  return j.dump(2) + "\n";
}

void write_certificate(const std::string& path, const Certificate& c) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open certificate file for writing");
  os << certificate_text(c);
  if (!os) throw Error("failed to write certificate file");
}

static Interval parse_interval(const json& j) {
  const Interval x(parse_hex(j.at("lo").get<std::string>()),
                   parse_hex(j.at("hi").get<std::string>()));
  if (!(x.lo <= x.hi)) throw Error("inverted interval in certificate");
  return x;
}

int recheck_certificate(const std::string& path) {
  try {
    std::ifstream is(path, std::ios::binary);
    if (!is) return 2;
    json j = json::parse(is, nullptr, true);
    if (j.at("format").get<std::string>() != "rbcert-1") return 2;
    bool all_ok = true;
    for (const auto& s : j.at("stages")) {
      s.at("name").get<std::string>();
      s.at("error").get<std::string>();
      if (!s.at("ok").get<bool>()) all_ok = false;
    }
    for (const auto& q : j.at("inequalities")) {
      q.at("name").get<std::string>();
      const Interval lhs = parse_interval(q.at("lhs"));
      const Interval rhs = parse_interval(q.at("rhs"));
      const bool ok = lhs.hi < rhs.lo;
      if (ok != q.at("ok").get<bool>()) return 2;  // tampered comparison
      if (!ok) all_ok = false;
    }
    for (const auto& v : j.at("values")) {
      v.at("name").get<std::string>();
      parse_interval(v.at("value"));
    }
    const bool verdict = j.at("verdict").get<bool>();
    if (verdict != all_ok) return 2;  // verdict contradicts the records
    return verdict ? 0 : 1;
  } catch (...) {
    return 2;
  }
}

}  // namespace rb
