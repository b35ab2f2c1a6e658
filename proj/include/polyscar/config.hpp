#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "polyscar/geometry.hpp"

namespace polyscar {

/**
 * Flat key = value configuration file. Lines starting with '#' are comments.
 * Size values accept "p/q", decimals, and "a+b*sqrt(s)" quadratic literals
 * (e.g. "sqrt(2)", "1+sqrt(2)").
 */
struct Config {
  std::map<std::string, std::string> kv;

  bool has(const std::string& k) const { return kv.count(k) > 0; }
  std::string get(const std::string& k, const std::string& dflt = "") const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }
  std::string require(const std::string& k) const {
    auto it = kv.find(k);
    if (it == kv.end()) throw Error(errc::config, "missing config key: " + k);
    return it->second;
  }
};

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::config, "cannot open config file: " + path);
  Config cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r\n");
      size_t e = s.find_last_not_of(" \t\r\n");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) cfg.kv[key] = val;
  }
  return cfg;
}

// "a+b*sqrt(s)" | "b*sqrt(s)" | "sqrt(s)" | rational/decimal literal
inline Quad parse_quad(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(errc::config, "empty size literal");
  auto root_pos = s.find("sqrt(");
  if (root_pos == std::string::npos) return Quad(Ratio::parse(s));
  auto close = s.find(')', root_pos);
  if (close == std::string::npos) throw Error(errc::config, "unterminated sqrt() in: " + text);
  long rad = std::stol(s.substr(root_pos + 5, close - root_pos - 5));
  std::string head = s.substr(0, root_pos); // "a+b*" | "a-" | "b*" | "-" | ""
  Ratio a(0), b(1);
  if (!head.empty()) {
    // split at the last '+' or '-' that is not the leading sign
    size_t split = std::string::npos;
    for (size_t i = head.size(); i-- > 1;) {
      if (head[i] == '+' || head[i] == '-') { split = i; break; }
    }
    std::string bpart;
    if (split == std::string::npos) {
      bpart = head;
    } else {
      a = Ratio::parse(head.substr(0, split));
      bpart = head.substr(split); // keeps the sign
    }
    if (!bpart.empty() && bpart.back() == '*') bpart.pop_back();
    if (bpart.empty() || bpart == "+") b = Ratio(1);
    else if (bpart == "-") b = Ratio(-1);
    else b = Ratio::parse(bpart);
  }
  return Quad(a, b, rad);
}

inline BilliardSpec spec_from_config(const Config& cfg) {
  std::string fam = cfg.require("family");
  BilliardSpec spec;
  if (fam == "triangle") spec = BilliardSpec::bs_triangle();
  else if (fam == "rectangle")
    spec = BilliardSpec::rectangle(parse_quad(cfg.require("a")), parse_quad(cfg.require("b")));
  else if (fam == "parallelogram") spec = BilliardSpec::parallelogram(Ratio::parse(cfg.require("L")));
  else if (fam == "lshape")
    spec = BilliardSpec::lshape(Ratio::parse(cfg.require("a")), Ratio::parse(cfg.require("b")),
                                Ratio::parse(cfg.require("c")), Ratio::parse(cfg.require("d")));
  else throw Error(errc::config, "unknown family: " + fam);

  // Optional "angles = p/q, p/q, ..." must agree with the family's angles.
  if (cfg.has("angles")) {
    std::vector<Ratio> given;
    std::stringstream ss(cfg.get("angles"));
    std::string tok;
    while (std::getline(ss, tok, ',')) given.push_back(Ratio::parse(tok));
    if (given != spec.angles)
      throw Error(errc::config, "angles key does not match the family's angle set");
  }
  return spec;
}

// Triangle u/q approximation: explicit "approx = u/q" or "cf_order = k"
// (k-th continued-fraction convergent of sqrt2; default order 10).
inline Ratio approx_from_config(const Config& cfg) {
  if (cfg.has("approx")) return Ratio::parse(cfg.get("approx"));
  int order = cfg.has("cf_order") ? std::stoi(cfg.get("cf_order")) : 10;
  return convergents("sqrt2", order).best();
}

inline Variant variant_from_config(const Config& cfg, const std::string& flag = "") {
  std::string v = !flag.empty() ? flag : cfg.get("variant", "u");
  if (v == "u" || v == "U") return Variant::U;
  if (v == "q" || v == "Q") return Variant::Q;
  throw Error(errc::config, "variant must be u or q");
}

} // namespace polyscar
