#include "wsurf/surface_file.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace wsurf {

namespace {

struct ComponentKeys {
  const char* f;
  const char* c1;
  const char* c2;
};

ComponentKeys keys_for(Form form) {
  switch (form) {
    case Form::Trig:
    case Form::Hyperbolic: return {"f", "h1", "h2"};
    case Form::WForm: return {"f", "w1", "w2"};
    case Form::GForm: return {"f", "g1", "g2"};
    case Form::GFormCanonical: return {nullptr, "g1", "g2"};
    case Form::HyperbolicCanonical: return {nullptr, "h1", "h2"};
    case Form::WFormCanonical: return {nullptr, "w1", "w2"};
  }
  return {nullptr, nullptr, nullptr};
}

constexpr std::array<const char*, 6> kGridKeys{"u_min", "u_max", "v_min", "v_max", "nu", "nv"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line;
};

double parse_real(const Entry& e, const std::string& key) {
  double x = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last)
    throw ConfigError("line " + std::to_string(e.line) + ": '" + key + "' needs a real number");
  return x;
}

int parse_count(const Entry& e, const std::string& key) {
  int n = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last || n < 2)
    throw ConfigError("line " + std::to_string(e.line) + ": '" + key + "' needs an integer >= 2");
  return n;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

WeierData read_surface(std::istream& in) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (entries.count(key)) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    entries[key] = {trim(line.substr(eq + 1)), line_no};
  }

  auto form_it = entries.find("form");
  if (form_it == entries.end()) throw ConfigError("missing key 'form'");
  const auto form = form_from_tag(form_it->second.value);
  if (!form) throw ConfigError("line " + std::to_string(form_it->second.line) + ": unknown form '" +
                               form_it->second.value + "'");
  const ComponentKeys keys = keys_for(*form);

  for (const auto& [key, entry] : entries) {
    bool known = key == "form" || (keys.f && key == keys.f) || key == keys.c1 || key == keys.c2;
    for (const char* g : kGridKeys) known = known || key == g;
    if (!known) throw ConfigError("line " + std::to_string(entry.line) + ": unknown key '" + key + "' for form " +
                                  form_tag(*form));
  }

  auto expr = [&](const char* key) {
    auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError(std::string("missing key '") + key + "'");
    try {
      return parse_expr(it->second.value);
    } catch (const ParseError& e) {
      throw ConfigError("line " + std::to_string(it->second.line) + ", key '" + key + "': " + e.what());
    }
  };

  WeierData w;
  w.form = *form;
  if (keys.f) w.f = expr(keys.f);
  w.c1 = expr(keys.c1);
  w.c2 = expr(keys.c2);

  GridSpec& g = w.grid;
  if (auto it = entries.find("u_min"); it != entries.end()) g.u_min = parse_real(it->second, "u_min");
  if (auto it = entries.find("u_max"); it != entries.end()) g.u_max = parse_real(it->second, "u_max");
  if (auto it = entries.find("v_min"); it != entries.end()) g.v_min = parse_real(it->second, "v_min");
  if (auto it = entries.find("v_max"); it != entries.end()) g.v_max = parse_real(it->second, "v_max");
  if (auto it = entries.find("nu"); it != entries.end()) g.nu = parse_count(it->second, "nu");
  if (auto it = entries.find("nv"); it != entries.end()) g.nv = parse_count(it->second, "nv");
  if (!(g.u_min < g.u_max) || !(g.v_min < g.v_max)) throw ConfigError("empty parameter rectangle");
  return w;
}

WeierData read_surface_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open surface file '" + path + "'");
  return read_surface(in);
}

std::string format_surface(const WeierData& w) {
  const ComponentKeys keys = keys_for(w.form);
  std::ostringstream out;
  auto put = [&](const char* key, const Expr& e) {
    if (!is_serializable(e))
      throw ConfigError(std::string("component '") + key + "' has no closed form and cannot be written");
    out << key << " = " << format_expr(e) << '\n';
  };
  out << "form = " << form_tag(w.form) << '\n';
  if (keys.f) put(keys.f, w.f);
  put(keys.c1, w.c1);
  put(keys.c2, w.c2);
  out << "u_min = " << format_double(w.grid.u_min) << '\n'
      << "u_max = " << format_double(w.grid.u_max) << '\n'
      << "v_min = " << format_double(w.grid.v_min) << '\n'
      << "v_max = " << format_double(w.grid.v_max) << '\n'
      << "nu = " << w.grid.nu << '\n'
      << "nv = " << w.grid.nv << '\n';
  return out.str();
}

void write_surface_file(const std::string& path, const WeierData& w) {
  const std::string text = format_surface(w);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace wsurf
