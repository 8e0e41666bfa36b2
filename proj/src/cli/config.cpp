#include "blip/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "blip/error.hpp"

namespace blip::cli {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"grid", {"x_min", "x_max", "n_points"}},
      {"packet", {"channel", "x0", "k0", "sigma"}},
      {"media",
       {"c0", "hbar", "area", "left_n", "right_n", "left_epsilon", "left_mu", "right_epsilon", "right_mu"}},
      {"coupling", {"source", "omega_re", "omega_im"}},
      {"schedule", {"times", "start", "stop", "count"}},
      {"output", {"dir", "snapshots"}},
      {"tolerance", {"energy", "momentum", "conditional", "unitarity"}},
  };
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorKind::configuration, line > 0 ? fmt::format("line {}: {}", line, what) : what);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::map<std::string, Section> tokenize(std::string_view text) {
  std::map<std::string, Section> out;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(std::string_view(raw).substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, fmt::format("malformed section header '{}'", s));
      current = trim(std::string_view(s).substr(1, s.size() - 2));
      if (!schema().contains(current)) fail(line, fmt::format("unknown section [{}]", current));
      if (out.contains(current)) fail(line, fmt::format("section [{}] appears twice", current));
      out[current];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, fmt::format("expected 'key = value', got '{}'", s));
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (current.empty()) fail(line, fmt::format("key '{}' appears before any section", key));
    if (!schema().at(current).contains(key)) fail(line, fmt::format("unknown key '{}' in [{}]", key, current));
    if (value.empty()) fail(line, fmt::format("key '{}.{}' has no value", current, key));
    auto& sec = out[current];
    if (sec.contains(key)) fail(line, fmt::format("key '{}.{}' appears twice", current, key));
    sec[key] = Entry{value, line};
  }
  return out;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

  const Entry* find(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto e = s->second.find(key);
    if (e == s->second.end()) return nullptr;
    return &e->second;
  }

  std::optional<double> real(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (e == nullptr) return std::nullopt;
    return parse_real(*e, section + "." + key);
  }

  void real(const std::string& section, const std::string& key, double& target) {
    if (auto v = real(section, key)) target = *v;
  }

  static double parse_real(const Entry& e, const std::string& name) { return parse_real(e.value, e.line, name); }

  static double parse_real(const std::string& text, int line, const std::string& name) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
      fail(line, fmt::format("key '{}' expects a finite number, got '{}'", name, text));
    }
    return v;
  }

  std::optional<std::size_t> count(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (e == nullptr) return std::nullopt;
    std::size_t v = 0;
    const char* end = e->value.data() + e->value.size();
    const auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
      fail(e->line, fmt::format("key '{}.{}' expects a non-negative integer, got '{}'", section, key, e->value));
    }
    return v;
  }

  std::optional<bool> flag(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (e == nullptr) return std::nullopt;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    fail(e->line, fmt::format("key '{}.{}' expects true or false, got '{}'", section, key, e->value));
  }

  std::optional<std::string> text(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (e == nullptr) return std::nullopt;
    return e->value;
  }

  int line_of(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    return e == nullptr ? 0 : e->line;
  }

 private:
  std::map<std::string, Section> sections_;
};

Channel parse_channel(const std::string& s, int line) {
  if (s == "+H") return {Direction::plus, Polarization::H};
  if (s == "+V") return {Direction::plus, Polarization::V};
  if (s == "-H") return {Direction::minus, Polarization::H};
  if (s == "-V") return {Direction::minus, Polarization::V};
  fail(line, fmt::format("key 'packet.channel' expects one of +H, +V, -H, -V, got '{}'", s));
}

MediumSpec read_medium(Reader& r, const std::string& side) {
  MediumSpec m;
  m.n = r.real("media", side + "_n");
  m.epsilon = r.real("media", side + "_epsilon");
  m.mu = r.real("media", side + "_mu");
  if (m.n && (m.epsilon || m.mu)) {
    fail(r.line_of("media", side + "_n"), fmt::format("give either {0}_n or {0}_epsilon/{0}_mu, not both", side));
  }
  if (m.epsilon.has_value() != m.mu.has_value()) {
    const std::string key = m.epsilon ? side + "_epsilon" : side + "_mu";
    fail(r.line_of("media", key), fmt::format("{0}_epsilon and {0}_mu must be given together", side));
  }
  if (m.n && !(*m.n > 0.0)) fail(r.line_of("media", side + "_n"), fmt::format("media.{}_n must be positive", side));
  if (m.epsilon && !(*m.epsilon > 0.0 && *m.mu > 0.0)) {
    fail(r.line_of("media", side + "_epsilon"), fmt::format("media.{0}_epsilon and {0}_mu must be positive", side));
  }
  return m;
}

std::vector<double> read_schedule(Reader& r) {
  const auto list = r.text("schedule", "times");
  const auto start = r.real("schedule", "start");
  const auto stop = r.real("schedule", "stop");
  const auto n = r.count("schedule", "count");
  std::vector<double> times;
  if (list) {
    if (start || stop || n) fail(r.line_of("schedule", "times"), "give either schedule.times or start/stop/count");
    const int line = r.line_of("schedule", "times");
    std::string item;
    std::istringstream in(*list);
    while (std::getline(in, item, ',')) times.push_back(Reader::parse_real(trim(item), line, "schedule.times"));
  } else if (start || stop || n) {
    if (!(start && stop && n)) fail(0, "schedule.start, schedule.stop and schedule.count must be given together");
    if (*n < 2) fail(r.line_of("schedule", "count"), "schedule.count must be at least 2");
    for (std::size_t i = 0; i < *n; ++i) {
      times.push_back(*start + (*stop - *start) * static_cast<double>(i) / static_cast<double>(*n - 1));
    }
  } else {
    fail(0, "missing [schedule]: give times or start/stop/count");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) fail(r.line_of("schedule", "times"), "report times must be non-negative");
    if (i > 0 && !(times[i] > times[i - 1])) fail(r.line_of("schedule", "times"), "report times must be strictly increasing");
  }
  return times;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  Reader r(tokenize(text));
  RunConfig cfg;

  r.real("grid", "x_min", cfg.grid.x_min);
  r.real("grid", "x_max", cfg.grid.x_max);
  if (auto n = r.count("grid", "n_points")) cfg.grid.n_points = *n;

  if (auto ch = r.text("packet", "channel")) cfg.packet.channel = parse_channel(*ch, r.line_of("packet", "channel"));
  r.real("packet", "x0", cfg.packet.x0);
  r.real("packet", "k0", cfg.packet.k0);
  r.real("packet", "sigma", cfg.packet.sigma);

  r.real("media", "c0", cfg.media.c0);
  r.real("media", "hbar", cfg.media.hbar);
  r.real("media", "area", cfg.media.area);
  for (const auto& [key, v] : {std::pair{"c0", cfg.media.c0}, {"hbar", cfg.media.hbar}, {"area", cfg.media.area}}) {
    if (!(v > 0.0)) fail(r.line_of("media", key), fmt::format("media.{} must be positive", key));
  }
  cfg.media.left = read_medium(r, "left");
  cfg.media.right = read_medium(r, "right");

  if (auto src = r.text("coupling", "source")) {
    if (*src == "n") {
      cfg.coupling.source = CouplingSource::from_n;
    } else if (*src == "omega") {
      cfg.coupling.source = CouplingSource::explicit_omega;
    } else {
      fail(r.line_of("coupling", "source"), fmt::format("key 'coupling.source' expects n or omega, got '{}'", *src));
    }
  }
  const auto re = r.real("coupling", "omega_re");
  const auto im = r.real("coupling", "omega_im");
  if ((re || im) && cfg.coupling.source != CouplingSource::explicit_omega) {
    fail(r.line_of("coupling", re ? "omega_re" : "omega_im"), "omega given but coupling.source is not omega");
  }
  cfg.coupling.omega = Complex(re.value_or(0.0), im.value_or(0.0));

  cfg.times = read_schedule(r);

  cfg.output.dir = r.text("output", "dir");
  if (auto s = r.flag("output", "snapshots")) cfg.output.snapshots = *s;

  r.real("tolerance", "energy", cfg.tolerance.energy);
  r.real("tolerance", "momentum", cfg.tolerance.momentum);
  r.real("tolerance", "conditional", cfg.tolerance.conditional);
  r.real("tolerance", "unitarity", cfg.tolerance.unitarity);
  for (const char* key : {"energy", "momentum", "conditional", "unitarity"}) {
    if (auto v = r.real("tolerance", key); v && !(*v > 0.0)) {
      fail(r.line_of("tolerance", key), fmt::format("tolerance.{} must be positive", key));
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::configuration, fmt::format("cannot read config file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

Medium build_medium(const MediaSpec& media, const MediumSpec& spec) {
  if (spec.epsilon) {
    Medium m{*spec.epsilon, *spec.mu, media.area, media.c0, media.hbar, ""};
    m.tag = fmt::format("eps={},mu={}", *spec.epsilon, *spec.mu);
    return m;
  }
  const double n = spec.n.value_or(1.0);
  if (n == 1.0) return Medium::air(media.c0, media.area, media.hbar);
  return Medium::dielectric(n, media.c0, media.area, media.hbar);
}

Scenario build_scenario(const RunConfig& cfg) {
  try {
    const Grid grid = make_grid(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.n_points);
    Scenario sc{build_medium(cfg.media, cfg.media.left), build_medium(cfg.media, cfg.media.right),
                gaussian_packet(grid, cfg.packet.channel, cfg.packet.x0, cfg.packet.k0, cfg.packet.sigma),
                cfg.coupling.source, cfg.coupling.omega, cfg.times};
    return sc;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::configuration) throw;
    throw Error(ErrorKind::configuration, e.what());
  }
}

}  // namespace blip::cli
