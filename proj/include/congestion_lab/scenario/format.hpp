#ifndef CONGESTION_LAB_SCENARIO_FORMAT_HPP
#define CONGESTION_LAB_SCENARIO_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "congestion_lab/scenario/scenario.hpp"

namespace congestion_lab::scenario {

// Scenario file reference
// -----------------------
// Line oriented; '#' starts a comment; tokens are separated by whitespace.
// Units are fixed: bandwidth and rates in bits/s, sizes in bits, times in
// seconds, buffers in packets.
//
//   [topology]
//   node <name> [<name> ...]
//   link <a> <b> <bandwidth> <delay> [queue=<n|inf>] [service=fifo|rr]
//        [drop=tail|head|random] [mark=<n|off>] [choke=on|off]
//
//   [connections]
//   conn <id> <src> <dst> [key=value ...]
//     mode=window|rate|open  packets=<n|inf>  size=<bits>  sizes=fixed|exp
//     rate=<bps>  burst=<bits>  arrival=det|poisson
//     scheme=static|cute|linear|slow-start|binary-feedback|delay-based|none
//     window=<w>  max_window=<w>  linear_acks=<n>  threshold=<f>
//     decrease=<f>  increase=<n>  gamma=<f>  choke_decrease=<f>
//     choke_response=on|off  retx=gbn|first  rto=fixed|adaptive
//     rto_init=<s>  rto_min=<s>  cache=on|off  ack_every=<d>  start=<s>
//
//   [run]
//   name <id> | seed <n> | duration <s> | stop duration|completion
//   warmup <fraction> | bottleneck <a> <b> | sample <s> | max_events <n>
//   load <factor> | ack_size <bits> | choke_size <bits>
//
//   [sweep]
//   param <path>          run.<key> | conn.<id>.<key> | link.<a>.<b>.<key>
//   values <v1,v2,...>

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline double parse_double(const std::string& tok, int line, const std::string& what) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ScenarioError(line, what + ": '" + tok + "' is not a decimal number");
  }
  return v;
}

inline std::int64_t parse_int(const std::string& tok, int line, const std::string& what) {
  std::int64_t v = 0;
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), last, v);
  if (ec != std::errc{} || ptr != last) throw ScenarioError(line, what + ": '" + tok + "' is not an integer");
  return v;
}

inline bool parse_flag(const std::string& tok, int line, const std::string& what) {
  if (tok == "on") return true;
  if (tok == "off") return false;
  throw ScenarioError(line, what + " must be on or off, got '" + tok + "'");
}

inline bool valid_name(const std::string& n) {
  if (n.empty()) return false;
  for (char ch : n) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') ||
                    ch == '_' || ch == '-';
    if (!ok) return false;
  }
  return true;
}

/// Shortest decimal that parses back to exactly `v`.
inline std::string fmt_exact(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline void set_link_option(LinkSpec& l, const std::string& key, const std::string& value, int line) {
  if (key == "queue") {
    if (value == "inf") {
      l.queue.capacity.reset();
    } else {
      const std::int64_t n = parse_int(value, line, "queue");
      if (n < 0) throw ScenarioError(line, "queue must be non-negative");
      l.queue.capacity = static_cast<std::size_t>(n);
    }
  } else if (key == "service") {
    if (value == "fifo") l.queue.service = net::ServicePolicy::fifo;
    else if (value == "rr") l.queue.service = net::ServicePolicy::round_robin;
    else throw ScenarioError(line, "service must be fifo or rr, got '" + value + "'");
  } else if (key == "drop") {
    if (value == "tail") l.queue.drop = net::DropPolicy::tail;
    else if (value == "head") l.queue.drop = net::DropPolicy::head;
    else if (value == "random") l.queue.drop = net::DropPolicy::random;
    else throw ScenarioError(line, "drop must be tail, head or random, got '" + value + "'");
  } else if (key == "mark") {
    if (value == "off") {
      l.queue.mark_threshold.reset();
    } else {
      const std::int64_t n = parse_int(value, line, "mark");
      if (n < 0) throw ScenarioError(line, "mark threshold must be non-negative");
      l.queue.mark_threshold = static_cast<std::size_t>(n);
    }
  } else if (key == "choke") {
    l.queue.choke_on_drop = parse_flag(value, line, "choke");
  } else if (key == "bandwidth") {
    l.bandwidth_bps = parse_double(value, line, "bandwidth");
    if (!(l.bandwidth_bps > 0.0)) throw ScenarioError(line, "bandwidth must be positive");
  } else if (key == "delay") {
    l.delay_s = parse_double(value, line, "delay");
    if (!(l.delay_s >= 0.0)) throw ScenarioError(line, "delay must be non-negative");
  } else {
    throw ScenarioError(line, "unknown link key '" + key + "'");
  }
}

inline void set_conn_option(ConnectionSpec& c, const std::string& key, const std::string& value, int line) {
  auto num = [&](const char* what) { return parse_double(value, line, what); };
  if (key == "mode") {
    if (value == "window") c.mode = SourceMode::window;
    else if (value == "rate") c.mode = SourceMode::rate;
    else if (value == "open") c.mode = SourceMode::open;
    else throw ScenarioError(line, "mode must be window, rate or open, got '" + value + "'");
  } else if (key == "packets") {
    if (value == "inf") c.packets.reset();
    else c.packets = parse_int(value, line, "packets");
  } else if (key == "size") {
    c.size_bits = num("size");
  } else if (key == "sizes") {
    if (value == "fixed") c.sizes = SizeDist::fixed;
    else if (value == "exp") c.sizes = SizeDist::exponential;
    else throw ScenarioError(line, "sizes must be fixed or exp, got '" + value + "'");
  } else if (key == "rate") {
    c.rate_bps = num("rate");
  } else if (key == "burst") {
    c.burst_bits = num("burst");
  } else if (key == "arrival") {
    if (value == "det") c.arrival = Arrival::deterministic;
    else if (value == "poisson") c.arrival = Arrival::poisson;
    else throw ScenarioError(line, "arrival must be det or poisson, got '" + value + "'");
  } else if (key == "scheme") {
    auto s = cc::parse_scheme(value);
    if (!s) throw ScenarioError(line, "unknown scheme '" + value + "'");
    c.scheme = *s;
  } else if (key == "window") {
    c.params.initial_window = num("window");
  } else if (key == "max_window") {
    c.params.max_window = num("max_window");
  } else if (key == "linear_acks") {
    c.params.linear_acks = parse_int(value, line, "linear_acks");
  } else if (key == "threshold") {
    c.params.feedback_threshold = num("threshold");
  } else if (key == "decrease") {
    c.params.decrease_factor = num("decrease");
  } else if (key == "increase") {
    c.params.increase = num("increase");
  } else if (key == "gamma") {
    c.params.delay_ratio = num("gamma");
  } else if (key == "choke_decrease") {
    c.params.choke_factor = num("choke_decrease");
  } else if (key == "choke_response") {
    c.params.choke_response = parse_flag(value, line, "choke_response");
  } else if (key == "retx") {
    if (value == "gbn") c.retx = transport::RetxPolicy::go_back_n;
    else if (value == "first") c.retx = transport::RetxPolicy::retransmit_first;
    else throw ScenarioError(line, "retx must be gbn or first, got '" + value + "'");
  } else if (key == "rto") {
    if (value == "fixed") c.rto = transport::RtoMode::fixed;
    else if (value == "adaptive") c.rto = transport::RtoMode::adaptive;
    else throw ScenarioError(line, "rto must be fixed or adaptive, got '" + value + "'");
  } else if (key == "rto_init") {
    c.rto_init_s = num("rto_init");
  } else if (key == "rto_min") {
    c.rto_min_s = num("rto_min");
  } else if (key == "cache") {
    c.cache = parse_flag(value, line, "cache") ? transport::CachePolicy::cache : transport::CachePolicy::discard;
  } else if (key == "ack_every") {
    c.ack_every = static_cast<int>(parse_int(value, line, "ack_every"));
  } else if (key == "start") {
    c.start_s = num("start");
  } else {
    throw ScenarioError(line, "unknown connection key '" + key + "'");
  }
}

inline void set_run_option(Scenario& s, const std::vector<std::string>& t, int line) {
  RunSpec& r = s.run;
  const std::string& key = t[0];
  auto arity = [&](std::size_t n) {
    if (t.size() != n + 1) throw ScenarioError(line, "'" + key + "' takes " + std::to_string(n) + " value(s)");
  };
  if (key == "name") {
    arity(1);
    if (!valid_name(t[1])) throw ScenarioError(line, "invalid scenario name '" + t[1] + "'");
    r.name = t[1];
  } else if (key == "seed") {
    arity(1);
    const std::int64_t v = parse_int(t[1], line, "seed");
    if (v < 0) throw ScenarioError(line, "seed must be non-negative");
    r.seed = static_cast<std::uint64_t>(v);
  } else if (key == "duration") {
    arity(1);
    r.duration_s = parse_double(t[1], line, "duration");
  } else if (key == "stop") {
    arity(1);
    if (t[1] == "completion") r.stop_on_completion = true;
    else if (t[1] == "duration") r.stop_on_completion = false;
    else throw ScenarioError(line, "stop must be duration or completion");
  } else if (key == "warmup") {
    arity(1);
    r.warmup_fraction = parse_double(t[1], line, "warmup");
  } else if (key == "bottleneck") {
    arity(2);
    r.bottleneck = std::make_pair(t[1], t[2]);
  } else if (key == "sample") {
    arity(1);
    r.sample_s = parse_double(t[1], line, "sample");
  } else if (key == "max_events") {
    arity(1);
    const std::int64_t v = parse_int(t[1], line, "max_events");
    if (v < 0) throw ScenarioError(line, "max_events must be non-negative");
    r.max_events = static_cast<std::uint64_t>(v);
  } else if (key == "load") {
    arity(1);
    r.load = parse_double(t[1], line, "load");
  } else if (key == "ack_size") {
    arity(1);
    r.ack_bits = parse_double(t[1], line, "ack_size");
  } else if (key == "choke_size") {
    arity(1);
    r.choke_bits = parse_double(t[1], line, "choke_size");
  } else {
    throw ScenarioError(line, "unknown run key '" + key + "'");
  }
}

inline std::vector<double> parse_value_list(const std::string& text, int line) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string::npos) j = text.size();
    std::string tok = text.substr(i, j - i);
    if (tok.empty()) {
      if (text.empty()) break;
      throw ScenarioError(line, "empty entry in value list");
    }
    out.push_back(parse_double(tok, line, "sweep value"));
    i = j + 1;
  }
  return out;
}

}  // namespace detail

/// Parses and validates a scenario. Every failure names its line.
inline Scenario parse_scenario(std::string_view text) {
  Scenario s;
  enum class Section { none, topology, connections, run, sweep } section = Section::none;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      // Comment lines ahead of the first section are the scenario's notes.
      if (section == Section::none && detail::split_ws(raw.substr(0, hash)).empty()) {
        std::string_view note = raw.substr(hash + 1);
        if (!note.empty() && note.front() == ' ') note.remove_prefix(1);
        while (!note.empty() && (note.back() == '\r' || note.back() == ' ')) note.remove_suffix(1);
        s.notes.emplace_back(note);
      }
      raw = raw.substr(0, hash);
    }
    std::vector<std::string> t = detail::split_ws(raw);
    if (t.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (t[0].front() == '[') {
      if (t.size() != 1) throw ScenarioError(line_no, "section header must stand alone");
      if (t[0] == "[topology]") section = Section::topology;
      else if (t[0] == "[connections]") section = Section::connections;
      else if (t[0] == "[run]") section = Section::run;
      else if (t[0] == "[sweep]") {
        section = Section::sweep;
        if (!s.sweep) s.sweep.emplace();
      } else throw ScenarioError(line_no, "unknown section " + t[0]);
      continue;
    }

    switch (section) {
      case Section::none: throw ScenarioError(line_no, "content before the first section header");
      case Section::topology:
        if (t[0] == "node") {
          if (t.size() < 2) throw ScenarioError(line_no, "node needs a name");
          for (std::size_t i = 1; i < t.size(); ++i) {
            if (!detail::valid_name(t[i])) throw ScenarioError(line_no, "invalid node name '" + t[i] + "'");
            for (const std::string& n : s.nodes) {
              if (n == t[i]) throw ScenarioError(line_no, "duplicate node '" + t[i] + "'");
            }
            s.nodes.push_back(t[i]);
          }
        } else if (t[0] == "link") {
          if (t.size() < 5) throw ScenarioError(line_no, "link needs <a> <b> <bandwidth> <delay>");
          LinkSpec l;
          l.line = line_no;
          l.a = t[1];
          l.b = t[2];
          for (const std::string* end_name : {&l.a, &l.b}) {
            bool known = false;
            for (const std::string& n : s.nodes) known = known || n == *end_name;
            if (!known) throw ScenarioError(line_no, "link references undeclared node '" + *end_name + "'");
          }
          detail::set_link_option(l, "bandwidth", t[3], line_no);
          detail::set_link_option(l, "delay", t[4], line_no);
          for (std::size_t i = 5; i < t.size(); ++i) {
            const std::size_t eq = t[i].find('=');
            if (eq == std::string::npos) throw ScenarioError(line_no, "expected key=value, got '" + t[i] + "'");
            const std::string key = t[i].substr(0, eq);
            if (key == "bandwidth" || key == "delay") throw ScenarioError(line_no, "unknown link key '" + key + "'");
            detail::set_link_option(l, key, t[i].substr(eq + 1), line_no);
          }
          s.links.push_back(l);
        } else {
          throw ScenarioError(line_no, "unknown topology key '" + t[0] + "'");
        }
        break;
      case Section::connections: {
        if (t[0] != "conn") throw ScenarioError(line_no, "unknown connections key '" + t[0] + "'");
        if (t.size() < 4) throw ScenarioError(line_no, "conn needs <id> <src> <dst>");
        ConnectionSpec c;
        c.line = line_no;
        c.id = static_cast<int>(detail::parse_int(t[1], line_no, "connection id"));
        c.src = t[2];
        c.dst = t[3];
        for (std::size_t i = 4; i < t.size(); ++i) {
          const std::size_t eq = t[i].find('=');
          if (eq == std::string::npos) throw ScenarioError(line_no, "expected key=value, got '" + t[i] + "'");
          detail::set_conn_option(c, t[i].substr(0, eq), t[i].substr(eq + 1), line_no);
        }
        s.conns.push_back(c);
        break;
      }
      case Section::run: detail::set_run_option(s, t, line_no); break;
      case Section::sweep:
        if (t[0] == "param") {
          if (t.size() != 2) throw ScenarioError(line_no, "param takes one path");
          s.sweep->param = t[1];
        } else if (t[0] == "values") {
          if (t.size() != 2) throw ScenarioError(line_no, "values takes one comma-separated list");
          s.sweep->values = detail::parse_value_list(t[1], line_no);
        } else {
          throw ScenarioError(line_no, "unknown sweep key '" + t[0] + "'");
        }
        break;
    }
    if (end == text.size()) break;
  }
  if (s.sweep && s.sweep->param.empty()) throw ScenarioError(0, "sweep section needs a param");
  validate(s);
  return s;
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(0, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

/// Writes a scenario in the file format. Parsing the output yields a
/// scenario that runs identically.
inline std::string export_scenario(const Scenario& s) {
  using detail::fmt_exact;
  std::ostringstream o;
  for (const std::string& n : s.notes) o << "# " << n << '\n';
  if (!s.notes.empty()) o << '\n';

  o << "[topology]\n";
  for (const std::string& n : s.nodes) o << "node " << n << '\n';
  for (const LinkSpec& l : s.links) {
    o << "link " << l.a << ' ' << l.b << ' ' << fmt_exact(l.bandwidth_bps) << ' ' << fmt_exact(l.delay_s);
    o << " queue=" << (l.queue.capacity ? std::to_string(*l.queue.capacity) : "inf");
    o << " service=" << net::to_string(l.queue.service);
    o << " drop=" << net::to_string(l.queue.drop);
    o << " mark=" << (l.queue.mark_threshold ? std::to_string(*l.queue.mark_threshold) : "off");
    o << " choke=" << (l.queue.choke_on_drop ? "on" : "off") << '\n';
  }

  o << "\n[connections]\n";
  for (const ConnectionSpec& c : s.conns) {
    o << "conn " << c.id << ' ' << c.src << ' ' << c.dst;
    o << " mode=" << to_string(c.mode);
    o << " packets=" << (c.packets ? std::to_string(*c.packets) : "inf");
    o << " size=" << fmt_exact(c.size_bits);
    if (c.mode != SourceMode::window) o << " rate=" << fmt_exact(c.rate_bps);
    if (c.mode == SourceMode::rate) o << " burst=" << fmt_exact(c.burst_bits);
    if (c.mode == SourceMode::open) {
      o << " sizes=" << (c.sizes == SizeDist::fixed ? "fixed" : "exp");
      o << " arrival=" << (c.arrival == Arrival::deterministic ? "det" : "poisson");
    }
    o << " scheme=" << cc::to_string(c.scheme);
    if (c.mode != SourceMode::open) {
      const cc::SchemeParams& p = c.params;
      o << " window=" << fmt_exact(p.initial_window) << " max_window=" << fmt_exact(p.max_window);
      o << " linear_acks=" << p.linear_acks << " threshold=" << fmt_exact(p.feedback_threshold);
      o << " decrease=" << fmt_exact(p.decrease_factor) << " increase=" << fmt_exact(p.increase);
      o << " gamma=" << fmt_exact(p.delay_ratio) << " choke_decrease=" << fmt_exact(p.choke_factor);
      o << " choke_response=" << (p.choke_response ? "on" : "off");
      o << " retx=" << transport::to_string(c.retx) << " rto=" << transport::to_string(c.rto);
      o << " rto_init=" << fmt_exact(c.rto_init_s) << " rto_min=" << fmt_exact(c.rto_min_s);
      o << " cache=" << transport::to_string(c.cache) << " ack_every=" << c.ack_every;
    }
    o << " start=" << fmt_exact(c.start_s) << '\n';
  }

  const RunSpec& r = s.run;
  o << "\n[run]\n";
  o << "name " << r.name << '\n';
  o << "seed " << r.seed << '\n';
  o << "duration " << fmt_exact(r.duration_s) << '\n';
  o << "stop " << (r.stop_on_completion ? "completion" : "duration") << '\n';
  o << "warmup " << fmt_exact(r.warmup_fraction) << '\n';
  if (r.bottleneck) o << "bottleneck " << r.bottleneck->first << ' ' << r.bottleneck->second << '\n';
  o << "sample " << fmt_exact(r.sample_s) << '\n';
  o << "max_events " << r.max_events << '\n';
  o << "load " << fmt_exact(r.load) << '\n';
  o << "ack_size " << fmt_exact(r.ack_bits) << '\n';
  o << "choke_size " << fmt_exact(r.choke_bits) << '\n';

  if (s.sweep) {
    o << "\n[sweep]\nparam " << s.sweep->param << "\nvalues ";
    for (std::size_t i = 0; i < s.sweep->values.size(); ++i) {
      o << (i ? "," : "") << fmt_exact(s.sweep->values[i]);
    }
    o << '\n';
  }
  return o.str();
}

/// Sets a numeric field named by a dotted path and revalidates. Throws
/// ScenarioError for unknown paths.
inline void apply_param(Scenario& s, const std::string& path, double value) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (true) {
    const std::size_t j = path.find('.', i);
    parts.push_back(path.substr(i, j == std::string::npos ? std::string::npos : j - i));
    if (j == std::string::npos) break;
    i = j + 1;
  }
  const std::string v = detail::fmt_exact(value);
  auto integral = [&](const char* what) {
    if (value != std::floor(value)) throw ScenarioError(0, std::string(what) + " needs an integer value");
    return std::to_string(static_cast<std::int64_t>(value));
  };
  if (parts.size() == 2 && parts[0] == "run") {
    static const char* const kNumeric[] = {"seed", "duration", "warmup", "sample", "max_events",
                                           "load", "ack_size", "choke_size"};
    bool known = false;
    for (const char* k : kNumeric) known = known || parts[1] == k;
    if (!known) throw ScenarioError(0, "unknown parameter path '" + path + "'");
    const bool as_int = parts[1] == "seed" || parts[1] == "max_events";
    detail::set_run_option(s, {parts[1], as_int ? integral(parts[1].c_str()) : v}, 0);
  } else if (parts.size() == 3 && parts[0] == "conn") {
    static const char* const kNumeric[] = {"packets", "size", "rate", "burst", "window", "max_window",
                                           "linear_acks", "threshold", "decrease", "increase", "gamma",
                                           "choke_decrease", "rto_init", "rto_min", "ack_every", "start"};
    bool known = false;
    for (const char* k : kNumeric) known = known || parts[2] == k;
    if (!known) throw ScenarioError(0, "unknown parameter path '" + path + "'");
    ConnectionSpec* target = nullptr;
    for (ConnectionSpec& c : s.conns) {
      if (std::to_string(c.id) == parts[1]) target = &c;
    }
    if (!target) throw ScenarioError(0, "unknown parameter path '" + path + "': no connection " + parts[1]);
    const bool as_int = parts[2] == "packets" || parts[2] == "linear_acks" || parts[2] == "ack_every";
    detail::set_conn_option(*target, parts[2], as_int ? integral(parts[2].c_str()) : v, 0);
  } else if (parts.size() == 4 && parts[0] == "link") {
    static const char* const kNumeric[] = {"bandwidth", "delay", "queue", "mark"};
    bool known = false;
    for (const char* k : kNumeric) known = known || parts[3] == k;
    if (!known) throw ScenarioError(0, "unknown parameter path '" + path + "'");
    LinkSpec* target = nullptr;
    for (LinkSpec& l : s.links) {
      if ((l.a == parts[1] && l.b == parts[2]) || (l.a == parts[2] && l.b == parts[1])) target = &l;
    }
    if (!target) throw ScenarioError(0, "unknown parameter path '" + path + "': no such link");
    const bool as_int = parts[3] == "queue" || parts[3] == "mark";
    detail::set_link_option(*target, parts[3], as_int ? integral(parts[3].c_str()) : v, 0);
  } else {
    throw ScenarioError(0, "unknown parameter path '" + path + "'");
  }
  validate(s);
}

/// Checks a parameter path without changing anything.
inline bool is_known_param(const Scenario& s, const std::string& path) {
  Scenario copy = s;
  try {
    double probe = 1.0;
    apply_param(copy, path, probe);
    return true;
  } catch (const ScenarioError& e) {
    return std::string(e.what()).find("unknown parameter path") == std::string::npos;
  }
}

}  // namespace congestion_lab::scenario

#endif  // CONGESTION_LAB_SCENARIO_FORMAT_HPP
