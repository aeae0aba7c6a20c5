#include "mlabm/experiment/export.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mlabm/graph.hpp"

namespace mlabm::experiment {

namespace fs = std::filesystem;

namespace {

constexpr const char* kRunsHeader = "run_idx,seed,survivors,final_sdlm,total_trades,max_depth,wall_s";
constexpr const char* kStepsHeader = "step,geo_mean_price,sdlm,trade_volume,live_agents,group_count,max_depth";

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + p.string());
  return os;
}

void close_out(std::ofstream& os, const fs::path& p) {
  os.flush();
  if (!os) throw IoError("write failed: " + p.string());
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p, const std::string& header) {
  std::istringstream in(slurp(p));
  std::string line;
  if (!std::getline(in, line) || line != header) throw IoError("unexpected header in " + p.string());
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(std::move(fields));
  }
  return rows;
}

template <typename T>
T parse_num(const std::string& s, const fs::path& p) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw IoError("bad number '" + s + "' in " + p.string());
  return v;
}

std::optional<double> parse_opt(const std::string& s, const fs::path& p) {
  if (s.empty()) return std::nullopt;
  return parse_num<double>(s, p);
}

std::optional<double> json_opt(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::string steps_name(std::size_t idx, const char* ext) { return "steps_" + std::to_string(idx) + ext; }

}  // namespace

void export_batch(const BatchResult& result, const fs::path& dir, OutputFormat format) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  {
    const fs::path p = dir / "config.json";
    auto os = open_out(p);
    nlohmann::json j = result.config.to_json();
    j["digest"] = result.config.digest();
    j["format"] = format == OutputFormat::kCsv ? "csv" : "json";
    os << j.dump(2) << '\n';
    close_out(os, p);
  }

  if (format == OutputFormat::kCsv) {
    const fs::path p = dir / "runs.csv";
    auto os = open_out(p);
    os << kRunsHeader << '\n';
    for (const auto& r : result.runs) {
      os << r.run_index << ',' << r.seed << ',' << r.survivors << ',' << opt(r.final_sdlm()) << ','
         << r.total_trades() << ',' << r.max_depth() << ',' << format_number(r.wall_time_seconds) << '\n';
    }
    close_out(os, p);
    for (const auto& r : result.runs) {
      const fs::path sp = dir / steps_name(r.run_index, ".csv");
      auto ss = open_out(sp);
      ss << kStepsHeader << '\n';
      for (const auto& s : r.steps) {
        ss << s.step << ',' << opt(s.geo_mean_price) << ',' << opt(s.sdlm) << ',' << s.trade_volume << ','
           << s.live_agents << ',' << s.group_count << ',' << s.max_depth << '\n';
      }
      close_out(ss, sp);
    }
    return;
  }

  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : result.runs) {
    runs.push_back({{"run_idx", r.run_index},
                    {"seed", r.seed},
                    {"survivors", r.survivors},
                    {"final_sdlm", opt_json(r.final_sdlm())},
                    {"total_trades", r.total_trades()},
                    {"max_depth", r.max_depth()},
                    {"wall_s", r.wall_time_seconds}});
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : r.steps) {
      steps.push_back({{"step", s.step},
                       {"geo_mean_price", opt_json(s.geo_mean_price)},
                       {"sdlm", opt_json(s.sdlm)},
                       {"trade_volume", s.trade_volume},
                       {"live_agents", s.live_agents},
                       {"group_count", s.group_count},
                       {"max_depth", s.max_depth}});
    }
    const fs::path sp = dir / steps_name(r.run_index, ".json");
    auto ss = open_out(sp);
    ss << steps.dump(1) << '\n';
    close_out(ss, sp);
  }
  const fs::path p = dir / "runs.json";
  auto os = open_out(p);
  os << runs.dump(1) << '\n';
  close_out(os, p);
}

BatchResult import_batch(const fs::path& dir) {
  BatchResult out;
  try {
    out.config = RunConfig::from_json(nlohmann::json::parse(slurp(dir / "config.json")));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad config.json in " + dir.string() + ": " + e.what());
  }
  const std::string digest = out.config.digest();

  if (fs::exists(dir / "runs.csv")) {
    const fs::path p = dir / "runs.csv";
    for (const auto& row : read_csv(p, kRunsHeader)) {
      if (row.size() != 7) throw IoError("bad row width in " + p.string());
      RunMetrics r;
      r.run_index = parse_num<std::size_t>(row[0], p);
      r.seed = parse_num<std::uint64_t>(row[1], p);
      r.survivors = parse_num<std::size_t>(row[2], p);
      r.wall_time_seconds = parse_num<double>(row[6], p);
      r.config_digest = digest;
      const fs::path sp = dir / steps_name(r.run_index, ".csv");
      for (const auto& srow : read_csv(sp, kStepsHeader)) {
        if (srow.size() != 7) throw IoError("bad row width in " + sp.string());
        StepMetrics s;
        s.step = parse_num<std::uint64_t>(srow[0], sp);
        s.geo_mean_price = parse_opt(srow[1], sp);
        s.sdlm = parse_opt(srow[2], sp);
        s.trade_volume = parse_num<std::size_t>(srow[3], sp);
        s.live_agents = parse_num<std::size_t>(srow[4], sp);
        s.group_count = parse_num<std::size_t>(srow[5], sp);
        s.max_depth = parse_num<std::size_t>(srow[6], sp);
        r.steps.push_back(s);
      }
      out.runs.push_back(std::move(r));
    }
  } else {
    try {
      for (const auto& jr : nlohmann::json::parse(slurp(dir / "runs.json"))) {
        RunMetrics r;
        r.run_index = jr.at("run_idx").get<std::size_t>();
        r.seed = jr.at("seed").get<std::uint64_t>();
        r.survivors = jr.at("survivors").get<std::size_t>();
        r.wall_time_seconds = jr.at("wall_s").get<double>();
        r.config_digest = digest;
        for (const auto& js : nlohmann::json::parse(slurp(dir / steps_name(r.run_index, ".json")))) {
          StepMetrics s;
          s.step = js.at("step").get<std::uint64_t>();
          s.geo_mean_price = json_opt(js.at("geo_mean_price"));
          s.sdlm = json_opt(js.at("sdlm"));
          s.trade_volume = js.at("trade_volume").get<std::size_t>();
          s.live_agents = js.at("live_agents").get<std::size_t>();
          s.group_count = js.at("group_count").get<std::size_t>();
          s.max_depth = js.at("max_depth").get<std::size_t>();
          r.steps.push_back(s);
        }
        out.runs.push_back(std::move(r));
      }
    } catch (const nlohmann::json::exception& e) {
      throw IoError("bad JSON in " + dir.string() + ": " + e.what());
    }
  }
  out.summary = summarize(out.runs);
  return out;
}

}  // namespace mlabm::experiment
